#pragma once

#include <adsched/model.hpp>
#include <adsched/scheduling.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace adsched {

struct BlockMember {
    std::string bidder;
    Rational clicks;
    Rational spend;    // price * clicks; equals the declared budget for
                       // non-threshold members of a positive-price block
};

struct ThresholdInfo {
    std::string bidder;
    Rational reduced_budget;
};

/// A maximal group of bidders sharing one price: the block owns the slot
/// window [first_slot, first_slot + slot_count) and its members, listed by
/// effective budget (ties by lex rank).
struct PriceBlock {
    Rational price;
    std::vector<BlockMember> members;
    std::size_t first_slot = 0;
    std::size_t slot_count = 0;
    std::optional<ThresholdInfo> threshold;
};

struct BidderOutcome {
    std::string id;
    bool dummy = false;
    Rational clicks;
    Rational price;
    Rational spend;
};

/// Full mechanism result. Block prices are positive and strictly decreasing
/// apart from exact bid-tie boundaries, with at most one trailing zero-price
/// block; gfp leaves `blocks` empty and reports per-bidder prices only.
struct Outcome {
    std::string mechanism;
    std::vector<PriceBlock> blocks;
    std::vector<BidderOutcome> bidders;  // padded-instance order
    Schedule schedule;
    Rational revenue;
};

bool operator==(const BlockMember& a, const BlockMember& b);
bool operator==(const ThresholdInfo& a, const ThresholdInfo& b);
bool operator==(const PriceBlock& a, const PriceBlock& b);
bool operator==(const BidderOutcome& a, const BidderOutcome& b);

/// Equality of everything a mechanism decides (blocks, per-bidder results,
/// revenue); the schedule witness is excluded.
bool same_allocation(const Outcome& a, const Outcome& b);

/// Uniform-price block selection. budgets must be nonincreasing (throws
/// UnsortedInput). Price = max over prefixes l of sum(B)/sum(D); the block
/// size is the largest maximizer and member i gets budgets[i]/price clicks.
/// All-zero supplies (or all-zero budgets) yield price 0 covering every
/// bidder with zero clicks.
struct FindPriceBlockResult {
    Rational price;
    std::size_t block_size = 0;
    std::vector<Rational> clicks;  // one per member
};
FindPriceBlockResult find_price_block(std::span<const Rational> budgets,
                                      std::span<const Rational> supplies);

/// Largest budget the last-considered bidder can keep so that
/// find_price_block over the adjusted set prices at most target_bid.
/// other_budgets are the competing budgets, nonincreasing. Returns the
/// declared budget unchanged when it already satisfies the target; the
/// closed-form minimum otherwise, clamped at zero. No search involved.
Rational threshold_budget(std::span<const Rational> other_budgets,
                          const Rational& declared_budget,
                          const Rational& target_bid,
                          std::span<const Rational> supplies);

/// Price-setting mechanism, one positive-supply slot (padding may add
/// zero-supply slots). Walks bidders in bid order until the running
/// budget-per-supply ratio reaches the next bid, prices at
/// min(sum(B)/D, last bid), and trims the last admitted bidder's budget to
/// pay for the remaining supply exactly.
Outcome ps_single_slot(const Instance& instance);

/// Price-setting mechanism when bids play no role (treated as unlimited):
/// repeatedly carves off find_price_block's block, largest budgets first.
Outcome ps_budgets_only(const Instance& instance);

/// General price-setting mechanism: grows the active set in bid order until
/// the block price reaches the next bid, reduces the last admitted bidder's
/// budget via threshold_budget when the price overshoots their bid, emits
/// the block, and repeats on the remainder.
Outcome ps_general(const Instance& instance);

/// Greedy first-price auction: in bid order, each bidder takes as many
/// clicks as budget and remaining supply allow at a price of exactly their
/// bid. Zero-bid bidders get zero clicks at price 0; infinite-bid bidders
/// can afford no clicks and also get zero.
Outcome gfp(const Instance& instance);

} // namespace adsched
