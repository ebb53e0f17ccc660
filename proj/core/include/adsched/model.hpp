#pragma once

#include <adsched/rational.hpp>

#include <compare>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

namespace adsched {

struct Bidder {
    std::string id;
    Rational budget;   // >= 0
    Bid max_cpc;       // >= 0, possibly infinite
    Rational ctr{1};   // > 0
    bool dummy = false;
};

struct SlotSupply {
    Rational clicks;   // >= 0
    bool dummy = false;
};

/// One market instance: bidders plus the per-slot click supplies over the
/// scheduling interval [0, 1). Positive supplies are strictly decreasing;
/// zero supplies may only trail them.
struct Instance {
    std::vector<Bidder> bidders;
    std::vector<SlotSupply> slots;
};

/// Checks every instance invariant and returns the instance unchanged.
/// Throws Error with NegativeBudget, NegativeBid, NonPositiveCtr,
/// NonDecreasingPositiveSupply, ZeroSupplyBeforePositive, TooFewBidders or
/// DuplicateBidderId. Equal positive supplies are rejected.
Instance validate_instance(Instance instance);

/// Appends zero-budget/zero-bid dummy bidders or zero-supply dummy slots
/// until the instance is square with at least two bidders. Idempotent;
/// originals are unchanged and identifiable via the dummy flags.
Instance pad_instance(Instance instance);

bool is_square(const Instance& instance);

/// Sort key for the bid order: higher bid wins; exact ties go to the
/// smaller lex_rank.
struct BidKey {
    Bid bid;
    std::size_t lex_rank = 0;
};

/// Priority comparison: greater means `a` is considered before `b`.
/// A strict total order for distinct lex_ranks.
std::strong_ordering compare_bids(const BidKey& a, const BidKey& b);
bool bid_precedes(const BidKey& a, const BidKey& b);

/// Result of folding click-through rates into the bids: mechanisms run on
/// `scaled` (budgets untouched, every ctr reset to 1), and gamma maps
/// scheduling clicks back to weighted clicks per bidder.
struct CtrScaling {
    Instance scaled;
    std::unordered_map<std::string, Rational> gamma;
};

/// Multiplies each bidder's bid by its ctr. Identity when all ctrs are 1.
CtrScaling scale_by_ctr(const Instance& instance);

} // namespace adsched
