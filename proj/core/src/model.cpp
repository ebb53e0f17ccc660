#include <adsched/model.hpp>

#include <adsched/errors.hpp>

#include <algorithm>
#include <unordered_set>

namespace adsched {

Instance validate_instance(Instance instance) {
    if (instance.bidders.empty())
        throw Error(ErrorCode::TooFewBidders, "an instance needs at least one bidder");

    std::unordered_set<std::string> seen;
    for (const Bidder& bidder : instance.bidders) {
        if (!seen.insert(bidder.id).second)
            throw Error(ErrorCode::DuplicateBidderId, "bidder id \"" + bidder.id + "\" appears twice");
        if (bidder.budget < 0)
            throw Error(ErrorCode::NegativeBudget, "bidder \"" + bidder.id + "\" has budget " +
                                                       to_fraction_string(bidder.budget));
        if (!bidder.max_cpc.is_infinite() && bidder.max_cpc.value() < 0)
            throw Error(ErrorCode::NegativeBid, "bidder \"" + bidder.id + "\" has max_cpc " +
                                                    to_fraction_string(bidder.max_cpc.value()));
        if (bidder.ctr <= 0)
            throw Error(ErrorCode::NonPositiveCtr, "bidder \"" + bidder.id + "\" has ctr " +
                                                       to_fraction_string(bidder.ctr));
    }

    bool saw_zero = false;
    const Rational* previous = nullptr;
    for (const SlotSupply& slot : instance.slots) {
        if (slot.clicks < 0)
            throw Error(ErrorCode::NonDecreasingPositiveSupply,
                        "slot supply " + to_fraction_string(slot.clicks) + " is negative");
        if (slot.clicks == 0) {
            saw_zero = true;
            continue;
        }
        if (saw_zero)
            throw Error(ErrorCode::ZeroSupplyBeforePositive,
                        "positive supply " + to_fraction_string(slot.clicks) +
                            " follows a zero-supply slot");
        if (previous && !(*previous > slot.clicks))
            throw Error(ErrorCode::NonDecreasingPositiveSupply,
                        "positive supplies must strictly decrease; got " +
                            to_fraction_string(*previous) + " then " + to_fraction_string(slot.clicks));
        previous = &slot.clicks;
    }
    return instance;
}

Instance pad_instance(Instance instance) {
    std::size_t target = std::max({instance.bidders.size(), instance.slots.size(), std::size_t{2}});

    std::unordered_set<std::string> ids;
    for (const Bidder& bidder : instance.bidders) ids.insert(bidder.id);
    std::size_t counter = 1;
    while (instance.bidders.size() < target) {
        std::string id;
        do {
            id = "dummy" + std::to_string(counter++);
        } while (ids.contains(id));
        ids.insert(id);
        instance.bidders.push_back(Bidder{.id = id,
                                          .budget = Rational(0),
                                          .max_cpc = Bid(Rational(0)),
                                          .ctr = Rational(1),
                                          .dummy = true});
    }
    while (instance.slots.size() < target)
        instance.slots.push_back(SlotSupply{.clicks = Rational(0), .dummy = true});
    return instance;
}

bool is_square(const Instance& instance) {
    return instance.bidders.size() == instance.slots.size() && instance.bidders.size() >= 2;
}

std::strong_ordering compare_bids(const BidKey& a, const BidKey& b) {
    if (auto c = a.bid <=> b.bid; c != 0) return c;
    // Smaller lex_rank wins, so it compares greater as a priority.
    if (a.lex_rank < b.lex_rank) return std::strong_ordering::greater;
    if (a.lex_rank > b.lex_rank) return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

bool bid_precedes(const BidKey& a, const BidKey& b) {
    return compare_bids(a, b) > 0;
}

CtrScaling scale_by_ctr(const Instance& instance) {
    CtrScaling result;
    result.scaled = instance;
    for (Bidder& bidder : result.scaled.bidders) {
        result.gamma.emplace(bidder.id, bidder.ctr);
        bidder.max_cpc = bidder.max_cpc.scaled(bidder.ctr);
        bidder.ctr = 1;
    }
    return result;
}

} // namespace adsched
