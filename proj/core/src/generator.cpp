#include <adsched/generator.hpp>

#include <adsched/errors.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

namespace adsched {

namespace {

// mt19937_64 output is specified bit-for-bit, so reducing it by hand keeps
// instances identical across standard libraries.
long draw(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

} // namespace

Instance generate_instance(const GenConfig& config) {
    const std::size_t slot_count = config.slots == 0 ? config.bidders : config.slots;
    if (config.zero_slots > slot_count)
        throw Error(ErrorCode::UnsortedInput, "zero_slots exceeds slot count");
    const std::size_t positive_count = slot_count - config.zero_slots;

    std::mt19937_64 rng(config.seed);
    Instance instance;

    const long bid_range =
        std::max(config.max_bid * 100, static_cast<long>(config.bidders) * 2);
    std::set<Rational> used_bids;
    for (std::size_t i = 0; i < config.bidders; ++i) {
        Bidder bidder;
        bidder.id = config.id_prefix + std::to_string(i + 1);
        bidder.budget = Rational(draw(rng, 1, config.max_budget * 4), 4);
        bidder.budget.canonicalize();

        bool infinite = config.bid_mode == GenConfig::BidMode::infinite ||
                        (config.bid_mode == GenConfig::BidMode::mixed && draw(rng, 0, 2) == 0);
        if (infinite) {
            bidder.max_cpc = Bid::infinity();
        } else {
            Rational bid;
            do {
                bid = Rational(draw(rng, 1, bid_range), 100);
                bid.canonicalize();
            } while (config.distinct_bids && !used_bids.insert(bid).second);
            bidder.max_cpc = Bid(bid);
        }

        if (config.random_ctr) {
            switch (draw(rng, 0, 2)) {
                case 0: bidder.ctr = Rational(1, 2); break;
                case 1: bidder.ctr = 1; break;
                default: bidder.ctr = 2; break;
            }
        }
        instance.bidders.push_back(std::move(bidder));
    }

    const long supply_range =
        std::max(config.max_supply, static_cast<long>(positive_count) * 2);
    std::set<long> supplies;
    while (supplies.size() < positive_count) supplies.insert(draw(rng, 1, supply_range));
    for (auto it = supplies.rbegin(); it != supplies.rend(); ++it)
        instance.slots.push_back(SlotSupply{Rational(*it), false});
    for (std::size_t i = 0; i < config.zero_slots; ++i)
        instance.slots.push_back(SlotSupply{Rational(0), false});

    return validate_instance(std::move(instance));
}

} // namespace adsched
