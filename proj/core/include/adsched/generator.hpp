#pragma once

#include <adsched/model.hpp>

#include <cstdint>
#include <string>

namespace adsched {

/// Seeded instance generation; identical configs yield identical instances
/// on every platform (no std distribution objects involved).
struct GenConfig {
    std::uint64_t seed = 0;
    std::size_t bidders = 4;
    std::size_t slots = 0;       // 0: one slot per bidder
    std::size_t zero_slots = 0;  // trailing zero-supply slots within `slots`
    enum class BidMode { finite, infinite, mixed } bid_mode = BidMode::finite;
    bool distinct_bids = true;   // finite bids drawn without exact ties
    bool random_ctr = false;     // ctrs from {1/2, 1, 2} instead of 1
    long max_budget = 100;
    long max_bid = 5;
    long max_supply = 100;
    std::string id_prefix = "b";
};

Instance generate_instance(const GenConfig& config);

} // namespace adsched
