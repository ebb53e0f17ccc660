#pragma once

#include <adsched/mechanisms.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace adsched {

/// Exact revenue optimum over all feasible click allocations respecting the
/// per-bidder price caps, by brute-force vertex enumeration: every square
/// subsystem of {c_i = 0} u {c_i = B_i/b_i} u {sum over S of c = largest
/// |S| supplies} is solved exactly and checked for feasibility. Never runs
/// the greedy auction. Throws InstanceTooLarge beyond `max_active` bidders
/// with a positive bid and budget.
struct OracleResult {
    Rational max_revenue;
    std::vector<Rational> witness_clicks;  // padded-instance order
};
OracleResult lp_revenue_oracle(const Instance& instance, std::size_t max_active = 5);

/// True iff gfp's revenue equals the oracle optimum exactly.
bool check_greedy_optimal(const Instance& instance, std::size_t max_active = 5);

enum class SweepParam { bid, budget };

/// Reruns ps_general once per grid value, varying one bidder's declared bid
/// or budget, and records that bidder's clicks. grid must be strictly
/// increasing. violations lists each adjacent pair where clicks dropped.
struct MonotonicityReport {
    std::string bidder;
    SweepParam param = SweepParam::bid;
    std::vector<Rational> grid;
    std::vector<Rational> clicks;
    std::vector<std::size_t> violations;  // index i: clicks[i] > clicks[i+1]
};
MonotonicityReport monotonicity_sweep(const Instance& instance,
                                      const std::string& bidder_id,
                                      SweepParam param,
                                      std::vector<Rational> grid);

/// The bid profile that makes the greedy auction mimic the price-setting
/// mechanism: each bidder bids eps_prime above their truthful block price,
/// capped at their max-cpc. Always finite.
std::vector<Rational> equilibrium_bids(const Instance& instance, const Rational& eps_prime);

/// Per-bidder candidate deviations used by the no-regret check.
struct DeviationGrids {
    std::vector<std::vector<Rational>> bids;     // one per bidder, instance order
    std::vector<std::vector<Rational>> budgets;  // one per bidder, instance order
};

/// The analytically dangerous deviation points: 0, every block price and
/// every competitor's declared bid shifted by +-eps_prime, the bidder's own
/// declaration and finite max-cpc, with budget alternatives around the
/// truthful budget.
DeviationGrids adversarial_grids(const Instance& truth,
                                 std::span<const Rational> declared_bids,
                                 const Rational& eps_prime);

/// Best unilateral improvement any bidder can find over the deviation grids
/// when everyone plays `declared`. Utilities follow the click-maximization
/// model: clicks when the assigned price respects the true max-cpc and the
/// spend respects the true budget, minus-infinity otherwise (encoded as the
/// infeasible flag, never as a number). Gains are exact and nonnegative.
struct BidderNash {
    std::string id;
    Rational baseline_clicks;
    bool baseline_feasible = true;
    Rational best_gain;
    std::optional<std::pair<Rational, Rational>> best_deviation;  // bid, budget
};
struct NashReport {
    std::vector<BidderNash> bidders;
    Rational max_gain;
    Rational epsilon;
    bool within_epsilon = true;
};
NashReport nash_gap(const Instance& truth,
                    std::span<const Rational> declared_bids,
                    std::span<const Rational> declared_budgets,
                    const DeviationGrids& grids,
                    const Rational& epsilon);

/// Largest per-bidder click difference between the price-setting outcome on
/// truthful declarations and the greedy auction at the equilibrium bid
/// profile built with eps_prime.
Rational ps_gfp_equivalence(const Instance& instance, const Rational& eps_prime);

} // namespace adsched
