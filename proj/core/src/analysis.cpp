#include <adsched/analysis.hpp>

#include <adsched/errors.hpp>

#include <algorithm>
#include <cstddef>
#include <unordered_map>

namespace adsched {

namespace {

std::vector<Rational> slot_clicks(const Instance& instance) {
    std::vector<Rational> supplies;
    supplies.reserve(instance.slots.size());
    for (const SlotSupply& slot : instance.slots) supplies.push_back(slot.clicks);
    return supplies;
}

/// Gauss-Jordan on a square exact system; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> m) {
    const std::size_t k = m.size();
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        while (pivot < k && m[pivot][col] == 0) ++pivot;
        if (pivot == k) return std::nullopt;
        std::swap(m[col], m[pivot]);
        const Rational lead = m[col][col];
        for (std::size_t j = col; j <= k; ++j) m[col][j] /= lead;
        for (std::size_t row = 0; row < k; ++row) {
            if (row == col || m[row][col] == 0) continue;
            const Rational factor = m[row][col];
            for (std::size_t j = col; j <= k; ++j) m[row][j] -= factor * m[col][j];
        }
    }
    std::vector<Rational> solution(k);
    for (std::size_t i = 0; i < k; ++i) solution[i] = m[i][k];
    return solution;
}

bool advance_combination(std::vector<std::size_t>& combo, std::size_t pool) {
    const std::size_t k = combo.size();
    for (std::size_t i = k; i-- > 0;) {
        if (combo[i] + (k - i) < pool) {
            ++combo[i];
            for (std::size_t j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
            return true;
        }
    }
    return false;
}

void push_unique(std::vector<Rational>& values, const Rational& value) {
    if (std::find(values.begin(), values.end(), value) == values.end())
        values.push_back(value);
}

struct Utility {
    Rational clicks;
    bool feasible = true;
};

Utility utility_of(const Outcome& outcome, std::size_t index, const Bid& true_cpc,
                   const Rational& true_budget) {
    const BidderOutcome& result = outcome.bidders[index];
    Utility utility;
    utility.clicks = result.clicks;
    utility.feasible = !(true_cpc < result.price) && result.spend <= true_budget;
    return utility;
}

} // namespace

OracleResult lp_revenue_oracle(const Instance& instance, std::size_t max_active) {
    Instance padded = pad_instance(validate_instance(instance));
    for (const Bidder& bidder : padded.bidders)
        if (bidder.ctr != 1)
            throw Error(ErrorCode::UnsortedInput,
                        "oracle input must have unit ctr; apply scale_by_ctr first");
    const std::vector<Rational> supplies = slot_clicks(padded);

    // Pinned variables contribute nothing: an unbounded price cap makes any
    // click unaffordable, and a zero bid or budget makes it worthless.
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < padded.bidders.size(); ++i) {
        const Bidder& bidder = padded.bidders[i];
        if (bidder.max_cpc.is_infinite() || bidder.max_cpc.value() == 0 || bidder.budget == 0)
            continue;
        active.push_back(i);
    }
    if (active.size() > max_active)
        throw Error(ErrorCode::InstanceTooLarge,
                    "oracle limited to " + std::to_string(max_active) + " active bidders, got " +
                        std::to_string(active.size()));

    OracleResult result;
    result.max_revenue = 0;
    result.witness_clicks.assign(padded.bidders.size(), Rational(0));
    const std::size_t k = active.size();
    if (k == 0) return result;

    std::vector<Rational> bids, caps;
    for (std::size_t index : active) {
        bids.push_back(padded.bidders[index].max_cpc.value());
        caps.push_back(padded.bidders[index].budget / padded.bidders[index].max_cpc.value());
    }

    std::vector<Rational> supply_prefix(k + 1, Rational(0));
    for (std::size_t l = 1; l <= k; ++l)
        supply_prefix[l] =
            supply_prefix[l - 1] + (l - 1 < supplies.size() ? supplies[l - 1] : Rational(0));

    // Constraint pool: rows (a, rhs) of a.c = rhs.
    std::vector<std::pair<std::vector<Rational>, Rational>> pool;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Rational> row(k, Rational(0));
        row[i] = 1;
        pool.emplace_back(row, Rational(0));
        pool.emplace_back(std::move(row), caps[i]);
    }
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        std::vector<Rational> row(k, Rational(0));
        std::size_t size = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (std::size_t{1} << i)) {
                row[i] = 1;
                ++size;
            }
        pool.emplace_back(std::move(row), supply_prefix[size]);
    }

    std::vector<std::size_t> combo(k);
    for (std::size_t i = 0; i < k; ++i) combo[i] = i;
    std::vector<Rational> sorted;
    do {
        std::vector<std::vector<Rational>> system;
        system.reserve(k);
        for (std::size_t pick : combo) {
            std::vector<Rational> row = pool[pick].first;
            row.push_back(pool[pick].second);
            system.push_back(std::move(row));
        }
        auto vertex = solve_square(std::move(system));
        if (!vertex) continue;

        bool inside = true;
        for (std::size_t i = 0; i < k && inside; ++i)
            inside = (*vertex)[i] >= 0 && (*vertex)[i] <= caps[i];
        if (!inside) continue;
        sorted = *vertex;
        std::sort(sorted.begin(), sorted.end(), std::greater<Rational>());
        if (!is_feasible(sorted, supplies)) continue;

        Rational revenue(0);
        for (std::size_t i = 0; i < k; ++i) revenue += bids[i] * (*vertex)[i];
        if (revenue > result.max_revenue) {
            result.max_revenue = revenue;
            for (std::size_t i = 0; i < k; ++i) result.witness_clicks[active[i]] = (*vertex)[i];
        }
    } while (advance_combination(combo, pool.size()));

    return result;
}

bool check_greedy_optimal(const Instance& instance, std::size_t max_active) {
    return gfp(instance).revenue == lp_revenue_oracle(instance, max_active).max_revenue;
}

MonotonicityReport monotonicity_sweep(const Instance& instance,
                                      const std::string& bidder_id,
                                      SweepParam param,
                                      std::vector<Rational> grid) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 0)
            throw Error(param == SweepParam::bid ? ErrorCode::NegativeBid
                                                 : ErrorCode::NegativeBudget,
                        "grid values must be nonnegative");
        if (i + 1 < grid.size() && !(grid[i] < grid[i + 1]))
            throw Error(ErrorCode::UnsortedInput, "grid must be strictly increasing");
    }
    std::size_t target = instance.bidders.size();
    for (std::size_t i = 0; i < instance.bidders.size(); ++i)
        if (instance.bidders[i].id == bidder_id) target = i;
    if (target == instance.bidders.size())
        throw Error(ErrorCode::BadInstanceFile, "no bidder named " + bidder_id);

    MonotonicityReport report;
    report.bidder = bidder_id;
    report.param = param;
    report.grid = std::move(grid);
    report.clicks.reserve(report.grid.size());

    for (const Rational& value : report.grid) {
        Instance varied = instance;
        if (param == SweepParam::bid)
            varied.bidders[target].max_cpc = Bid(value);
        else
            varied.bidders[target].budget = value;
        Outcome outcome = ps_general(varied);
        report.clicks.push_back(outcome.bidders[target].clicks);
    }
    for (std::size_t i = 0; i + 1 < report.clicks.size(); ++i)
        if (report.clicks[i] > report.clicks[i + 1]) report.violations.push_back(i);
    return report;
}

std::vector<Rational> equilibrium_bids(const Instance& instance, const Rational& eps_prime) {
    if (eps_prime <= 0) throw Error(ErrorCode::UnsortedInput, "eps_prime must be positive");
    Outcome truthful = ps_general(instance);

    // A bidder outside every block faces the last block's price as the
    // marginal price of entry.
    std::unordered_map<std::string, Rational> price_of;
    for (const PriceBlock& block : truthful.blocks)
        for (const BlockMember& member : block.members) price_of.emplace(member.bidder, block.price);
    const Rational fallback =
        truthful.blocks.empty() ? Rational(0) : truthful.blocks.back().price;

    std::vector<Rational> bids;
    bids.reserve(instance.bidders.size());
    for (const Bidder& bidder : instance.bidders) {
        auto found = price_of.find(bidder.id);
        const Rational& reference = found != price_of.end() ? found->second : fallback;
        Rational raised = reference + eps_prime;
        bids.push_back(bidder.max_cpc < raised ? bidder.max_cpc.value() : raised);
    }
    return bids;
}

DeviationGrids adversarial_grids(const Instance& truth,
                                 std::span<const Rational> declared_bids,
                                 const Rational& eps_prime) {
    if (declared_bids.size() != truth.bidders.size())
        throw Error(ErrorCode::UnsortedInput, "declared profile size mismatch");
    if (eps_prime <= 0) throw Error(ErrorCode::UnsortedInput, "eps_prime must be positive");

    std::vector<Rational> price_points;
    for (const PriceBlock& block : ps_general(truth).blocks) price_points.push_back(block.price);

    DeviationGrids grids;
    grids.bids.resize(truth.bidders.size());
    grids.budgets.resize(truth.bidders.size());
    for (std::size_t i = 0; i < truth.bidders.size(); ++i) {
        std::vector<Rational>& bid_grid = grids.bids[i];
        push_unique(bid_grid, Rational(0));
        auto shifted = [&](const Rational& center) {
            Rational down = center - eps_prime;
            // A down-probe that leaves the positive range degenerates to the
            // (already present) zero bid and misses underbidding gains, so
            // fall back to half the point instead.
            if (down <= 0) down = center / 2;
            push_unique(bid_grid, down);
            push_unique(bid_grid, center + eps_prime);
        };
        for (const Rational& price : price_points) shifted(price);
        for (std::size_t j = 0; j < declared_bids.size(); ++j)
            if (j != i) shifted(declared_bids[j]);
        push_unique(bid_grid, declared_bids[i]);
        if (!truth.bidders[i].max_cpc.is_infinite())
            push_unique(bid_grid, truth.bidders[i].max_cpc.value());
        std::sort(bid_grid.begin(), bid_grid.end());

        std::vector<Rational>& budget_grid = grids.budgets[i];
        const Rational& budget = truth.bidders[i].budget;
        push_unique(budget_grid, budget / 2);
        push_unique(budget_grid, budget);
        push_unique(budget_grid, budget * 2);
        std::sort(budget_grid.begin(), budget_grid.end());
    }
    return grids;
}

NashReport nash_gap(const Instance& truth,
                    std::span<const Rational> declared_bids,
                    std::span<const Rational> declared_budgets,
                    const DeviationGrids& grids,
                    const Rational& epsilon) {
    const std::size_t n = truth.bidders.size();
    if (declared_bids.size() != n || declared_budgets.size() != n ||
        grids.bids.size() != n || grids.budgets.size() != n)
        throw Error(ErrorCode::UnsortedInput, "declared profile size mismatch");

    Instance declared = truth;
    for (std::size_t i = 0; i < n; ++i) {
        declared.bidders[i].max_cpc = Bid(declared_bids[i]);
        declared.bidders[i].budget = declared_budgets[i];
    }
    const Outcome base = gfp(declared);

    NashReport report;
    report.epsilon = epsilon;
    report.max_gain = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Bid& true_cpc = truth.bidders[i].max_cpc;
        const Rational& true_budget = truth.bidders[i].budget;
        const Utility baseline = utility_of(base, i, true_cpc, true_budget);

        BidderNash row;
        row.id = truth.bidders[i].id;
        row.baseline_clicks = baseline.clicks;
        row.baseline_feasible = baseline.feasible;
        row.best_gain = 0;

        for (const Rational& bid : grids.bids[i]) {
            for (const Rational& budget : grids.budgets[i]) {
                Instance deviated = declared;
                deviated.bidders[i].max_cpc = Bid(bid);
                deviated.bidders[i].budget = budget;
                const Utility dev = utility_of(gfp(deviated), i, true_cpc, true_budget);
                if (!dev.feasible) continue;
                Rational gain = baseline.feasible ? Rational(dev.clicks - baseline.clicks)
                                                  : dev.clicks;
                if (gain > row.best_gain) {
                    row.best_gain = gain;
                    row.best_deviation = std::make_pair(bid, budget);
                }
            }
        }
        if (row.best_gain > report.max_gain) report.max_gain = row.best_gain;
        report.bidders.push_back(std::move(row));
    }
    report.within_epsilon = report.max_gain <= epsilon;
    return report;
}

Rational ps_gfp_equivalence(const Instance& instance, const Rational& eps_prime) {
    const Outcome truthful = ps_general(instance);
    const std::vector<Rational> bids = equilibrium_bids(instance, eps_prime);
    Instance declared = instance;
    for (std::size_t i = 0; i < bids.size(); ++i) declared.bidders[i].max_cpc = Bid(bids[i]);
    const Outcome greedy = gfp(declared);

    Rational worst(0);
    for (std::size_t i = 0; i < instance.bidders.size(); ++i) {
        Rational gap = abs(truthful.bidders[i].clicks - greedy.bidders[i].clicks);
        if (gap > worst) worst = gap;
    }
    return worst;
}

} // namespace adsched
