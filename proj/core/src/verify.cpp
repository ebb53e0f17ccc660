#include <adsched/verify.hpp>

#include <adsched/analysis.hpp>
#include <adsched/errors.hpp>
#include <adsched/io.hpp>
#include <adsched/scheduling.hpp>

#include <json.hpp>

#include <algorithm>
#include <random>
#include <set>

namespace adsched {

namespace {

using ordered_json = nlohmann::ordered_json;

long draw(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

ordered_json fraction_array(std::span<const Rational> values) {
    ordered_json array = ordered_json::array();
    for (const Rational& value : values) array.push_back(to_fraction_string(value));
    return array;
}

std::vector<Rational> parse_fraction_array(const ordered_json& array) {
    std::vector<Rational> values;
    for (const ordered_json& value : array) values.push_back(parse_rational(value.get<std::string>()));
    return values;
}

CheckRow check_monotonicity(const Instance& instance, const std::string& bidder,
                            SweepParam param, std::vector<Rational> grid) {
    CheckRow row;
    row.check = "monotonicity";
    MonotonicityReport report = monotonicity_sweep(instance, bidder, param, grid);
    row.pass = report.violations.empty();
    row.worst = std::to_string(report.violations.size()) + " violations";
    if (!row.pass) {
        ordered_json replay;
        replay["check"] = row.check;
        replay["instance"] = ordered_json::parse(instance_to_text(instance));
        replay["bidder"] = bidder;
        replay["param"] = param == SweepParam::bid ? "bid" : "budget";
        replay["grid"] = fraction_array(grid);
        row.replay = replay.dump(2);
    }
    return row;
}

CheckRow check_greedy_optimal_row(const Instance& instance) {
    CheckRow row;
    row.check = "greedy-optimal";
    const Rational greedy = gfp(instance).revenue;
    const Rational oracle = lp_revenue_oracle(instance).max_revenue;
    row.pass = greedy == oracle;
    row.worst = to_fraction_string(abs(Rational(oracle - greedy)));
    if (!row.pass) {
        ordered_json replay;
        replay["check"] = row.check;
        replay["instance"] = ordered_json::parse(instance_to_text(instance));
        row.replay = replay.dump(2);
    }
    return row;
}

CheckRow check_nash(const Instance& instance, const Rational& eps_prime) {
    CheckRow row;
    row.check = "nash";

    auto gain_at = [&](const Rational& eps) {
        std::vector<Rational> bids = equilibrium_bids(instance, eps);
        std::vector<Rational> budgets;
        for (const Bidder& bidder : instance.bidders) budgets.push_back(bidder.budget);
        DeviationGrids grids = adversarial_grids(instance, bids, eps);
        return nash_gap(instance, bids, budgets, grids, Rational(0)).max_gain;
    };
    const Rational coarse = gain_at(eps_prime);
    const Rational fine = gain_at(Rational(eps_prime / 10));

    row.pass = fine <= coarse;
    row.worst = to_fraction_string(coarse) + " then " + to_fraction_string(fine);
    if (!row.pass) {
        ordered_json replay;
        replay["check"] = row.check;
        replay["instance"] = ordered_json::parse(instance_to_text(instance));
        replay["eps_prime"] = to_fraction_string(eps_prime);
        row.replay = replay.dump(2);
    }
    return row;
}

CheckRow check_schedule_audit(std::vector<Rational> clicks, std::vector<Rational> supplies) {
    CheckRow row;
    row.check = "schedule-audit";

    const Rational bound = makespan(clicks, supplies);
    const bool expected = bound <= 1;
    bool consistent = is_feasible(clicks, supplies) == expected;

    std::vector<JobClicks> jobs;
    for (std::size_t i = 0; i < clicks.size(); ++i)
        jobs.push_back(JobClicks{"j" + std::to_string(i + 1), clicks[i]});
    bool built = true;
    try {
        Schedule schedule = build_schedule(jobs, supplies);
        std::unordered_map<std::string, Rational> totals;
        for (const JobClicks& job : jobs) totals.emplace(job.bidder, job.clicks);
        audit_schedule(schedule, totals, supplies);
    } catch (const Error& error) {
        built = false;
        if (error.code() != ErrorCode::Infeasible) consistent = false;
    }
    if (built != expected) consistent = false;

    row.pass = consistent;
    row.worst = "makespan " + to_fraction_string(bound);
    if (!row.pass) {
        ordered_json replay;
        replay["check"] = row.check;
        replay["clicks"] = fraction_array(clicks);
        replay["supplies"] = fraction_array(supplies);
        row.replay = replay.dump(2);
    }
    return row;
}

GenConfig suite_config(std::uint64_t seed, std::size_t index) {
    GenConfig config;
    config.seed = seed + index;
    config.bidders = 4;
    return config;
}

void run_monotonicity(SuiteReport& report, std::uint64_t seed, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
        Instance instance = generate_instance(suite_config(seed, i));
        const std::size_t target = i % instance.bidders.size();
        const SweepParam param = i % 2 == 0 ? SweepParam::bid : SweepParam::budget;
        const Bidder& bidder = instance.bidders[target];
        const Rational center =
            param == SweepParam::bid ? bidder.max_cpc.value() : bidder.budget;

        std::vector<Rational> grid;
        const Rational low = center / 2;
        const Rational step = Rational(center * 3 / 2) / 19;
        for (int t = 0; t < 20; ++t) grid.push_back(low + step * t);

        CheckRow row = check_monotonicity(instance, bidder.id, param, std::move(grid));
        row.instance_id = "gen-" + std::to_string(seed) + "-" + std::to_string(i);
        if (!row.pass) ++report.failures;
        report.rows.push_back(std::move(row));
    }
}

void run_greedy(SuiteReport& report, std::uint64_t seed, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
        Instance instance = generate_instance(suite_config(seed, i));
        CheckRow row = check_greedy_optimal_row(instance);
        row.instance_id = "gen-" + std::to_string(seed) + "-" + std::to_string(i);
        if (!row.pass) ++report.failures;
        report.rows.push_back(std::move(row));
    }
}

void run_nash(SuiteReport& report, std::uint64_t seed, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
        Instance instance = generate_instance(suite_config(seed, i));
        Outcome truthful = ps_general(instance);
        Rational top_price = truthful.blocks.empty() ? Rational(0)
                                                     : truthful.blocks.front().price;
        Rational eps_prime = top_price > 0 ? Rational(top_price / 100) : Rational(1, 100);
        CheckRow row = check_nash(instance, eps_prime);
        row.instance_id = "gen-" + std::to_string(seed) + "-" + std::to_string(i);
        if (!row.pass) ++report.failures;
        report.rows.push_back(std::move(row));
    }
}

void run_schedule(SuiteReport& report, std::uint64_t seed, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
        std::mt19937_64 rng(seed + i);
        const long slot_count = draw(rng, 1, 5);
        const long zero_tail = slot_count > 1 ? draw(rng, 0, 1) : 0;

        std::set<long> raw;
        while (raw.size() < static_cast<std::size_t>(slot_count - zero_tail))
            raw.insert(draw(rng, 1, 100));
        std::vector<Rational> supplies;
        for (auto it = raw.rbegin(); it != raw.rend(); ++it) supplies.push_back(Rational(*it));
        Rational supply_total(0);
        for (const Rational& d : supplies) supply_total += d;
        for (long z = 0; z < zero_tail; ++z) supplies.push_back(Rational(0));

        const long job_count = draw(rng, 1, 6);
        std::vector<Rational> clicks;
        Rational raw_total(0);
        for (long j = 0; j < job_count; ++j) {
            Rational value(draw(rng, 0, 200), draw(rng, 1, 4));
            value.canonicalize();
            clicks.push_back(value);
            raw_total += value;
        }
        if (i % 2 == 0 && raw_total > 0) {
            // Scale into likely-feasible territory.
            Rational scale(draw(rng, 30, 95), 100);
            scale.canonicalize();
            const Rational factor = scale * supply_total / raw_total;
            for (Rational& value : clicks) value *= factor;
        }
        std::sort(clicks.begin(), clicks.end(), std::greater<Rational>());
        if (i % 2 == 1 && !clicks.empty()) {
            // Guarantee a first-prefix violation.
            Rational bump(100 + draw(rng, 1, 50), 100);
            bump.canonicalize();
            clicks.front() = supplies.front() * bump;
            std::sort(clicks.begin(), clicks.end(), std::greater<Rational>());
        }

        CheckRow row = check_schedule_audit(std::move(clicks), std::move(supplies));
        row.instance_id = "gen-" + std::to_string(seed) + "-" + std::to_string(i);
        if (!row.pass) ++report.failures;
        report.rows.push_back(std::move(row));
    }
}

} // namespace

std::optional<Suite> suite_from_name(std::string_view name) {
    if (name == "monotonicity") return Suite::monotonicity;
    if (name == "greedy-optimal") return Suite::greedy_optimal;
    if (name == "nash") return Suite::nash;
    if (name == "schedule-audit") return Suite::schedule_audit;
    if (name == "all") return Suite::all;
    return std::nullopt;
}

std::string_view suite_name(Suite suite) {
    switch (suite) {
        case Suite::monotonicity: return "monotonicity";
        case Suite::greedy_optimal: return "greedy-optimal";
        case Suite::nash: return "nash";
        case Suite::schedule_audit: return "schedule-audit";
        case Suite::all: return "all";
    }
    return "all";
}

SuiteReport run_suite(Suite suite, std::uint64_t seed, std::size_t count) {
    SuiteReport report;
    report.suite = suite_name(suite);
    switch (suite) {
        case Suite::monotonicity: run_monotonicity(report, seed, count); break;
        case Suite::greedy_optimal: run_greedy(report, seed, count); break;
        case Suite::nash: run_nash(report, seed, count); break;
        case Suite::schedule_audit: run_schedule(report, seed, count); break;
        case Suite::all:
            run_monotonicity(report, seed, count);
            run_greedy(report, seed, count);
            run_nash(report, seed, count);
            run_schedule(report, seed, count);
            break;
    }
    return report;
}

CheckRow run_replay(const std::string& replay_text) try {
    const ordered_json root = ordered_json::parse(replay_text);
    const std::string check = root.at("check").get<std::string>();

    CheckRow row;
    if (check == "monotonicity") {
        Instance instance = instance_from_text(root.at("instance").dump());
        SweepParam param = root.at("param").get<std::string>() == "bid" ? SweepParam::bid
                                                                        : SweepParam::budget;
        row = check_monotonicity(instance, root.at("bidder").get<std::string>(), param,
                                 parse_fraction_array(root.at("grid")));
    } else if (check == "greedy-optimal") {
        row = check_greedy_optimal_row(instance_from_text(root.at("instance").dump()));
    } else if (check == "nash") {
        row = check_nash(instance_from_text(root.at("instance").dump()),
                         parse_rational(root.at("eps_prime").get<std::string>()));
    } else if (check == "schedule-audit") {
        row = check_schedule_audit(parse_fraction_array(root.at("clicks")),
                                   parse_fraction_array(root.at("supplies")));
    } else {
        throw Error(ErrorCode::BadInstanceFile, "unknown replay check \"" + check + "\"");
    }
    row.instance_id = "replay";
    return row;
} catch (const nlohmann::json::exception& error) {
    throw Error(ErrorCode::BadInstanceFile, std::string("bad replay document: ") + error.what());
}

} // namespace adsched
