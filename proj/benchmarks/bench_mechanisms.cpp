#include <adsched/generator.hpp>
#include <adsched/mechanisms.hpp>
#include <adsched/model.hpp>
#include <adsched/scheduling.hpp>

#include <benchmark/benchmark.h>

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

namespace {

adsched::Instance market_of(int bidders) {
    adsched::GenConfig config;
    config.seed = 12345 + static_cast<std::uint64_t>(bidders);
    config.bidders = static_cast<std::size_t>(bidders);
    config.max_budget = 1000;
    config.max_bid = 20;
    config.max_supply = 100000;
    return adsched::generate_instance(config);
}

void BM_ps_general(benchmark::State& state) {
    adsched::Instance instance = market_of(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(adsched::ps_general(instance));
}
BENCHMARK(BM_ps_general)->Arg(4)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_gfp(benchmark::State& state) {
    adsched::Instance instance = market_of(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(adsched::gfp(instance));
}
BENCHMARK(BM_gfp)->Arg(4)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_find_price_block(benchmark::State& state) {
    adsched::Instance instance = market_of(static_cast<int>(state.range(0)));
    std::vector<adsched::Rational> budgets;
    for (const adsched::Bidder& bidder : instance.bidders) budgets.push_back(bidder.budget);
    std::sort(budgets.begin(), budgets.end(), std::greater<adsched::Rational>());
    std::vector<adsched::Rational> supplies;
    for (const adsched::SlotSupply& slot : instance.slots) supplies.push_back(slot.clicks);
    for (auto _ : state)
        benchmark::DoNotOptimize(adsched::find_price_block(budgets, supplies));
}
BENCHMARK(BM_find_price_block)->Arg(4)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_build_schedule(benchmark::State& state) {
    adsched::Instance instance = market_of(static_cast<int>(state.range(0)));
    adsched::Outcome outcome = adsched::ps_general(instance);
    std::vector<adsched::JobClicks> jobs;
    for (const adsched::BidderOutcome& result : outcome.bidders)
        jobs.push_back(adsched::JobClicks{.bidder = result.id, .clicks = result.clicks});
    std::sort(jobs.begin(), jobs.end(), [](const auto& a, const auto& b) {
        return a.clicks > b.clicks;
    });
    std::vector<adsched::Rational> supplies;
    for (const adsched::SlotSupply& slot : adsched::pad_instance(instance).slots)
        supplies.push_back(slot.clicks);
    for (auto _ : state)
        benchmark::DoNotOptimize(adsched::build_schedule(jobs, supplies));
}
BENCHMARK(BM_build_schedule)->Arg(4)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
