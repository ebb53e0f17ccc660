#include "test_support.hpp"

#include <adsched/errors.hpp>
#include <adsched/scheduling.hpp>

#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

using namespace adsched;
using adsched::tests::error_code_of;
using adsched::tests::rat;

namespace {

std::vector<Rational> rats(const std::vector<const char*>& texts) {
    std::vector<Rational> values;
    for (const char* text : texts) values.push_back(rat(text));
    return values;
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    return lo + rng() % (hi - lo + 1);
}

Rational ratio(std::uint64_t num, std::uint64_t den) {
    Rational value(static_cast<long>(num), static_cast<long>(den));
    value.canonicalize();
    return value;
}

std::vector<JobClicks> name_jobs(std::vector<Rational> clicks) {
    std::sort(clicks.begin(), clicks.end(), std::greater<Rational>());
    std::vector<JobClicks> jobs;
    for (std::size_t i = 0; i < clicks.size(); ++i)
        jobs.push_back(JobClicks{.bidder = "j" + std::to_string(i), .clicks = clicks[i]});
    return jobs;
}

std::unordered_map<std::string, Rational> totals_of(std::span<const JobClicks> jobs) {
    std::unordered_map<std::string, Rational> expected;
    for (const JobClicks& job : jobs) expected[job.bidder] = job.clicks;
    return expected;
}

} // namespace

TEST_CASE("is_feasible is the prefix condition") {
    CHECK(is_feasible(rats({"80", "70", "500/21", "25/21"}), rats({"100", "50", "25", "0"})));
    CHECK_FALSE(is_feasible(rats({"120"}), rats({"100"})));
    CHECK_FALSE(is_feasible(rats({"60", "50"}), rats({"100", "5"})));
    CHECK(is_feasible(rats({"10", "5", "0"}), rats({"10", "5"})));
    CHECK_FALSE(is_feasible(rats({"10", "5", "1"}), rats({"10", "5"})));
    CHECK_FALSE(is_feasible(rats({"5"}), rats({"0"})));
    CHECK(is_feasible({}, {}));
    CHECK(is_feasible(rats({"10", "10"}), rats({"15", "5"})));
}

TEST_CASE("is_feasible and makespan insist on sorted inputs") {
    CHECK(error_code_of([] { is_feasible(rats({"5", "10"}), rats({"100"})); }) ==
          ErrorCode::UnsortedInput);
    CHECK(error_code_of([] { is_feasible(rats({"10"}), rats({"50", "100"})); }) ==
          ErrorCode::UnsortedInput);
    CHECK(error_code_of([] { is_feasible(rats({"10"}), rats({"50", "50"})); }) ==
          ErrorCode::UnsortedInput);
    CHECK(error_code_of([] { is_feasible(rats({"10"}), rats({"0", "50"})); }) ==
          ErrorCode::UnsortedInput);
    CHECK(error_code_of([] { makespan(rats({"-1"}), rats({"10"})); }) == ErrorCode::UnsortedInput);
}

TEST_CASE("makespan is the largest prefix ratio") {
    CHECK(makespan(rats({"50"}), rats({"100"})) == rat("1/2"));
    CHECK(makespan(rats({"120"}), rats({"100"})) == rat("6/5"));
    CHECK(makespan(rats({"10", "10"}), rats({"15", "5"})) == rat("1"));
    CHECK(makespan(rats({"80", "70", "500/21", "25/21"}), rats({"100", "50", "25", "0"})) ==
          rat("1"));
    CHECK(makespan({}, rats({"10"})) == 0);
    CHECK(makespan(rats({"0", "0"}), rats({"0"})) == 0);
    CHECK(error_code_of([] { makespan(rats({"5"}), rats({"0"})); }) == ErrorCode::AllZeroSupply);
}

TEST_CASE("build_schedule delivers exact totals that pass the audit") {
    std::vector<JobClicks> jobs = name_jobs(rats({"80", "70", "500/21", "25/21"}));
    std::vector<Rational> supplies = rats({"100", "50", "25", "0"});
    Schedule schedule = build_schedule(jobs, supplies);
    CHECK_NOTHROW(audit_schedule(schedule, totals_of(jobs), supplies));
    for (const ScheduleEntry& entry : schedule.entries) {
        CHECK(entry.slot < 4);
        CHECK(entry.start >= 0);
        CHECK(entry.end <= 1);
        CHECK(entry.start < entry.end);
    }
}

TEST_CASE("equal-level jobs rotate over the shared machine pool") {
    std::vector<JobClicks> jobs = name_jobs(rats({"50", "50"}));
    std::vector<Rational> supplies = rats({"60", "40"});
    Schedule schedule = build_schedule(jobs, supplies);
    CHECK_NOTHROW(audit_schedule(schedule, totals_of(jobs), supplies));
    // one of the two equal jobs necessarily splits across both slots
    CHECK(schedule.entries.size() >= 3);
}

TEST_CASE("zero-click jobs produce no entries") {
    std::vector<JobClicks> jobs = name_jobs(rats({"30", "0"}));
    std::vector<Rational> supplies = rats({"60", "40"});
    Schedule schedule = build_schedule(jobs, supplies);
    for (const ScheduleEntry& entry : schedule.entries) CHECK(entry.bidder == "j0");
    CHECK_NOTHROW(audit_schedule(schedule, totals_of(jobs), supplies));
}

TEST_CASE("build_schedule refuses infeasible demand") {
    std::vector<JobClicks> jobs = name_jobs(rats({"120"}));
    std::vector<Rational> supplies = rats({"100"});
    CHECK(error_code_of([&] { build_schedule(jobs, supplies); }) == ErrorCode::Infeasible);
}

TEST_CASE("slot_offset shifts emitted slot indices") {
    std::vector<JobClicks> jobs = name_jobs(rats({"15"}));
    std::vector<Rational> window = rats({"30"});
    Schedule schedule = build_schedule(jobs, window, 2);
    REQUIRE_FALSE(schedule.entries.empty());
    for (const ScheduleEntry& entry : schedule.entries) CHECK(entry.slot == 2);
    std::vector<Rational> full = rats({"100", "50", "30"});
    CHECK_NOTHROW(audit_schedule(schedule, totals_of(jobs), full));
}

TEST_CASE("audit_schedule flags tampering") {
    std::vector<JobClicks> jobs = name_jobs(rats({"40", "20"}));
    std::vector<Rational> supplies = rats({"60", "40"});
    Schedule good = build_schedule(jobs, supplies);
    auto expected = totals_of(jobs);
    CHECK_NOTHROW(audit_schedule(good, expected, supplies));

    SUBCASE("stretched entry breaks the click totals") {
        Schedule bad = good;
        bad.entries[0].end += rat("1/100");
        CHECK(error_code_of([&] { audit_schedule(bad, expected, supplies); }) ==
              ErrorCode::ScheduleAuditFailed);
    }
    SUBCASE("double-booked slot") {
        Schedule bad;
        bad.entries = {ScheduleEntry{"j0", 0, rat("0"), rat("3/4")},
                       ScheduleEntry{"j1", 0, rat("1/2"), rat("1")}};
        CHECK(error_code_of([&] {
                  audit_schedule(bad, {{"j0", rat("45")}, {"j1", rat("30")}}, supplies);
              }) == ErrorCode::ScheduleAuditFailed);
    }
    SUBCASE("bidder in two slots at once") {
        Schedule bad;
        bad.entries = {ScheduleEntry{"j0", 0, rat("0"), rat("1/2")},
                       ScheduleEntry{"j0", 1, rat("1/4"), rat("1/2")}};
        CHECK(error_code_of([&] { audit_schedule(bad, {{"j0", rat("40")}}, supplies); }) ==
              ErrorCode::ScheduleAuditFailed);
    }
    SUBCASE("entry past the end of the day") {
        Schedule bad;
        bad.entries = {ScheduleEntry{"j0", 0, rat("1/2"), rat("3/2")}};
        CHECK(error_code_of([&] { audit_schedule(bad, {{"j0", rat("60")}}, supplies); }) ==
              ErrorCode::ScheduleAuditFailed);
    }
    SUBCASE("totals must cover every expected bidder") {
        CHECK(error_code_of([&] {
                  audit_schedule(Schedule{}, {{"j0", rat("1")}}, supplies);
              }) == ErrorCode::ScheduleAuditFailed);
        CHECK_NOTHROW(audit_schedule(Schedule{}, {{"j0", rat("0")}}, supplies));
    }
}

TEST_CASE("max_additional_clicks returns the exact headroom") {
    std::vector<Rational> supplies = rats({"60", "40", "10"});
    std::vector<Rational> committed = rats({"20", "30"}); // any order accepted

    Rational headroom = max_additional_clicks(committed, supplies, nullptr);
    std::vector<Rational> with = {rat("30"), rat("20"), headroom};
    std::sort(with.begin(), with.end(), std::greater<Rational>());
    CHECK(is_feasible(with, supplies));

    std::vector<Rational> beyond = {rat("30"), rat("20"), headroom + rat("1/1000")};
    std::sort(beyond.begin(), beyond.end(), std::greater<Rational>());
    CHECK_FALSE(is_feasible(beyond, supplies));

    SUBCASE("a cap below the headroom binds") {
        Rational cap = headroom / 2;
        CHECK(max_additional_clicks(committed, supplies, &cap) == cap);
    }
    SUBCASE("empty committed set") {
        CHECK(max_additional_clicks({}, rats({"100"}), nullptr) == rat("100"));
        Rational cap = rat("40");
        CHECK(max_additional_clicks({}, rats({"100"}), &cap) == rat("40"));
    }
}

TEST_CASE("feasibility, makespan and construction agree on random pairs") {
    std::mt19937_64 rng(20240817);
    for (int round = 0; round < 150; ++round) {
        CAPTURE(round);
        std::set<std::uint64_t> distinct;
        std::size_t positive = draw(rng, 1, 5);
        while (distinct.size() < positive) distinct.insert(draw(rng, 1, 100));
        std::vector<Rational> supplies(distinct.rbegin(), distinct.rend());
        std::size_t tail = draw(rng, 0, 1);
        for (std::size_t i = 0; i < tail; ++i) supplies.push_back(Rational(0));

        std::vector<Rational> clicks;
        std::size_t jobs = draw(rng, 1, 6);
        for (std::size_t i = 0; i < jobs; ++i) clicks.push_back(ratio(draw(rng, 0, 200), draw(rng, 1, 4)));
        std::sort(clicks.begin(), clicks.end(), std::greater<Rational>());

        bool feasible = is_feasible(clicks, supplies);
        CHECK(feasible == (makespan(clicks, supplies) <= 1));

        std::vector<JobClicks> named = name_jobs(clicks);
        bool built = false;
        try {
            Schedule schedule = build_schedule(named, supplies);
            built = true;
            audit_schedule(schedule, totals_of(named), supplies);
        } catch (const Error& error) {
            REQUIRE(error.code() == ErrorCode::Infeasible);
        }
        CHECK(built == feasible);
    }
}

TEST_CASE("schedule text round-trips exactly") {
    std::vector<JobClicks> jobs = name_jobs(rats({"80", "70", "500/21", "25/21"}));
    std::vector<Rational> supplies = rats({"100", "50", "25", "0"});
    Schedule schedule = build_schedule(jobs, supplies);
    Schedule back = schedule_from_text(schedule_to_text(schedule));
    CHECK(back == schedule);

    CHECK(schedule_from_text(schedule_to_text(Schedule{})) == Schedule{});
    CHECK(error_code_of([] { schedule_from_text("a\t0\t0"); }) == ErrorCode::BadInstanceFile);
    ErrorCode bad_field = error_code_of([] { schedule_from_text("a\tzero\t0\t1/2"); });
    CHECK((bad_field == ErrorCode::BadInstanceFile || bad_field == ErrorCode::BadRational));
}
