#include "test_support.hpp"

#include <adsched/errors.hpp>
#include <adsched/io.hpp>
#include <adsched/verify.hpp>

#include <doctest.h>
#include <json.hpp>

#include <string>

using namespace adsched;
using adsched::tests::bidder;
using adsched::tests::error_code_of;
using adsched::tests::fixture;
using adsched::tests::make_instance;

TEST_CASE("suite names round-trip") {
    for (Suite suite : {Suite::monotonicity, Suite::greedy_optimal, Suite::nash,
                        Suite::schedule_audit, Suite::all}) {
        CHECK(suite_from_name(suite_name(suite)) == suite);
    }
    CHECK_FALSE(suite_from_name("bogus").has_value());
}

TEST_CASE("run_suite is deterministic in (suite, seed, count)") {
    SuiteReport first = run_suite(Suite::monotonicity, 5, 3);
    SuiteReport second = run_suite(Suite::monotonicity, 5, 3);
    REQUIRE(first.rows.size() == second.rows.size());
    for (std::size_t i = 0; i < first.rows.size(); ++i) {
        CHECK(first.rows[i].instance_id == second.rows[i].instance_id);
        CHECK(first.rows[i].pass == second.rows[i].pass);
        CHECK(first.rows[i].worst == second.rows[i].worst);
    }
}

TEST_CASE("the combined suite runs every check family") {
    SuiteReport report = run_suite(Suite::all, 11, 2);
    CHECK(report.suite == "all");
    CHECK(report.rows.size() == 8);
    CHECK(report.failures == 0);
    bool seen[4] = {false, false, false, false};
    for (const CheckRow& row : report.rows) {
        if (row.check == "monotonicity") seen[0] = true;
        if (row.check == "greedy-optimal") seen[1] = true;
        if (row.check == "nash") seen[2] = true;
        if (row.check == "schedule-audit") seen[3] = true;
        CHECK(row.pass);
        CHECK_FALSE(row.replay.has_value());
    }
    for (bool family : seen) CHECK(family);
}

TEST_CASE("replay documents rerun the captured check") {
    Instance instance = make_instance({bidder("a", "100", "2"), bidder("b", "50", "1")}, {"120"});

    nlohmann::ordered_json sweep;
    sweep["check"] = "monotonicity";
    sweep["instance"] = nlohmann::ordered_json::parse(instance_to_text(instance));
    sweep["bidder"] = "a";
    sweep["param"] = "bid";
    sweep["grid"] = {"1/2", "1", "2"};
    CheckRow row = run_replay(sweep.dump());
    CHECK(row.instance_id == "replay");
    CHECK(row.check == "monotonicity");
    CHECK(row.pass);

    nlohmann::ordered_json greedy;
    greedy["check"] = "greedy-optimal";
    greedy["instance"] = nlohmann::ordered_json::parse(instance_to_text(instance));
    CHECK(run_replay(greedy.dump()).pass);

    nlohmann::ordered_json nash;
    nash["check"] = "nash";
    nash["instance"] = nlohmann::ordered_json::parse(instance_to_text(instance));
    nash["eps_prime"] = "1/100";
    CheckRow nash_row = run_replay(nash.dump());
    CHECK(nash_row.check == "nash");

    nlohmann::ordered_json audit;
    audit["check"] = "schedule-audit";
    audit["clicks"] = {"10", "5"};
    audit["supplies"] = {"20", "10"};
    CHECK(run_replay(audit.dump()).pass);
}

TEST_CASE("malformed replay documents are rejected") {
    CHECK(error_code_of([] { run_replay("not json"); }) == ErrorCode::BadInstanceFile);
    CHECK(error_code_of([] { run_replay(R"({"check": "unknown"})"); }) ==
          ErrorCode::BadInstanceFile);
    CHECK(error_code_of([] { run_replay(R"({"instance": {}})"); }) == ErrorCode::BadInstanceFile);
}
