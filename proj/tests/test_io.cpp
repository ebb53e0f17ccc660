#include "test_support.hpp"

#include <adsched/errors.hpp>
#include <adsched/io.hpp>
#include <adsched/mechanisms.hpp>

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <string>

using namespace adsched;
using adsched::tests::bidder;
using adsched::tests::error_code_of;
using adsched::tests::fixture;
using adsched::tests::make_instance;
using adsched::tests::rat;

namespace {

/// Self-cleaning scratch directory for save/load round-trips.
struct ScratchDir {
    std::filesystem::path path;
    ScratchDir() {
        path = std::filesystem::temp_directory_path() / "adsched-io-tests";
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~ScratchDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_CASE("instance text round-trips every fixture bit-identically") {
    for (const char* name : {"ex1.inst", "ex2.inst", "ex3.inst", "fig1.inst", "fig2.inst"}) {
        CAPTURE(name);
        Instance instance = load_instance(fixture(name));
        std::string text = instance_to_text(instance);
        CHECK(instance_to_text(instance_from_text(text)) == text);
    }
}

TEST_CASE("instance parser accepts integers, decimals and fraction strings") {
    Instance instance = instance_from_text(R"({
        "bidders": [
            {"id": "a", "budget": 100, "max_cpc": "2"},
            {"id": "b", "budget": "36.25", "max_cpc": "inf", "ctr": "1/2"}
        ],
        "slots": [300, "0.5"]
    })");
    CHECK(instance.bidders[0].budget == rat("100"));
    CHECK(instance.bidders[1].budget == rat("145/4"));
    CHECK(instance.bidders[1].max_cpc.is_infinite());
    CHECK(instance.bidders[1].ctr == rat("1/2"));
    CHECK(instance.bidders[0].ctr == 1);
    CHECK(instance.slots[0].clicks == rat("300"));
    CHECK(instance.slots[1].clicks == rat("1/2"));
}

TEST_CASE("unit ctrs are omitted from instance text") {
    Instance instance = make_instance({bidder("a", "10", "1")}, {"30"});
    std::string text = instance_to_text(instance);
    CHECK(text.find("ctr") == std::string::npos);

    instance.bidders[0].ctr = rat("1/2");
    CHECK(instance_to_text(instance).find("\"ctr\": \"1/2\"") != std::string::npos);
}

TEST_CASE("instance parser rejects malformed documents with BadInstanceFile") {
    auto rejects = [](const char* text) {
        CAPTURE(text);
        CHECK(error_code_of([&] { instance_from_text(text); }) == ErrorCode::BadInstanceFile);
    };
    rejects("not json at all");
    rejects(R"({"slots": ["10"]})");                                        // missing bidders
    rejects(R"({"bidders": [{"id": "a", "budget": "1"}], "slots": []})");   // missing max_cpc
    rejects(R"({"bidders": [{"id": "a", "budget": 1.5, "max_cpc": "1"}], "slots": []})");
    rejects(R"({"bidders": [{"id": "a", "budget": "1", "max_cpc": "1", "x": 1}], "slots": []})");
    rejects(R"({"bidders": "nope", "slots": []})");
    rejects(R"({"bidders": [{"id": 7, "budget": "1", "max_cpc": "1"}], "slots": []})");
}

TEST_CASE("instance validation failures keep their own codes") {
    CHECK(error_code_of([] {
              instance_from_text(
                  R"({"bidders": [{"id": "a", "budget": "-1", "max_cpc": "1"}], "slots": []})");
          }) == ErrorCode::NegativeBudget);
    CHECK(error_code_of([] {
              instance_from_text(R"({"bidders": [
                  {"id": "a", "budget": "1", "max_cpc": "1"},
                  {"id": "a", "budget": "2", "max_cpc": "1"}], "slots": ["10"]})");
          }) == ErrorCode::DuplicateBidderId);
}

TEST_CASE("outcome text round-trips allocation, schedule and dummy flags") {
    // two bidders, three slots: padding introduces a flagged dummy bidder
    Instance instance =
        make_instance({bidder("a", "40", "2"), bidder("b", "10", "1")}, {"30", "20", "10"});
    Outcome outcome = ps_general(instance);
    Outcome back = outcome_from_text(outcome_to_text(outcome));

    CHECK(back.mechanism == outcome.mechanism);
    CHECK(same_allocation(back, outcome));
    CHECK(back.schedule == outcome.schedule);

    bool saw_dummy = false;
    for (const BidderOutcome& result : back.bidders) saw_dummy = saw_dummy || result.dummy;
    CHECK(saw_dummy);
}

TEST_CASE("outcome text round-trips thresholds") {
    Outcome outcome = ps_general(load_instance(fixture("fig2.inst")));
    Outcome back = outcome_from_text(outcome_to_text(outcome));
    REQUIRE(back.blocks.size() == 3);
    REQUIRE(back.blocks[1].threshold.has_value());
    CHECK(back.blocks[1].threshold->bidder == "bidder2");
    CHECK(back.blocks[1].threshold->reduced_budget == rat("145/4"));
    CHECK(back.revenue == rat("545/4"));
}

TEST_CASE("decimal fields are display-only and ignored on input") {
    Outcome outcome = ps_general(load_instance(fixture("ex3.inst")));
    nlohmann::ordered_json doc = nlohmann::ordered_json::parse(outcome_to_text(outcome));
    REQUIRE(doc.contains("revenue_decimal"));
    doc["revenue_decimal"] = "999999";
    Outcome back = outcome_from_text(doc.dump());
    CHECK(back.revenue == outcome.revenue);
}

TEST_CASE("outcome parser rejects unknown keys") {
    Outcome outcome = ps_general(load_instance(fixture("ex2.inst")));
    nlohmann::ordered_json doc = nlohmann::ordered_json::parse(outcome_to_text(outcome));
    doc["surprise"] = 1;
    CHECK(error_code_of([&] { outcome_from_text(doc.dump()); }) == ErrorCode::BadInstanceFile);
}

TEST_CASE("save and load round-trip through the filesystem") {
    ScratchDir scratch;
    Instance instance = load_instance(fixture("fig1.inst"));

    save_instance(instance, scratch.path / "copy.inst");
    CHECK(instance_to_text(load_instance(scratch.path / "copy.inst")) ==
          instance_to_text(instance));

    Outcome outcome = ps_budgets_only(instance);
    save_outcome(outcome, scratch.path / "out.json");
    CHECK(same_allocation(load_outcome(scratch.path / "out.json"), outcome));

    save_schedule(outcome.schedule, scratch.path / "sched.tsv");
    CHECK(load_schedule(scratch.path / "sched.tsv") == outcome.schedule);
}

TEST_CASE("filesystem failures map to IoFailure") {
    ScratchDir scratch;
    CHECK(error_code_of([&] { load_instance(scratch.path / "absent.inst"); }) ==
          ErrorCode::IoFailure);
    Instance instance = make_instance({bidder("a", "1", "1")}, {"10"});
    CHECK(error_code_of([&] {
              save_instance(instance, scratch.path / "no-such-dir" / "x.inst");
          }) == ErrorCode::IoFailure);
}
