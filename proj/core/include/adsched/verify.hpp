#pragma once

#include <adsched/generator.hpp>
#include <adsched/model.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace adsched {

enum class Suite {
    monotonicity,
    greedy_optimal,
    nash,
    schedule_audit,
    all,
};

std::optional<Suite> suite_from_name(std::string_view name);
std::string_view suite_name(Suite suite);

/// One seeded check: `worst` is the check-specific worst-case value
/// (largest gain, discrepancy, violation count). Failing rows carry a
/// self-contained replay document (JSON text) that reproduces the failure.
struct CheckRow {
    std::string instance_id;
    std::string check;
    bool pass = true;
    std::string worst;
    std::optional<std::string> replay;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckRow> rows;
    std::size_t failures = 0;
};

/// Runs `count` seeded random checks of one suite (or every suite for
/// Suite::all). Deterministic in (suite, seed, count).
SuiteReport run_suite(Suite suite, std::uint64_t seed, std::size_t count);

/// Re-runs the check captured in a replay document emitted by a failing
/// row. Returns the re-evaluated row.
CheckRow run_replay(const std::string& replay_text);

} // namespace adsched
