#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace adsched::cli {

/// Exit codes shared by every subcommand: 0 success (or all checks passing),
/// 1 domain failure (validation, infeasibility, failing checks), 2 I/O
/// failure (unreadable input, unwritable output).
inline constexpr int exit_ok = 0;
inline constexpr int exit_domain = 1;
inline constexpr int exit_io = 2;

struct RunConfig {
    std::string mechanism = "ps";  // ps | ps-single | budgets-only | gfp
    std::string input;
    std::string outcome_path;      // default: input stem + ".out.json"
    std::string schedule_path;     // default: input stem + ".sched.tsv"
    std::optional<std::uint64_t> lex_seed;  // shuffle tie-break order
    int precision = 6;
};
int cmd_run(const RunConfig& config);

struct VerifyConfig {
    std::string suite = "all";
    std::uint64_t seed = 1;
    std::size_t count = 20;
    std::string replay;       // replay document path; overrides suite mode
    std::string replay_dir;   // where failing rows drop replay docs
};
int cmd_verify(const VerifyConfig& config);

struct GenConfig {
    std::uint64_t seed = 0;
    std::size_t bidders = 4;
    std::size_t slots = 0;
    std::size_t zero_slots = 0;
    std::string bid_mode = "finite";  // finite | infinite | mixed
    bool random_ctr = false;
    long max_budget = 100;
    long max_bid = 5;
    long max_supply = 100;
    std::string id_prefix = "b";
    std::string output;  // empty: stdout
};
int cmd_gen(const GenConfig& config);

/// Reads ADSCHED_PRECISION (decimal digit count for display strings),
/// falling back to 6 when unset or unusable.
int default_precision();

} // namespace adsched::cli
