#include "cli_commands.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv) {
    CLI::App app{"Exact mechanisms and schedules for offline ad slot allocation"};
    app.require_subcommand(1);

    adsched::cli::RunConfig run_config;
    run_config.precision = adsched::cli::default_precision();
    CLI::App* run = app.add_subcommand("run", "Run a mechanism on an instance file");
    run->add_option("input", run_config.input, "Instance file (JSON)")->required();
    run->add_option("-m,--mechanism", run_config.mechanism,
                    "Mechanism: ps, ps-single, budgets-only or gfp")
        ->capture_default_str();
    run->add_option("--outcome", run_config.outcome_path,
                    "Outcome path (default: input stem + .out.json)");
    run->add_option("--schedule", run_config.schedule_path,
                    "Schedule path (default: input stem + .sched.tsv)");
    std::uint64_t lex_seed = 0;
    CLI::Option* lex_option =
        run->add_option("--lex-seed", lex_seed, "Shuffle the bid tie-break order");
    run->add_option("--precision", run_config.precision,
                    "Decimal digits in displayed values (env ADSCHED_PRECISION)")
        ->capture_default_str();

    adsched::cli::VerifyConfig verify_config;
    CLI::App* verify = app.add_subcommand("verify", "Run seeded property checks");
    verify->add_option("-s,--suite", verify_config.suite,
                       "monotonicity, greedy-optimal, nash, schedule-audit or all")
        ->capture_default_str();
    verify->add_option("--seed", verify_config.seed, "Base seed")->capture_default_str();
    verify->add_option("-n,--count", verify_config.count, "Checks per suite")
        ->capture_default_str();
    verify->add_option("--replay", verify_config.replay,
                       "Re-run one failing check from its replay document");
    verify->add_option("--replay-dir", verify_config.replay_dir,
                       "Directory for replay documents of failing checks");

    adsched::cli::GenConfig gen_config;
    CLI::App* gen = app.add_subcommand("gen", "Generate a seeded random instance");
    gen->add_option("--seed", gen_config.seed, "Seed")->capture_default_str();
    gen->add_option("-n,--bidders", gen_config.bidders, "Bidder count")->capture_default_str();
    gen->add_option("--slots", gen_config.slots, "Slot count (0: one per bidder)")
        ->capture_default_str();
    gen->add_option("--zero-slots", gen_config.zero_slots, "Trailing zero-supply slots")
        ->capture_default_str();
    gen->add_option("--bid-mode", gen_config.bid_mode, "finite, infinite or mixed")
        ->capture_default_str();
    gen->add_flag("--random-ctr", gen_config.random_ctr, "Draw ctrs from {1/2, 1, 2}");
    gen->add_option("--max-budget", gen_config.max_budget, "Budget range upper bound")
        ->capture_default_str();
    gen->add_option("--max-bid", gen_config.max_bid, "Bid range upper bound")
        ->capture_default_str();
    gen->add_option("--max-supply", gen_config.max_supply, "Supply range upper bound")
        ->capture_default_str();
    gen->add_option("--prefix", gen_config.id_prefix, "Bidder id prefix")
        ->capture_default_str();
    gen->add_option("-o,--output", gen_config.output, "Output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        if (lex_option->count() > 0) run_config.lex_seed = lex_seed;
        return adsched::cli::cmd_run(run_config);
    }
    if (verify->parsed()) return adsched::cli::cmd_verify(verify_config);
    if (gen->parsed()) return adsched::cli::cmd_gen(gen_config);
    return adsched::cli::exit_domain;
}
