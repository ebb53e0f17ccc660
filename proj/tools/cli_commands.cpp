#include "cli_commands.hpp"

#include <adsched/analysis.hpp>
#include <adsched/errors.hpp>
#include <adsched/generator.hpp>
#include <adsched/io.hpp>
#include <adsched/verify.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace adsched::cli {

namespace {

template <typename Body>
int guarded(Body&& body) {
    try {
        return body();
    } catch (const Error& error) {
        std::cerr << "error: " << error.what() << "\n";
        return error.code() == ErrorCode::IoFailure ? exit_io : exit_domain;
    } catch (const std::exception& error) {
        std::cerr << "internal error: " << error.what() << "\n";
        return exit_io;
    }
}

std::string with_suffix(const std::string& input, const char* suffix) {
    std::filesystem::path path(input);
    path.replace_extension();
    return path.string() + suffix;
}

void pad_to(std::string& text, std::size_t width) {
    if (text.size() < width) text.append(width - text.size(), ' ');
}

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        if (widths.size() < row.size()) widths.resize(row.size(), 0);
        for (std::size_t i = 0; i < row.size(); ++i)
            widths[i] = std::max(widths[i], row[i].size());
    }
    for (const auto& row : rows) {
        std::string line = "  ";
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::string cell = row[i];
            if (i + 1 < row.size()) pad_to(cell, widths[i] + 2);
            line += cell;
        }
        out << line << "\n";
    }
}

} // namespace

int default_precision() {
    const char* raw = std::getenv("ADSCHED_PRECISION");
    if (raw == nullptr) return 6;
    char* end = nullptr;
    long value = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || value < 1 || value > 64) return 6;
    return static_cast<int>(value);
}

int cmd_run(const RunConfig& config) {
    return guarded([&] {
        Instance instance = load_instance(config.input);

        if (config.lex_seed) {
            // Deterministic tie-break shuffle: reorders the bidder list, and
            // positions in that list are the lex ranks.
            std::mt19937_64 rng(*config.lex_seed);
            for (std::size_t i = instance.bidders.size(); i > 1; --i)
                std::swap(instance.bidders[i - 1], instance.bidders[rng() % i]);
        }

        bool weighted = false;
        for (const Bidder& bidder : instance.bidders)
            if (bidder.ctr != 1) weighted = true;
        CtrScaling scaling;
        const Instance* input = &instance;
        if (weighted) {
            scaling = scale_by_ctr(instance);
            input = &scaling.scaled;
        }

        Outcome outcome;
        if (config.mechanism == "ps")
            outcome = ps_general(*input);
        else if (config.mechanism == "ps-single")
            outcome = ps_single_slot(*input);
        else if (config.mechanism == "budgets-only")
            outcome = ps_budgets_only(*input);
        else if (config.mechanism == "gfp")
            outcome = gfp(*input);
        else
            throw Error(ErrorCode::UnsortedInput,
                        "unknown mechanism \"" + config.mechanism +
                            "\" (expected ps, ps-single, budgets-only or gfp)");

        const int digits = config.precision;
        std::cout << "mechanism: " << outcome.mechanism << "\n";
        if (!outcome.blocks.empty()) {
            std::cout << "blocks:\n";
            std::size_t number = 1;
            for (const PriceBlock& block : outcome.blocks) {
                std::ostringstream line;
                line << "block " << number++ << ": price "
                     << to_display_string(block.price, digits) << ", slots ["
                     << block.first_slot << ", " << block.first_slot + block.slot_count
                     << "), members";
                for (const BlockMember& member : block.members) line << " " << member.bidder;
                if (block.threshold)
                    line << ", threshold " << block.threshold->bidder << " -> "
                         << to_display_string(block.threshold->reduced_budget, digits);
                std::cout << "  " << line.str() << "\n";
            }
        }

        std::cout << "bidders:\n";
        std::vector<std::vector<std::string>> rows;
        rows.push_back(weighted
                           ? std::vector<std::string>{"id", "weighted clicks", "clicks",
                                                      "price", "spend"}
                           : std::vector<std::string>{"id", "clicks", "price", "spend"});
        for (const BidderOutcome& bidder : outcome.bidders) {
            std::string name = bidder.id;
            if (bidder.dummy) name += " (dummy)";
            if (weighted) {
                Rational gamma(1);
                auto found = scaling.gamma.find(bidder.id);
                if (found != scaling.gamma.end()) gamma = found->second;
                const Rational real_clicks = bidder.clicks * gamma;
                const Rational real_price = bidder.price / gamma;
                rows.push_back({name, to_display_string(bidder.clicks, digits),
                                to_display_string(real_clicks, digits),
                                to_display_string(real_price, digits),
                                to_display_string(bidder.spend, digits)});
            } else {
                rows.push_back({name, to_display_string(bidder.clicks, digits),
                                to_display_string(bidder.price, digits),
                                to_display_string(bidder.spend, digits)});
            }
        }
        print_table(std::cout, rows);
        std::cout << "revenue: " << to_display_string(outcome.revenue, digits) << "\n";
        if (weighted)
            std::cout << "note: mechanism ran on ctr-weighted declarations; the outcome file"
                         " keeps weighted clicks and prices\n";

        const std::string outcome_path = config.outcome_path.empty()
                                             ? with_suffix(config.input, ".out.json")
                                             : config.outcome_path;
        const std::string schedule_path = config.schedule_path.empty()
                                              ? with_suffix(config.input, ".sched.tsv")
                                              : config.schedule_path;
        save_outcome(outcome, outcome_path, digits);
        save_schedule(outcome.schedule, schedule_path);
        std::cout << "outcome -> " << outcome_path << "\n";
        std::cout << "schedule -> " << schedule_path << "\n";
        return exit_ok;
    });
}

int cmd_verify(const VerifyConfig& config) {
    return guarded([&] {
        if (!config.replay.empty()) {
            std::ifstream input(config.replay, std::ios::binary);
            if (!input) throw Error(ErrorCode::IoFailure, "cannot open " + config.replay);
            std::ostringstream buffer;
            buffer << input.rdbuf();
            CheckRow row = run_replay(std::move(buffer).str());
            std::cout << row.instance_id << "\t" << row.check << "\t"
                      << (row.pass ? "pass" : "FAIL") << "\t" << row.worst << "\n";
            return row.pass ? exit_ok : exit_domain;
        }

        const std::optional<Suite> suite = suite_from_name(config.suite);
        if (!suite)
            throw Error(ErrorCode::UnsortedInput,
                        "unknown suite \"" + config.suite +
                            "\" (expected monotonicity, greedy-optimal, nash,"
                            " schedule-audit or all)");

        const SuiteReport report = run_suite(*suite, config.seed, config.count);
        std::cout << "instance\tcheck\tresult\tworst\n";
        for (const CheckRow& row : report.rows)
            std::cout << row.instance_id << "\t" << row.check << "\t"
                      << (row.pass ? "pass" : "FAIL") << "\t" << row.worst << "\n";

        for (const CheckRow& row : report.rows) {
            if (!row.replay) continue;
            std::filesystem::path dir(config.replay_dir.empty() ? "." : config.replay_dir);
            std::filesystem::create_directories(dir);
            std::filesystem::path path =
                dir / ("replay-" + row.instance_id + "-" + row.check + ".json");
            std::ofstream output(path, std::ios::binary | std::ios::trunc);
            if (!output) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
            output << *row.replay << "\n";
            std::cout << "replay -> " << path.string() << "\n";
        }
        std::cout << report.rows.size() << " checks, " << report.failures << " failures\n";
        return report.failures == 0 ? exit_ok : exit_domain;
    });
}

int cmd_gen(const GenConfig& config) {
    return guarded([&] {
        ::adsched::GenConfig core;
        core.seed = config.seed;
        core.bidders = config.bidders;
        core.slots = config.slots;
        core.zero_slots = config.zero_slots;
        if (config.bid_mode == "finite")
            core.bid_mode = ::adsched::GenConfig::BidMode::finite;
        else if (config.bid_mode == "infinite")
            core.bid_mode = ::adsched::GenConfig::BidMode::infinite;
        else if (config.bid_mode == "mixed")
            core.bid_mode = ::adsched::GenConfig::BidMode::mixed;
        else
            throw Error(ErrorCode::UnsortedInput,
                        "unknown bid mode \"" + config.bid_mode +
                            "\" (expected finite, infinite or mixed)");
        core.random_ctr = config.random_ctr;
        core.max_budget = config.max_budget;
        core.max_bid = config.max_bid;
        core.max_supply = config.max_supply;
        core.id_prefix = config.id_prefix;

        const Instance instance = generate_instance(core);
        if (config.output.empty())
            std::cout << instance_to_text(instance);
        else
            save_instance(instance, config.output);
        return exit_ok;
    });
}

} // namespace adsched::cli
