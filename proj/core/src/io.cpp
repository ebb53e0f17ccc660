#include <adsched/io.hpp>

#include <adsched/errors.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace adsched {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void bad_file(const std::string& detail) {
    throw Error(ErrorCode::BadInstanceFile, detail);
}

Rational get_rational(const ordered_json& value, const std::string& context) {
    try {
        if (value.is_string()) return parse_rational(value.get<std::string>());
        if (value.is_number_integer())
            return Rational(static_cast<long>(value.get<std::int64_t>()));
        if (value.is_number_unsigned())
            return Rational(static_cast<unsigned long>(value.get<std::uint64_t>()));
    } catch (const Error& error) {
        bad_file(context + ": " + error.what());
    }
    bad_file(context + ": expected a rational as a string or integer");
}

Bid get_bid(const ordered_json& value, const std::string& context) {
    try {
        if (value.is_string()) return parse_bid(value.get<std::string>());
    } catch (const Error& error) {
        bad_file(context + ": " + error.what());
    }
    return Bid(get_rational(value, context));
}

void check_keys(const ordered_json& object, std::initializer_list<const char*> known,
                const std::string& context, bool ignore_decimals = false) {
    for (const auto& item : object.items()) {
        const std::string& key = item.key();
        if (ignore_decimals && key.size() > 8 && key.ends_with("_decimal")) continue;
        bool ok = false;
        for (const char* name : known)
            if (key == name) ok = true;
        if (!ok) bad_file(context + ": unknown key \"" + key + "\"");
    }
}

ordered_json parse_json(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const ordered_json::parse_error& error) {
        bad_file(std::string("not valid JSON: ") + error.what());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream input(path, std::ios::binary);
    if (!input) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << input.rdbuf();
    if (input.bad()) throw Error(ErrorCode::IoFailure, "cannot read " + path.string());
    return std::move(buffer).str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream output(path, std::ios::binary | std::ios::trunc);
    if (!output) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    output << text;
    output.flush();
    if (!output) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
}

void put_rational(ordered_json& object, const char* key, const Rational& value, int precision) {
    object[key] = to_fraction_string(value);
    object[std::string(key) + "_decimal"] = to_decimal_string(value, precision);
}

} // namespace

std::string instance_to_text(const Instance& instance) {
    ordered_json root;
    root["bidders"] = ordered_json::array();
    for (const Bidder& bidder : instance.bidders) {
        ordered_json entry;
        entry["id"] = bidder.id;
        entry["budget"] = to_fraction_string(bidder.budget);
        entry["max_cpc"] = to_fraction_string(bidder.max_cpc);
        if (bidder.ctr != 1) entry["ctr"] = to_fraction_string(bidder.ctr);
        root["bidders"].push_back(std::move(entry));
    }
    root["slots"] = ordered_json::array();
    for (const SlotSupply& slot : instance.slots)
        root["slots"].push_back(to_fraction_string(slot.clicks));
    return root.dump(2) + "\n";
}

Instance instance_from_text(const std::string& text) try {
    const ordered_json root = parse_json(text);
    if (!root.is_object()) bad_file("top level must be an object");
    check_keys(root, {"bidders", "slots"}, "instance");
    if (!root.contains("bidders") || !root["bidders"].is_array())
        bad_file("\"bidders\" must be an array");
    if (!root.contains("slots") || !root["slots"].is_array())
        bad_file("\"slots\" must be an array");

    Instance instance;
    for (const ordered_json& entry : root["bidders"]) {
        if (!entry.is_object()) bad_file("each bidder must be an object");
        check_keys(entry, {"id", "budget", "max_cpc", "ctr"}, "bidder");
        if (!entry.contains("id") || !entry["id"].is_string())
            bad_file("bidder \"id\" must be a string");
        Bidder bidder;
        bidder.id = entry["id"].get<std::string>();
        if (!entry.contains("budget")) bad_file("bidder " + bidder.id + " lacks \"budget\"");
        bidder.budget = get_rational(entry["budget"], "budget of " + bidder.id);
        if (!entry.contains("max_cpc")) bad_file("bidder " + bidder.id + " lacks \"max_cpc\"");
        bidder.max_cpc = get_bid(entry["max_cpc"], "max_cpc of " + bidder.id);
        if (entry.contains("ctr")) bidder.ctr = get_rational(entry["ctr"], "ctr of " + bidder.id);
        instance.bidders.push_back(std::move(bidder));
    }
    for (const ordered_json& entry : root["slots"])
        instance.slots.push_back(SlotSupply{get_rational(entry, "slot clicks"), false});
    return validate_instance(std::move(instance));
} catch (const nlohmann::json::exception& error) {
    bad_file(error.what());
}

Instance load_instance(const std::filesystem::path& path) {
    return instance_from_text(read_file(path));
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
    write_file(path, instance_to_text(instance));
}

std::string outcome_to_text(const Outcome& outcome, int precision) {
    ordered_json root;
    root["mechanism"] = outcome.mechanism;
    put_rational(root, "revenue", outcome.revenue, precision);

    root["blocks"] = ordered_json::array();
    for (const PriceBlock& block : outcome.blocks) {
        ordered_json entry;
        put_rational(entry, "price", block.price, precision);
        entry["first_slot"] = block.first_slot;
        entry["slot_count"] = block.slot_count;
        if (block.threshold) {
            ordered_json threshold;
            threshold["bidder"] = block.threshold->bidder;
            put_rational(threshold, "reduced_budget", block.threshold->reduced_budget, precision);
            entry["threshold"] = std::move(threshold);
        }
        entry["members"] = ordered_json::array();
        for (const BlockMember& member : block.members) {
            ordered_json row;
            row["bidder"] = member.bidder;
            put_rational(row, "clicks", member.clicks, precision);
            put_rational(row, "spend", member.spend, precision);
            entry["members"].push_back(std::move(row));
        }
        root["blocks"].push_back(std::move(entry));
    }

    root["bidders"] = ordered_json::array();
    for (const BidderOutcome& bidder : outcome.bidders) {
        ordered_json entry;
        entry["id"] = bidder.id;
        if (bidder.dummy) entry["dummy"] = true;
        put_rational(entry, "clicks", bidder.clicks, precision);
        put_rational(entry, "price", bidder.price, precision);
        put_rational(entry, "spend", bidder.spend, precision);
        root["bidders"].push_back(std::move(entry));
    }

    root["schedule"] = ordered_json::array();
    for (const ScheduleEntry& entry : outcome.schedule.entries) {
        ordered_json row;
        row["bidder"] = entry.bidder;
        row["slot"] = entry.slot;
        row["start"] = to_fraction_string(entry.start);
        row["end"] = to_fraction_string(entry.end);
        root["schedule"].push_back(std::move(row));
    }
    return root.dump(2) + "\n";
}

Outcome outcome_from_text(const std::string& text) try {
    const ordered_json root = parse_json(text);
    if (!root.is_object()) bad_file("top level must be an object");
    check_keys(root, {"mechanism", "revenue", "blocks", "bidders", "schedule"}, "outcome",
               true);

    Outcome outcome;
    if (!root.contains("mechanism") || !root["mechanism"].is_string())
        bad_file("\"mechanism\" must be a string");
    outcome.mechanism = root["mechanism"].get<std::string>();
    if (!root.contains("revenue")) bad_file("outcome lacks \"revenue\"");
    outcome.revenue = get_rational(root["revenue"], "revenue");

    if (root.contains("blocks")) {
        for (const ordered_json& entry : root["blocks"]) {
            check_keys(entry, {"price", "first_slot", "slot_count", "threshold", "members"},
                       "block", true);
            PriceBlock block;
            block.price = get_rational(entry.at("price"), "block price");
            block.first_slot = entry.at("first_slot").get<std::size_t>();
            block.slot_count = entry.at("slot_count").get<std::size_t>();
            if (entry.contains("threshold")) {
                const ordered_json& threshold = entry["threshold"];
                check_keys(threshold, {"bidder", "reduced_budget"}, "threshold", true);
                block.threshold =
                    ThresholdInfo{threshold.at("bidder").get<std::string>(),
                                  get_rational(threshold.at("reduced_budget"), "reduced_budget")};
            }
            if (entry.contains("members")) {
                for (const ordered_json& row : entry["members"]) {
                    check_keys(row, {"bidder", "clicks", "spend"}, "member", true);
                    block.members.push_back(
                        BlockMember{row.at("bidder").get<std::string>(),
                                    get_rational(row.at("clicks"), "member clicks"),
                                    get_rational(row.at("spend"), "member spend")});
                }
            }
            outcome.blocks.push_back(std::move(block));
        }
    }

    if (root.contains("bidders")) {
        for (const ordered_json& entry : root["bidders"]) {
            check_keys(entry, {"id", "dummy", "clicks", "price", "spend"}, "bidder", true);
            BidderOutcome bidder;
            bidder.id = entry.at("id").get<std::string>();
            bidder.dummy = entry.contains("dummy") && entry["dummy"].get<bool>();
            bidder.clicks = get_rational(entry.at("clicks"), "bidder clicks");
            bidder.price = get_rational(entry.at("price"), "bidder price");
            bidder.spend = get_rational(entry.at("spend"), "bidder spend");
            outcome.bidders.push_back(std::move(bidder));
        }
    }

    if (root.contains("schedule")) {
        for (const ordered_json& row : root["schedule"]) {
            check_keys(row, {"bidder", "slot", "start", "end"}, "schedule entry", true);
            outcome.schedule.entries.push_back(
                ScheduleEntry{row.at("bidder").get<std::string>(),
                              row.at("slot").get<std::size_t>(),
                              get_rational(row.at("start"), "entry start"),
                              get_rational(row.at("end"), "entry end")});
        }
    }
    return outcome;
} catch (const nlohmann::json::exception& error) {
    bad_file(error.what());
}

void save_outcome(const Outcome& outcome, const std::filesystem::path& path, int precision) {
    write_file(path, outcome_to_text(outcome, precision));
}

Outcome load_outcome(const std::filesystem::path& path) {
    return outcome_from_text(read_file(path));
}

void save_schedule(const Schedule& schedule, const std::filesystem::path& path) {
    write_file(path, schedule_to_text(schedule));
}

Schedule load_schedule(const std::filesystem::path& path) {
    return schedule_from_text(read_file(path));
}

} // namespace adsched
