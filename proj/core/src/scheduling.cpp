#include <adsched/scheduling.hpp>

#include <adsched/errors.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <utility>

namespace adsched {

bool operator==(const ScheduleEntry& a, const ScheduleEntry& b) {
    return a.bidder == b.bidder && a.slot == b.slot && a.start == b.start && a.end == b.end;
}

bool operator==(const Schedule& a, const Schedule& b) {
    return a.entries == b.entries;
}

namespace {

void check_supply_shape(std::span<const Rational> supplies) {
    bool saw_zero = false;
    const Rational* previous = nullptr;
    for (const Rational& d : supplies) {
        if (d < 0) throw Error(ErrorCode::UnsortedInput, "negative slot supply");
        if (d == 0) {
            saw_zero = true;
            continue;
        }
        if (saw_zero)
            throw Error(ErrorCode::UnsortedInput, "positive supply after a zero-supply slot");
        if (previous && !(*previous > d))
            throw Error(ErrorCode::UnsortedInput, "positive supplies must strictly decrease");
        previous = &d;
    }
}

void check_clicks_sorted(std::span<const Rational> clicks) {
    for (std::size_t i = 0; i < clicks.size(); ++i) {
        if (clicks[i] < 0) throw Error(ErrorCode::UnsortedInput, "negative click total");
        if (i + 1 < clicks.size() && clicks[i] < clicks[i + 1])
            throw Error(ErrorCode::UnsortedInput, "click totals must be nonincreasing");
    }
}

Rational supply_at(std::span<const Rational> supplies, std::size_t i) {
    return i < supplies.size() ? supplies[i] : Rational(0);
}

struct Machine {
    std::size_t slot;  // global index
    Rational speed;    // > 0
};

// Event-driven simulation of the level scheme: the most-loaded jobs run on
// the fastest machines, jobs tied at one level share their machine pool by
// rotating through it. Returns the completion time; entries are appended.
Rational simulate_level_schedule(std::span<const JobClicks> jobs,
                                 std::span<const Machine> machines,
                                 std::vector<ScheduleEntry>& out) {
    struct Group {
        Rational level;
        std::vector<std::size_t> jobs;  // indices into `jobs`
    };

    std::vector<Group> groups;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (!groups.empty() && groups.back().level == jobs[i].clicks)
            groups.back().jobs.push_back(i);
        else
            groups.push_back(Group{jobs[i].clicks, {i}});
    }

    Rational now(0);
    while (!groups.empty()) {
        struct Pool {
            std::size_t first = 0, count = 0;
            Rational rate;  // per-job speed share
        };
        std::vector<Pool> pools(groups.size());
        std::size_t used = 0;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            Pool& pool = pools[g];
            pool.first = used;
            pool.count = std::min(groups[g].jobs.size(), machines.size() - used);
            used += pool.count;
            Rational sum(0);
            for (std::size_t m = pool.first; m < pool.first + pool.count; ++m)
                sum += machines[m].speed;
            pool.rate = sum / Rational(static_cast<long>(groups[g].jobs.size()));
        }

        std::optional<Rational> step;
        auto propose = [&step](const Rational& candidate) {
            if (!step || candidate < *step) step = candidate;
        };
        for (std::size_t g = 0; g < groups.size(); ++g) {
            if (pools[g].rate > 0) propose(groups[g].level / pools[g].rate);
            if (g + 1 < groups.size() && pools[g].rate > pools[g + 1].rate)
                propose((groups[g].level - groups[g + 1].level) / (pools[g].rate - pools[g + 1].rate));
        }
        if (!step)
            throw Error(ErrorCode::Infeasible, "remaining click totals exceed the slot capacity");
        const Rational delta = *step;

        for (std::size_t g = 0; g < groups.size(); ++g) {
            const auto& members = groups[g].jobs;
            const Pool& pool = pools[g];
            if (pool.count == 0) continue;
            const std::size_t size = members.size();
            if (size == 1) {
                out.push_back(ScheduleEntry{jobs[members[0]].bidder, machines[pool.first].slot,
                                            now, now + delta});
                continue;
            }
            // Rotate the tied jobs through the pool (idle when the virtual
            // machine index falls past the real pool).
            const Rational sub = delta / Rational(static_cast<long>(size));
            for (std::size_t s = 0; s < size; ++s) {
                const Rational begin = now + sub * Rational(static_cast<long>(s));
                const Rational finish = now + sub * Rational(static_cast<long>(s + 1));
                for (std::size_t r = 0; r < size; ++r) {
                    const std::size_t v = (r + s) % size;
                    if (v < pool.count)
                        out.push_back(ScheduleEntry{jobs[members[r]].bidder,
                                                    machines[pool.first + v].slot, begin, finish});
                }
            }
        }

        now += delta;
        std::vector<Group> next;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            Rational level = groups[g].level - delta * pools[g].rate;
            if (level == 0) continue;
            if (!next.empty() && next.back().level == level) {
                auto& back = next.back().jobs;
                back.insert(back.end(), groups[g].jobs.begin(), groups[g].jobs.end());
            } else {
                next.push_back(Group{std::move(level), std::move(groups[g].jobs)});
            }
        }
        groups = std::move(next);
    }
    return now;
}

void merge_adjacent(std::vector<ScheduleEntry>& entries) {
    std::sort(entries.begin(), entries.end(), [](const ScheduleEntry& a, const ScheduleEntry& b) {
        if (a.slot != b.slot) return a.slot < b.slot;
        if (int c = cmp(a.start, b.start); c != 0) return c < 0;
        return a.bidder < b.bidder;
    });
    std::vector<ScheduleEntry> merged;
    for (ScheduleEntry& entry : entries) {
        if (!merged.empty() && merged.back().slot == entry.slot &&
            merged.back().bidder == entry.bidder && merged.back().end == entry.start)
            merged.back().end = entry.end;
        else
            merged.push_back(std::move(entry));
    }
    entries = std::move(merged);
}

} // namespace

bool is_feasible(std::span<const Rational> clicks, std::span<const Rational> supplies) {
    check_clicks_sorted(clicks);
    check_supply_shape(supplies);
    Rational click_sum(0), supply_sum(0);
    for (std::size_t i = 0; i < clicks.size(); ++i) {
        click_sum += clicks[i];
        supply_sum += supply_at(supplies, i);
        if (click_sum > supply_sum) return false;
    }
    return true;
}

Rational makespan(std::span<const Rational> clicks, std::span<const Rational> supplies) {
    check_clicks_sorted(clicks);
    check_supply_shape(supplies);
    const bool no_supply = supplies.empty() || supplies.front() == 0;
    Rational best(0), click_sum(0), supply_sum(0);
    for (std::size_t i = 0; i < clicks.size(); ++i) {
        click_sum += clicks[i];
        supply_sum += supply_at(supplies, i);
        if (supply_sum == 0) {
            if (click_sum > 0 && no_supply)
                throw Error(ErrorCode::AllZeroSupply,
                            "positive click totals with no positive supply");
            continue;
        }
        Rational ratio = click_sum / supply_sum;
        if (ratio > best) best = ratio;
    }
    return best;
}

Schedule build_schedule(std::span<const JobClicks> jobs,
                        std::span<const Rational> supplies,
                        std::size_t slot_offset) {
    std::vector<Rational> clicks;
    clicks.reserve(jobs.size());
    for (const JobClicks& job : jobs) clicks.push_back(job.clicks);
    check_clicks_sorted(clicks);
    check_supply_shape(supplies);

    Schedule schedule;
    // Cut at click-tight prefixes: each side must be scheduled on its own
    // slots, so the segments are independent subproblems on [0, 1).
    Rational click_sum(0), supply_sum(0);
    std::size_t segment_start = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        click_sum += clicks[i];
        supply_sum += supply_at(supplies, i);
        const bool tight = click_sum == supply_sum;
        if (!tight && i + 1 < jobs.size()) continue;

        std::vector<JobClicks> segment_jobs;
        for (std::size_t j = segment_start; j <= i; ++j)
            if (jobs[j].clicks > 0) segment_jobs.push_back(jobs[j]);
        std::vector<Machine> machines;
        for (std::size_t j = segment_start; j <= i && j < supplies.size(); ++j)
            if (supplies[j] > 0) machines.push_back(Machine{slot_offset + j, supplies[j]});

        if (!segment_jobs.empty()) {
            Rational finish = simulate_level_schedule(segment_jobs, machines, schedule.entries);
            if (finish > 1)
                throw Error(ErrorCode::Infeasible,
                            "click totals need " + to_fraction_string(finish) +
                                " of the unit interval");
        }
        segment_start = i + 1;
        click_sum = 0;
        supply_sum = 0;
    }

    merge_adjacent(schedule.entries);
    return schedule;
}

Rational max_additional_clicks(std::span<const Rational> committed,
                               std::span<const Rational> supplies,
                               const Rational* cap) {
    check_supply_shape(supplies);
    std::vector<Rational> sorted(committed.begin(), committed.end());
    std::sort(sorted.begin(), sorted.end(), [](const Rational& a, const Rational& b) { return a > b; });

    std::optional<Rational> bound;
    Rational top_sum(0), supply_prefix(0);
    for (std::size_t m = 1; m <= sorted.size() + 1; ++m) {
        supply_prefix += supply_at(supplies, m - 1);
        Rational room = supply_prefix - top_sum;  // m-1 largest committed so far
        if (!bound || room < *bound) bound = room;
        if (m <= sorted.size()) top_sum += sorted[m - 1];
    }
    Rational result = *bound;
    if (result < 0) result = 0;
    if (cap && *cap < result) result = *cap;
    return result;
}

void audit_schedule(const Schedule& schedule,
                    const std::unordered_map<std::string, Rational>& expected,
                    std::span<const Rational> supplies) {
    auto fail = [](const std::string& why) {
        throw Error(ErrorCode::ScheduleAuditFailed, why);
    };

    std::map<std::size_t, std::vector<std::pair<Rational, Rational>>> by_slot;
    std::map<std::string, std::vector<std::pair<Rational, Rational>>> by_bidder;
    std::unordered_map<std::string, Rational> totals;

    for (const ScheduleEntry& entry : schedule.entries) {
        if (entry.slot >= supplies.size())
            fail("entry references slot " + std::to_string(entry.slot) + " past the supply list");
        if (!expected.contains(entry.bidder))
            fail("entry references unknown bidder \"" + entry.bidder + "\"");
        if (entry.start < 0 || entry.end > 1 || !(entry.start < entry.end))
            fail("entry for \"" + entry.bidder + "\" has interval [" +
                 to_fraction_string(entry.start) + ", " + to_fraction_string(entry.end) +
                 ") outside [0, 1) or empty");
        by_slot[entry.slot].emplace_back(entry.start, entry.end);
        by_bidder[entry.bidder].emplace_back(entry.start, entry.end);
        totals[entry.bidder] += (entry.end - entry.start) * supplies[entry.slot];
    }

    auto check_disjoint = [&fail](std::vector<std::pair<Rational, Rational>>& intervals,
                                  const std::string& what) {
        std::sort(intervals.begin(), intervals.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 0; i + 1 < intervals.size(); ++i)
            if (intervals[i].second > intervals[i + 1].first)
                fail("overlapping intervals on " + what);
    };
    for (auto& [slot, intervals] : by_slot) check_disjoint(intervals, "slot " + std::to_string(slot));
    for (auto& [bidder, intervals] : by_bidder) check_disjoint(intervals, "bidder \"" + bidder + "\"");

    for (const auto& [bidder, clicks] : expected) {
        Rational actual(0);
        if (auto it = totals.find(bidder); it != totals.end()) actual = it->second;
        if (actual != clicks)
            fail("bidder \"" + bidder + "\" collects " + to_fraction_string(actual) +
                 " clicks, expected " + to_fraction_string(clicks));
    }
}

std::string schedule_to_text(const Schedule& schedule) {
    std::ostringstream out;
    out << "# bidder\tslot\tstart\tend\n";
    for (const ScheduleEntry& entry : schedule.entries)
        out << entry.bidder << '\t' << entry.slot << '\t' << to_fraction_string(entry.start)
            << '\t' << to_fraction_string(entry.end) << '\n';
    return out.str();
}

Schedule schedule_from_text(const std::string& text) {
    Schedule schedule;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> fields;
        std::size_t pos = 0;
        while (true) {
            std::size_t tab = line.find('\t', pos);
            fields.push_back(line.substr(pos, tab == std::string::npos ? tab : tab - pos));
            if (tab == std::string::npos) break;
            pos = tab + 1;
        }
        if (fields.size() != 4)
            throw Error(ErrorCode::BadInstanceFile, "schedule row needs 4 tab-separated fields");
        ScheduleEntry entry;
        entry.bidder = fields[0];
        try {
            std::size_t used = 0;
            entry.slot = static_cast<std::size_t>(std::stoull(fields[1], &used));
            if (used != fields[1].size()) throw std::invalid_argument(fields[1]);
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::BadInstanceFile,
                        "schedule row has a bad slot index \"" + fields[1] + "\"");
        }
        entry.start = parse_rational(fields[2]);
        entry.end = parse_rational(fields[3]);
        schedule.entries.push_back(std::move(entry));
    }
    return schedule;
}

} // namespace adsched
