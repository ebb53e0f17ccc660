#pragma once

#include <adsched/rational.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace adsched {

/// One preemption-free piece of a schedule: `bidder` occupies `slot` over
/// [start, end) and collects (end - start) * supply clicks from it.
struct ScheduleEntry {
    std::string bidder;
    std::size_t slot = 0;
    Rational start;
    Rational end;
};

struct Schedule {
    std::vector<ScheduleEntry> entries;
};

bool operator==(const ScheduleEntry& a, const ScheduleEntry& b);
bool operator==(const Schedule& a, const Schedule& b);

/// A bidder's required click total, the jobs fed to the scheduler.
struct JobClicks {
    std::string bidder;
    Rational clicks;
};

/// True iff clicks (nonincreasing) can be scheduled on the supplies within
/// the unit interval: every prefix of clicks fits in the same prefix of
/// supplies. Clicks beyond the slot count are matched against zero supply.
/// Throws UnsortedInput if either vector is out of order.
bool is_feasible(std::span<const Rational> clicks, std::span<const Rational> supplies);

/// Minimal completion time for the click vector on the supplies: the largest
/// prefix ratio sum(c)/sum(D). Throws AllZeroSupply when no supply is
/// positive but some click total is, UnsortedInput as for is_feasible.
Rational makespan(std::span<const Rational> clicks, std::span<const Rational> supplies);

/// Builds a feasible preemptive schedule delivering exactly `jobs[i].clicks`
/// to each bidder. Jobs must be sorted by clicks, nonincreasing. Splits the
/// instance at click-tight prefixes, then runs an event-driven level
/// simulation per segment with exact rational event times; jobs tied at the
/// same level share their machine pool by rotation. Throws
/// Error{Infeasible} when the simulation cannot finish by time 1.
/// `slot_offset` shifts the emitted slot indices (supplies are a window of a
/// larger slot list). Zero-click jobs produce no entries.
Schedule build_schedule(std::span<const JobClicks> jobs,
                        std::span<const Rational> supplies,
                        std::size_t slot_offset = 0);

/// Largest additional click volume a new job can take, given the click
/// totals already committed, without breaking feasibility and without
/// exceeding `cap` (nullopt = unbounded). Committed totals may be in any
/// order.
Rational max_additional_clicks(std::span<const Rational> committed,
                               std::span<const Rational> supplies,
                               const Rational* cap);

/// Independent schedule checker: per-slot and per-bidder interval
/// disjointness, endpoints within [0, 1], and exact per-bidder click totals
/// against `expected` (bidders absent from the schedule must expect 0).
/// Works from the raw entry list only. Throws Error{ScheduleAuditFailed}
/// with a description of the first violation.
void audit_schedule(const Schedule& schedule,
                    const std::unordered_map<std::string, Rational>& expected,
                    std::span<const Rational> supplies);

/// Serializes a schedule as delimiter-separated text, one entry per row:
/// bidder, slot index, start, end (exact rationals).
std::string schedule_to_text(const Schedule& schedule);
Schedule schedule_from_text(const std::string& text);

} // namespace adsched
