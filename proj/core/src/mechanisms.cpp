#include <adsched/mechanisms.hpp>

#include <adsched/errors.hpp>

#include <algorithm>
#include <unordered_map>

namespace adsched {

bool operator==(const BlockMember& a, const BlockMember& b) {
    return a.bidder == b.bidder && a.clicks == b.clicks && a.spend == b.spend;
}

bool operator==(const ThresholdInfo& a, const ThresholdInfo& b) {
    return a.bidder == b.bidder && a.reduced_budget == b.reduced_budget;
}

bool operator==(const PriceBlock& a, const PriceBlock& b) {
    return a.price == b.price && a.members == b.members && a.first_slot == b.first_slot &&
           a.slot_count == b.slot_count && a.threshold == b.threshold;
}

bool operator==(const BidderOutcome& a, const BidderOutcome& b) {
    return a.id == b.id && a.dummy == b.dummy && a.clicks == b.clicks && a.price == b.price &&
           a.spend == b.spend;
}

bool same_allocation(const Outcome& a, const Outcome& b) {
    return a.blocks == b.blocks && a.bidders == b.bidders && a.revenue == b.revenue;
}

namespace {

Rational supply_at(std::span<const Rational> supplies, std::size_t i) {
    return i < supplies.size() ? supplies[i] : Rational(0);
}

void check_budgets_sorted(std::span<const Rational> budgets) {
    for (std::size_t i = 0; i < budgets.size(); ++i) {
        if (budgets[i] < 0) throw Error(ErrorCode::UnsortedInput, "negative budget");
        if (i + 1 < budgets.size() && budgets[i] < budgets[i + 1])
            throw Error(ErrorCode::UnsortedInput, "budgets must be nonincreasing");
    }
}

std::vector<Rational> slot_clicks(const Instance& instance) {
    std::vector<Rational> supplies;
    supplies.reserve(instance.slots.size());
    for (const SlotSupply& slot : instance.slots) supplies.push_back(slot.clicks);
    return supplies;
}

/// Indices of `instance.bidders` in consideration order: bid descending,
/// exact ties by position (the lex rank).
std::vector<std::size_t> bid_order(const Instance& instance) {
    std::vector<std::size_t> order(instance.bidders.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return bid_precedes(BidKey{instance.bidders[a].max_cpc, a},
                            BidKey{instance.bidders[b].max_cpc, b});
    });
    return order;
}

/// Assembles mechanism results; every price-setting mechanism funnels its
/// blocks through here so equal decisions produce identical outcomes.
/// Padding is internal bookkeeping: reported blocks and schedule entries
/// never reach past the real (input) slots.
class OutcomeBuilder {
public:
    OutcomeBuilder(const Instance& padded, std::size_t real_slots, std::string mechanism)
        : instance_(padded), real_slots_(real_slots), supplies_(slot_clicks(padded)) {
        outcome_.mechanism = std::move(mechanism);
        outcome_.revenue = 0;
        outcome_.bidders.reserve(padded.bidders.size());
        for (const Bidder& bidder : padded.bidders)
            outcome_.bidders.push_back(BidderOutcome{bidder.id, bidder.dummy, Rational(0),
                                                     Rational(0), Rational(0)});
    }

    const std::vector<Rational>& supplies() const { return supplies_; }
    std::size_t real_slots() const { return real_slots_; }

    /// members: bidder indices by effective budget (desc, ties by position);
    /// spends[i] is member i's effective budget (price > 0) or 0. The slot
    /// window is in padded coordinates and gets clipped for the report.
    void add_block(const Rational& price, std::span<const std::size_t> members,
                   std::span<const Rational> spends, std::size_t first_slot,
                   std::size_t slot_count, std::optional<ThresholdInfo> threshold) {
        PriceBlock block;
        block.price = price;
        block.first_slot = first_slot;
        block.slot_count = first_slot < real_slots_
                               ? std::min(slot_count, real_slots_ - first_slot)
                               : 0;
        block.threshold = std::move(threshold);

        std::vector<JobClicks> jobs;
        for (std::size_t i = 0; i < members.size(); ++i) {
            const Bidder& bidder = instance_.bidders[members[i]];
            Rational clicks = price > 0 ? Rational(spends[i] / price) : Rational(0);
            block.members.push_back(BlockMember{bidder.id, clicks, spends[i]});
            set_result(members[i], clicks, price, spends[i]);
            if (clicks > 0) {
                jobs.push_back(JobClicks{bidder.id, clicks});
            } else if (i < slot_count && first_slot + i < real_slots_ &&
                       supply_at(supplies_, first_slot + i) == 0) {
                // Park zero-click members on the block's real zero-supply
                // slots, one each, in member order.
                outcome_.schedule.entries.push_back(
                    ScheduleEntry{bidder.id, first_slot + i, Rational(0), Rational(1)});
            }
        }

        std::span<const Rational> window{supplies_.data() + first_slot,
                                         std::min(slot_count, supplies_.size() - first_slot)};
        Schedule piece = build_schedule(jobs, window, first_slot);
        outcome_.schedule.entries.insert(outcome_.schedule.entries.end(), piece.entries.begin(),
                                         piece.entries.end());
        outcome_.blocks.push_back(std::move(block));
    }

    void set_result(std::size_t bidder_index, Rational clicks, Rational price, Rational spend) {
        BidderOutcome& result = outcome_.bidders[bidder_index];
        result.clicks = std::move(clicks);
        result.price = std::move(price);
        result.spend = std::move(spend);
    }

    void add_schedule(Schedule piece) {
        outcome_.schedule.entries.insert(outcome_.schedule.entries.end(),
                                         std::make_move_iterator(piece.entries.begin()),
                                         std::make_move_iterator(piece.entries.end()));
    }

    Outcome finish() {
        for (const BidderOutcome& bidder : outcome_.bidders) outcome_.revenue += bidder.spend;
        std::unordered_map<std::string, Rational> expected;
        for (const BidderOutcome& bidder : outcome_.bidders) expected.emplace(bidder.id, bidder.clicks);
        audit_schedule(outcome_.schedule, expected, supplies_);
        return std::move(outcome_);
    }

private:
    const Instance& instance_;
    std::size_t real_slots_;
    std::vector<Rational> supplies_;
    Outcome outcome_;
};

/// Active bidders of one price-setting round, kept sorted by effective
/// budget (desc, ties by position).
class ActiveSet {
public:
    void insert(std::size_t bidder_index, Rational effective_budget) {
        auto it = std::find_if(members_.begin(), members_.end(), [&](std::size_t other) {
            if (int c = cmp(effective_[other], effective_budget); c != 0) return c < 0;
            return other > bidder_index;
        });
        effective_[bidder_index] = std::move(effective_budget);
        members_.insert(it, bidder_index);
    }

    void reduce(std::size_t bidder_index, const Rational& new_budget) {
        members_.erase(std::find(members_.begin(), members_.end(), bidder_index));
        effective_.erase(bidder_index);
        insert(bidder_index, new_budget);
    }

    const std::vector<std::size_t>& members() const { return members_; }
    const Rational& effective(std::size_t bidder_index) const { return effective_.at(bidder_index); }

    std::vector<Rational> budgets() const {
        std::vector<Rational> result;
        result.reserve(members_.size());
        for (std::size_t index : members_) result.push_back(effective_.at(index));
        return result;
    }

    std::vector<Rational> budgets_without(std::size_t bidder_index) const {
        std::vector<Rational> result;
        result.reserve(members_.size() - 1);
        for (std::size_t index : members_)
            if (index != bidder_index) result.push_back(effective_.at(index));
        return result;
    }

private:
    std::vector<std::size_t> members_;
    std::unordered_map<std::size_t, Rational> effective_;
};

/// Mechanisms run on declared budgets and bids as given, so weighted
/// instances must go through scale_by_ctr first.
Instance prepare(const Instance& instance) {
    Instance padded = pad_instance(validate_instance(instance));
    for (const Bidder& bidder : padded.bidders)
        if (bidder.ctr != 1)
            throw Error(ErrorCode::UnsortedInput,
                        "mechanism input must have unit ctr; apply scale_by_ctr first");
    return padded;
}

/// Terminal block: every remaining bidder at price 0 with zero clicks over
/// every remaining slot. Positive leftover supply stays unassigned (no free
/// clicks); real zero-supply slots park the members in stable order. A
/// leftover window made of padding only is dropped: the bidders keep their
/// zero results without a reported block.
void emit_zero_block(OutcomeBuilder& builder, const Instance& instance,
                     std::vector<std::size_t> remaining, std::size_t first_slot,
                     std::size_t slot_count) {
    if (first_slot >= builder.real_slots()) return;
    std::sort(remaining.begin(), remaining.end(), [&](std::size_t a, std::size_t b) {
        if (int c = cmp(instance.bidders[a].budget, instance.bidders[b].budget); c != 0)
            return c > 0;
        return a < b;
    });
    std::vector<Rational> spends(remaining.size(), Rational(0));
    builder.add_block(Rational(0), remaining, spends, first_slot, slot_count, std::nullopt);
}

} // namespace

FindPriceBlockResult find_price_block(std::span<const Rational> budgets,
                                      std::span<const Rational> supplies) {
    check_budgets_sorted(budgets);
    FindPriceBlockResult result;
    result.price = 0;
    result.block_size = budgets.size();

    if (budgets.empty() || supplies.empty() || supplies.front() == 0) {
        result.clicks.assign(budgets.size(), Rational(0));
        return result;
    }

    Rational budget_prefix(0), supply_prefix(0), best(0);
    std::size_t best_size = budgets.size();
    for (std::size_t l = 1; l <= budgets.size(); ++l) {
        budget_prefix += budgets[l - 1];
        supply_prefix += supply_at(supplies, l - 1);
        Rational ratio = budget_prefix / supply_prefix;
        if (ratio >= best) {
            best = std::move(ratio);
            best_size = l;
        }
    }

    result.price = best;
    result.block_size = best_size;
    result.clicks.reserve(best_size);
    for (std::size_t i = 0; i < best_size; ++i)
        result.clicks.push_back(result.price > 0 ? Rational(budgets[i] / result.price)
                                                 : Rational(0));
    return result;
}

Rational threshold_budget(std::span<const Rational> other_budgets,
                          const Rational& declared_budget,
                          const Rational& target_bid,
                          std::span<const Rational> supplies) {
    check_budgets_sorted(other_budgets);
    if (declared_budget < 0) throw Error(ErrorCode::UnsortedInput, "negative declared budget");
    if (target_bid < 0) throw Error(ErrorCode::NegativeBid, "negative target bid");

    std::vector<Rational> budgets(other_budgets.begin(), other_budgets.end());
    budgets.insert(std::upper_bound(budgets.begin(), budgets.end(), declared_budget,
                                    [](const Rational& a, const Rational& b) { return a > b; }),
                   declared_budget);
    if (find_price_block(budgets, supplies).price <= target_bid) return declared_budget;

    // Price exceeds the bid, so shrink the budget until the tightest prefix
    // containing this bidder prices at exactly target_bid.
    std::optional<Rational> reduced;
    Rational supply_prefix(0), other_prefix(0);
    for (std::size_t l = 1; l <= other_budgets.size() + 1; ++l) {
        supply_prefix += supply_at(supplies, l - 1);
        Rational candidate = target_bid * supply_prefix - other_prefix;
        if (!reduced || candidate < *reduced) reduced = std::move(candidate);
        if (l <= other_budgets.size()) other_prefix += other_budgets[l - 1];
    }
    if (*reduced < 0) reduced = Rational(0);
    return *reduced < declared_budget ? *reduced : declared_budget;
}

Outcome ps_single_slot(const Instance& instance) {
    Instance padded = prepare(instance);
    const std::vector<Rational> supplies = slot_clicks(padded);
    std::size_t positive_slots = 0;
    for (const Rational& d : supplies)
        if (d > 0) ++positive_slots;
    if (positive_slots > 1)
        throw Error(ErrorCode::UnsortedInput,
                    "single-slot mechanism needs at most one positive-supply slot");

    OutcomeBuilder builder(padded, instance.slots.size(), "ps-single");
    const std::vector<std::size_t> order = bid_order(padded);
    const std::size_t n = order.size();

    if (positive_slots == 0) {
        emit_zero_block(builder, padded, order, 0, supplies.size());
        return builder.finish();
    }
    const Rational& capacity = supplies.front();

    auto bid_of = [&](std::size_t position) { return padded.bidders[order[position]].max_cpc; };

    Rational budget_prefix(0);
    std::size_t k = n;
    Rational prefix_before_k(0);
    for (std::size_t position = 0; position < n; ++position) {
        prefix_before_k = budget_prefix;
        budget_prefix += padded.bidders[order[position]].budget;
        Bid next = position + 1 < n ? bid_of(position + 1) : Bid(Rational(0));
        if (next <= budget_prefix / capacity) {
            k = position + 1;
            break;
        }
    }

    Rational pooled_price = budget_prefix / capacity;
    Bid last_bid = bid_of(k - 1);
    Rational price = last_bid < pooled_price ? last_bid.value() : pooled_price;

    if (price == 0) {
        emit_zero_block(builder, padded, order, 0, supplies.size());
        return builder.finish();
    }

    Rational reduced = price * capacity - prefix_before_k;
    const std::size_t threshold_index = order[k - 1];
    const Rational& declared = padded.bidders[threshold_index].budget;

    std::vector<std::size_t> members(order.begin(), order.begin() + k);
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
        const Rational& ba = a == threshold_index ? reduced : padded.bidders[a].budget;
        const Rational& bb = b == threshold_index ? reduced : padded.bidders[b].budget;
        if (int c = cmp(ba, bb); c != 0) return c > 0;
        return a < b;
    });
    std::vector<Rational> spends;
    spends.reserve(k);
    for (std::size_t index : members)
        spends.push_back(index == threshold_index ? reduced : padded.bidders[index].budget);

    std::optional<ThresholdInfo> threshold;
    if (reduced < declared)
        threshold = ThresholdInfo{padded.bidders[threshold_index].id, reduced};

    builder.add_block(price, members, spends, 0, k, std::move(threshold));
    if (k < n) {
        std::vector<std::size_t> remaining(order.begin() + k, order.end());
        emit_zero_block(builder, padded, remaining, k, supplies.size() - k);
    }
    return builder.finish();
}

Outcome ps_budgets_only(const Instance& instance) {
    Instance padded = prepare(instance);
    OutcomeBuilder builder(padded, instance.slots.size(), "budgets-only");
    const std::vector<Rational>& supplies = builder.supplies();

    std::vector<std::size_t> remaining(padded.bidders.size());
    for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
    std::sort(remaining.begin(), remaining.end(), [&](std::size_t a, std::size_t b) {
        if (int c = cmp(padded.bidders[a].budget, padded.bidders[b].budget); c != 0) return c > 0;
        return a < b;
    });

    std::size_t slot_cursor = 0;
    while (slot_cursor < supplies.size()) {
        std::span<const Rational> window{supplies.data() + slot_cursor,
                                         supplies.size() - slot_cursor};
        std::vector<Rational> budgets;
        budgets.reserve(remaining.size());
        for (std::size_t index : remaining) budgets.push_back(padded.bidders[index].budget);

        FindPriceBlockResult found = find_price_block(budgets, window);
        if (found.price == 0) {
            emit_zero_block(builder, padded, remaining, slot_cursor,
                            supplies.size() - slot_cursor);
            break;
        }

        std::vector<std::size_t> members(remaining.begin(),
                                         remaining.begin() + found.block_size);
        std::vector<Rational> spends(budgets.begin(), budgets.begin() + found.block_size);
        builder.add_block(found.price, members, spends, slot_cursor, found.block_size,
                          std::nullopt);
        remaining.erase(remaining.begin(), remaining.begin() + found.block_size);
        slot_cursor += found.block_size;
    }
    return builder.finish();
}

Outcome ps_general(const Instance& instance) {
    Instance padded = prepare(instance);
    OutcomeBuilder builder(padded, instance.slots.size(), "ps");
    const std::vector<Rational>& supplies = builder.supplies();

    std::vector<std::size_t> remaining = bid_order(padded);
    std::size_t slot_cursor = 0;

    while (slot_cursor < supplies.size() && !remaining.empty()) {
        std::span<const Rational> window{supplies.data() + slot_cursor,
                                         supplies.size() - slot_cursor};

        ActiveSet active;
        FindPriceBlockResult found;
        std::size_t admitted = 0;
        while (true) {
            const std::size_t index = remaining[admitted];
            active.insert(index, padded.bidders[index].budget);
            ++admitted;
            found = find_price_block(active.budgets(), window);
            Bid next = admitted < remaining.size()
                           ? padded.bidders[remaining[admitted]].max_cpc
                           : Bid(Rational(0));
            if (next <= found.price) break;
        }

        const std::size_t last_index = remaining[admitted - 1];
        const Bid last_bid = padded.bidders[last_index].max_cpc;
        std::optional<ThresholdInfo> threshold;
        if (last_bid < found.price) {
            Rational reduced = threshold_budget(active.budgets_without(last_index),
                                                padded.bidders[last_index].budget,
                                                last_bid.value(), window);
            active.reduce(last_index, reduced);
            found = find_price_block(active.budgets(), window);
            threshold = ThresholdInfo{padded.bidders[last_index].id, reduced};
        }

        if (found.price == 0) {
            emit_zero_block(builder, padded, remaining, slot_cursor,
                            supplies.size() - slot_cursor);
            remaining.clear();
            break;
        }

        const auto& ordered = active.members();
        std::vector<std::size_t> members(ordered.begin(), ordered.begin() + found.block_size);
        std::vector<Rational> spends;
        spends.reserve(found.block_size);
        for (std::size_t index : members) spends.push_back(active.effective(index));
        builder.add_block(found.price, members, spends, slot_cursor, found.block_size,
                          std::move(threshold));

        std::vector<std::size_t> next_remaining;
        next_remaining.reserve(remaining.size() - members.size());
        for (std::size_t index : remaining)
            if (std::find(members.begin(), members.end(), index) == members.end())
                next_remaining.push_back(index);
        remaining = std::move(next_remaining);
        slot_cursor += found.block_size;
    }
    return builder.finish();
}

Outcome gfp(const Instance& instance) {
    Instance padded = prepare(instance);
    OutcomeBuilder builder(padded, instance.slots.size(), "gfp");
    const std::vector<Rational>& supplies = builder.supplies();

    std::vector<Rational> committed;
    std::vector<JobClicks> jobs;
    for (std::size_t index : bid_order(padded)) {
        const Bidder& bidder = padded.bidders[index];
        if (bidder.max_cpc.is_infinite() || bidder.max_cpc.value() == 0) continue;
        const Rational& bid = bidder.max_cpc.value();
        Rational cap = bidder.budget / bid;
        Rational clicks = max_additional_clicks(committed, supplies, &cap);
        builder.set_result(index, clicks, bid, bid * clicks);
        if (clicks > 0) {
            committed.push_back(clicks);
            jobs.push_back(JobClicks{bidder.id, clicks});
        }
    }

    std::sort(jobs.begin(), jobs.end(), [](const JobClicks& a, const JobClicks& b) {
        if (int c = cmp(a.clicks, b.clicks); c != 0) return c > 0;
        return a.bidder < b.bidder;
    });
    builder.add_schedule(build_schedule(jobs, supplies));
    return builder.finish();
}

} // namespace adsched
