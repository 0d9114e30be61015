#include "iotsched/slotting.hpp"

#include <algorithm>
#include <stdexcept>

namespace iotsched {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

/// Extends each slot's end so the length is a whole number of quanta.
bool pad_to_quantum(std::vector<Slot>& slots, std::int64_t quantum_s) {
    bool changed = false;
    for (auto& s : slots) {
        const std::int64_t len = s.length().seconds();
        const std::int64_t padded = ceil_div(len, quantum_s) * quantum_s;
        if (padded != len) {
            s.t_end = s.t_start + Duration::of_seconds(padded);
            changed = true;
        }
    }
    return changed;
}

} // namespace

void SlottingPolicy::validate() const {
    if (align_minutes <= 0 || slot_quantum_minutes <= 0)
        throw std::invalid_argument("slotting policy: alignment and quantum must be positive");
    if (slot_quantum_minutes % align_minutes != 0)
        throw std::invalid_argument("slotting policy: alignment must divide the quantum");
    if (consolidation_threshold_minutes >= consolidation_window_minutes)
        throw std::invalid_argument(
            "slotting policy: consolidation threshold must be below the window");
}

Slot generate_slot(const TestProcedure& p, const SlottingPolicy& policy) {
    const std::int64_t align_s = static_cast<std::int64_t>(policy.align_minutes) * 60;
    const std::int64_t quantum_s = static_cast<std::int64_t>(policy.slot_quantum_minutes) * 60;
    Instant cover_start = policy.cover_config_time ? p.t_start - p.config_time : p.t_start;
    const Instant cover_end = p.t_end;

    const std::int64_t start_s = floor_div(cover_start.epoch_seconds(), align_s) * align_s;
    const std::int64_t needed = cover_end.epoch_seconds() - start_s;
    std::int64_t len = ceil_div(needed, quantum_s) * quantum_s;
    if (len <= 0) len = quantum_s;
    return Slot{Instant::from_epoch_seconds(start_s), Instant::from_epoch_seconds(start_s + len)};
}

std::vector<Slot> combine_overlapping(std::vector<Slot> slots) {
    if (slots.size() <= 1) return slots;
    std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
        return a.t_start != b.t_start ? a.t_start < b.t_start : a.t_end < b.t_end;
    });
    std::vector<Slot> merged;
    merged.reserve(slots.size());
    merged.push_back(slots.front());
    for (std::size_t i = 1; i < slots.size(); ++i) {
        Slot& last = merged.back();
        if (slots[i].t_start <= last.t_end) {
            last.t_end = std::max(last.t_end, slots[i].t_end);
        } else {
            merged.push_back(slots[i]);
        }
    }
    return merged;
}

std::vector<Slot> consolidate(std::vector<Slot> slots, const SlottingPolicy& policy) {
    const std::int64_t window_s =
        static_cast<std::int64_t>(policy.consolidation_window_minutes) * 60;
    const std::int64_t threshold_s =
        static_cast<std::int64_t>(policy.consolidation_threshold_minutes) * 60;
    const std::int64_t quantum_s = static_cast<std::int64_t>(policy.slot_quantum_minutes) * 60;

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            const std::int64_t anchor = slots[i].t_start.epoch_seconds();
            const std::int64_t window_end = anchor + window_s;

            // Slotted time falling inside the window anchored at this slot.
            std::int64_t in_window = 0;
            std::size_t run_end = i;
            std::int64_t run_max_end = anchor;
            for (std::size_t j = i; j < slots.size(); ++j) {
                const std::int64_t s = slots[j].t_start.epoch_seconds();
                const std::int64_t e = slots[j].t_end.epoch_seconds();
                if (s >= window_end) break;
                in_window += std::min(e, window_end) - s;
                run_end = j + 1;
                run_max_end = std::max(run_max_end, e);
            }
            if (in_window <= threshold_s) continue; // strictly "more than"

            // The run collapses into one slot spanning at least the window;
            // absorb anything the grown slot reaches, keeping whole quanta.
            std::int64_t new_end = std::max(window_end, run_max_end);
            for (;;) {
                new_end = anchor + ceil_div(new_end - anchor, quantum_s) * quantum_s;
                bool grew = false;
                while (run_end < slots.size() &&
                       slots[run_end].t_start.epoch_seconds() <= new_end) {
                    new_end = std::max(new_end, slots[run_end].t_end.epoch_seconds());
                    ++run_end;
                    grew = true;
                }
                if (!grew) break;
            }
            const Slot replacement{Instant::from_epoch_seconds(anchor),
                                   Instant::from_epoch_seconds(new_end)};
            if (run_end - i == 1 && slots[i] == replacement) continue; // fixed point

            slots.erase(slots.begin() + static_cast<std::ptrdiff_t>(i),
                        slots.begin() + static_cast<std::ptrdiff_t>(run_end));
            slots.insert(slots.begin() + static_cast<std::ptrdiff_t>(i), replacement);
            changed = true;
            break; // earlier windows may trigger now; rescan from the front
        }
    }
    return slots;
}

std::vector<Slot> sanitize_slots(std::vector<Slot> slots, const SlottingPolicy& policy) {
    policy.validate();
    const std::int64_t quantum_s = static_cast<std::int64_t>(policy.slot_quantum_minutes) * 60;
    slots = combine_overlapping(std::move(slots));
    while (pad_to_quantum(slots, quantum_s)) {
        const std::size_t before = slots.size();
        slots = combine_overlapping(std::move(slots));
        if (slots.size() == before) break; // padding created no new overlap
    }
    return consolidate(std::move(slots), policy);
}

SlotSchedule slot_schedule(const ProcedureSchedule& s, const SlottingPolicy& policy) {
    std::vector<Slot> slots;
    slots.reserve(s.size());
    for (const auto& p : s.procedures) slots.push_back(generate_slot(p, policy));
    return SlotSchedule{sanitize_slots(std::move(slots), policy)};
}

} // namespace iotsched
