#pragma once

#include <vector>

#include "iotsched/model.hpp"

namespace iotsched {

/// Rules for turning procedures into antenna allotments: slots start on a
/// quarter-hour boundary, last an integer number of hours, and runs of more
/// than six slotted hours within a day are consolidated into a full-day slot.
struct SlottingPolicy {
    int align_minutes = 15;
    int slot_quantum_minutes = 60;
    int consolidation_threshold_minutes = 360;
    int consolidation_window_minutes = 1440;
    bool cover_config_time = true;

    void validate() const;
};

/// Smallest aligned slot containing the procedure (plus its configuration
/// overhead when the policy covers it): the start is floored to the alignment
/// grid and the length rounded up to a whole quantum.
Slot generate_slot(const TestProcedure& p, const SlottingPolicy& policy);

/// Merges every overlapping or touching pair into its union. The result is
/// chronological and the operation is idempotent.
std::vector<Slot> combine_overlapping(std::vector<Slot> slots);

/// Applies the more-than-six-hours-in-twenty-four rule: whenever the slotted
/// time falling inside a window of `consolidation_window_minutes` anchored at
/// some slot's start strictly exceeds the threshold, the slots overlapping
/// that window collapse into one slot spanning at least the whole window.
/// Repeats until no window triggers. Input must be sorted and non-overlapping.
std::vector<Slot> consolidate(std::vector<Slot> slots, const SlottingPolicy& policy);

/// Full pipeline: one generated slot per procedure, merged, re-quantized and
/// consolidated. Every procedure's covered interval ends up inside one slot.
SlotSchedule slot_schedule(const ProcedureSchedule& s, const SlottingPolicy& policy);

/// Sanitizes an arbitrary slot set the same way `slot_schedule` does after
/// generation: merge, pad every length to a whole quantum, repeat to a fixed
/// point, then consolidate. Exposed for evaluators that precompute the
/// per-procedure slots.
std::vector<Slot> sanitize_slots(std::vector<Slot> slots, const SlottingPolicy& policy);

} // namespace iotsched
