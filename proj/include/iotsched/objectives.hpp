#pragma once

#include <array>
#include <cmath>

#include "iotsched/model.hpp"
#include "iotsched/slotting.hpp"

namespace iotsched {

class ConflictGraph;
struct CandidateSet;

/// Antenna pricing: hourly rate below one day, flat cap at a day or more,
/// plus the theoretical best/worst-case costs used to normalize fitness.
struct CostModel {
    double rate_per_hour = 456.0;
    double day_cap_cost = 3561.0;
    int day_threshold_minutes = 1440;
    double cost_min = 0.0;
    double cost_max = 0.0;

    [[nodiscard]] bool has_bounds() const { return cost_max > cost_min; }
    void validate() const;
};

/// The three objective values for one schedule, stored both in their natural
/// orientation (use/frag: higher is better; cost: normalized, lower is
/// better) and in the uniformly-minimized form fed to the optimizer.
/// Infeasible schedules carry only the violation count and penalized
/// minimized values; their raw fields are NaN.
struct FitnessVector {
    double use = std::nan("");
    double frag = std::nan("");
    double cost = std::nan("");
    int violations = 0;
    std::array<double, 3> minimized{};

    [[nodiscard]] bool feasible() const { return violations == 0; }
};

/// Fraction of the schedule span spent testing or reconfiguring:
/// ((|S|-1)*delta_c + sum of procedure durations) / span(S).
/// Reaches 1 when procedures run back to back separated exactly by delta_c.
/// Throws on an empty schedule; undefined if procedures overlap.
double fit_use(const ProcedureSchedule& s, Duration delta_c);

/// 1 - (|Q|-1)/(|S|-1); the fewer slots per procedure the better.
/// Defined as 1 for schedules of at most one procedure.
double fit_frag(const ProcedureSchedule& s, const SlotSchedule& q);

/// Monetary cost of a slot schedule: hourly rate per slot below the day
/// threshold, flat day cap otherwise.
double cost_of(const SlotSchedule& q, const CostModel& m);

/// Cost normalized into [0,1] between the model's theoretical bounds
/// (clamped). Throws when the bounds are degenerate.
double fit_cost(const SlotSchedule& q, const CostModel& m);

/// Full evaluation with constraint handling. Feasible schedules yield
/// minimized = (1-use, 1-frag, cost). Infeasible ones take, per objective,
/// the worst feasible value seen in the population plus the violation count,
/// which guarantees every feasible individual dominates every infeasible one.
/// `pop_feasible_max` defaults to (1,1,1) when no feasible individual exists.
FitnessVector evaluate(const ProcedureSchedule& s, const ConflictGraph& g,
                       const SlottingPolicy& policy, const CostModel& m,
                       std::array<double, 3> pop_feasible_max = {1.0, 1.0, 1.0});

/// Fills cost_min/cost_max when unset: the best case prices one contiguous
/// block of the per-requirement minimum durations (capped at the day rate),
/// the worst case prices every procedure in its own hour-rounded slot
/// including configuration time.
CostModel derive_cost_bounds(CostModel base, const CandidateSet& cands, Duration config_time);

} // namespace iotsched
