#include "iotsched/objectives.hpp"

#include <algorithm>
#include <stdexcept>

#include "iotsched/conflicts.hpp"
#include "iotsched/scenario.hpp"

namespace iotsched {

void CostModel::validate() const {
    if (rate_per_hour <= 0.0 || day_cap_cost <= 0.0)
        throw std::invalid_argument("cost model: rate and day cap must be positive");
    if (day_threshold_minutes <= 0)
        throw std::invalid_argument("cost model: day threshold must be positive");
}

double fit_use(const ProcedureSchedule& s, Duration delta_c) {
    if (s.empty()) throw std::invalid_argument("fit_use: empty schedule");
    const double span = static_cast<double>(span_schedule(s).seconds());
    double busy = static_cast<double>(s.size() - 1) * static_cast<double>(delta_c.seconds());
    for (const auto& p : s.procedures) busy += static_cast<double>(p.duration().seconds());
    return busy / span;
}

double fit_frag(const ProcedureSchedule& s, const SlotSchedule& q) {
    if (s.size() <= 1) return 1.0;
    const double slots = static_cast<double>(q.size());
    const double procs = static_cast<double>(s.size());
    return 1.0 - (slots - 1.0) / (procs - 1.0);
}

double cost_of(const SlotSchedule& q, const CostModel& m) {
    m.validate();
    const double threshold_minutes = static_cast<double>(m.day_threshold_minutes);
    double total = 0.0;
    for (const auto& slot : q.slots) {
        const double span_minutes = slot.length().minutes();
        total += span_minutes < threshold_minutes ? span_minutes / 60.0 * m.rate_per_hour
                                                  : m.day_cap_cost;
    }
    return total;
}

double fit_cost(const SlotSchedule& q, const CostModel& m) {
    if (!m.has_bounds())
        throw std::invalid_argument("fit_cost: cost bounds are degenerate (cost_max <= cost_min)");
    const double normalized = (cost_of(q, m) - m.cost_min) / (m.cost_max - m.cost_min);
    return std::clamp(normalized, 0.0, 1.0);
}

FitnessVector evaluate(const ProcedureSchedule& s, const ConflictGraph& g,
                       const SlottingPolicy& policy, const CostModel& m,
                       std::array<double, 3> pop_feasible_max) {
    FitnessVector fv;
    fv.violations = g.violation_count(s);
    if (fv.violations > 0) {
        const double penalty = static_cast<double>(fv.violations);
        for (std::size_t k = 0; k < 3; ++k) fv.minimized[k] = pop_feasible_max[k] + penalty;
        return fv;
    }
    const SlotSchedule q = slot_schedule(s, policy);
    fv.use = fit_use(s, s.procedures.empty() ? Duration{} : s.procedures.front().config_time);
    fv.frag = fit_frag(s, q);
    fv.cost = fit_cost(q, m);
    fv.minimized = {1.0 - fv.use, 1.0 - fv.frag, fv.cost};
    return fv;
}

CostModel derive_cost_bounds(CostModel base, const CandidateSet& cands, Duration config_time) {
    base.validate();
    if (base.has_bounds()) return base;

    auto slot_price = [&base](double hours) {
        const double minutes = hours * 60.0;
        return minutes < static_cast<double>(base.day_threshold_minutes)
                   ? hours * base.rate_per_hour
                   : base.day_cap_cost;
    };

    std::int64_t total_min_s = 0;
    double worst = 0.0;
    for (const auto& group : cands.by_requirement) {
        std::int64_t shortest = 0;
        std::int64_t longest = 0;
        for (std::size_t k = 0; k < group.size(); ++k) {
            const std::int64_t d =
                cands.candidates[static_cast<std::size_t>(group[k])].duration().seconds();
            shortest = k == 0 ? d : std::min(shortest, d);
            longest = std::max(longest, d);
        }
        total_min_s += shortest;
        const double hours_alone =
            static_cast<double>((longest + config_time.seconds() + 3599) / 3600);
        worst += slot_price(hours_alone);
    }

    const double best_hours = static_cast<double>((total_min_s + 3599) / 3600);
    base.cost_min = std::min(best_hours * base.rate_per_hour, base.day_cap_cost);
    base.cost_max = worst;
    if (base.cost_max <= base.cost_min) base.cost_max = base.cost_min + base.rate_per_hour;
    return base;
}

} // namespace iotsched
