#pragma once

#include "iotsched/search/archive.hpp"
#include "iotsched/search/config.hpp"
#include "iotsched/search/evaluator.hpp"

namespace iotsched::search {

/// Max-min ant-system baseline. Ants grow conflict-free partial schedules on
/// the candidate graph: from the current procedure they move to a feasible
/// continuation with probability proportional to pheromone^alpha *
/// desirability^beta, where desirability is the normalized scalar-fitness
/// improvement of adding the candidate (zero for anything that would
/// introduce a conflict). After each iteration the best-so-far complete
/// solution deposits its scalar fitness on the edges it walked, with all
/// pheromone values clamped into [tau_min, tau_max]. One fitness evaluation
/// is counted per completed ant.
RunResult aco_run(const ScenarioContext& ctx, const AcoConfig& cfg);

/// Desirability of appending each of `options` to a conflict-free partial
/// schedule: 0 for options that conflict with it (or already belong to it),
/// otherwise the scalar-fitness improvement normalized by the best
/// improvement on offer, floored at a small epsilon so the proportional rule
/// stays well defined when nothing improves.
std::vector<double> aco_desirability(const ScheduleEvaluator& evaluator,
                                     std::span<const std::int32_t> partial,
                                     std::span<const std::int32_t> options);

/// One max-min pheromone update: evaporates every trail, deposits the
/// best-so-far solution's fitness along its walk edges and clamps everything
/// into [tau_min, tau_max]. `pheromone` is a row-major n x n matrix.
void mmas_update(std::vector<double>& pheromone, std::size_t n,
                 std::span<const std::int32_t> best_walk, double best_fitness, double rho,
                 double tau_min, double tau_max);

} // namespace iotsched::search
