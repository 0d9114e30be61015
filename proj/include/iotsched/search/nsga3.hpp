#pragma once

#include "iotsched/search/archive.hpp"
#include "iotsched/search/config.hpp"
#include "iotsched/search/evaluator.hpp"

namespace iotsched::search {

/// Reference-point evolutionary search over requirement-indexed genomes:
/// per generation the offspring are evaluated with the shared pipeline,
/// parents and offspring are non-dominated sorted, the last admitted front
/// is truncated by niche-preserving selection against the reference
/// directions, and breeding uses binary tournament, one-point crossover and
/// conflict-aware mutation. Infeasible individuals carry the
/// worst-feasible-plus-violations penalty, so feasibility pressure is
/// implicit in dominance. Stops when the evaluation budget or the wall-clock
/// cap is reached.
RunResult nsga3_run(const ScenarioContext& ctx, const SearchConfig& cfg);

} // namespace iotsched::search
