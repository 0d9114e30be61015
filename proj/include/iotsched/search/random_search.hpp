#pragma once

#include "iotsched/search/archive.hpp"
#include "iotsched/search/config.hpp"
#include "iotsched/search/evaluator.hpp"

namespace iotsched::search {

/// Baseline that samples uniform genomes in population-sized batches through
/// the same evaluation pipeline as the evolutionary search and keeps the
/// non-dominated archive. Uses the same budget and telemetry schema.
RunResult random_search_run(const ScenarioContext& ctx, const SearchConfig& cfg);

} // namespace iotsched::search
