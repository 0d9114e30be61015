#pragma once

#include <utility>
#include <vector>

#include "iotsched/rng.hpp"
#include "iotsched/search/config.hpp"
#include "iotsched/search/evaluator.hpp"

namespace iotsched::search {

/// Materializes the genome into a procedure schedule, one candidate per
/// requirement. Throws on out-of-range genes.
ProcedureSchedule decode(const Genome& g, const CandidateSet& cands);

/// Inverse of decode for schedules drawn from the candidate set.
Genome encode(const ProcedureSchedule& s, const CandidateSet& cands);

/// population_size genomes with genes drawn uniformly per requirement.
std::vector<Genome> init_population(const SearchConfig& cfg, const CandidateSet& cands, Rng& rng);

/// Swaps the suffixes of two equal-length genomes after a random cut point in
/// [1, len-1]. Genomes shorter than two genes are returned unchanged.
std::pair<Genome, Genome> crossover_one_point(const Genome& a, const Genome& b, Rng& rng);

/// Probability of selecting a non-conflicting replacement, interpolated from
/// the share of the schedule currently free of conflicts.
double mutation_p_nc(int conflict_count, std::size_t schedule_size, const SearchConfig& cfg);

/// Conflict-aware uniform mutation: with probability mutation_prob, one
/// requirement position is re-drawn among its other candidates, weighting
/// each replacement by whether it conflicts with the rest of the schedule.
/// Replacements that repair conflicts are favored more strongly the closer
/// the schedule already is to feasibility.
Genome mutate(const Genome& g, const CandidateSet& cands, const ConflictGraph& graph,
              const SearchConfig& cfg, Rng& rng);

} // namespace iotsched::search
