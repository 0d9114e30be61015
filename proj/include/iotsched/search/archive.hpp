#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iotsched/objectives.hpp"
#include "iotsched/search/evaluator.hpp"

namespace iotsched::search {

struct ArchiveEntry {
    Genome genome;
    FitnessVector fitness;
};

/// Per-iteration progress counters.
struct TelemetryRow {
    long long iteration = 0;
    long long evals = 0;
    int min_violations = 0;
    double mean_violations = 0.0;
    std::size_t front_size = 0;
};

/// Outcome of one optimization run: the retained front, counters and the
/// per-iteration telemetry. The front is canonically sorted so identical
/// runs serialize identically.
struct RunResult {
    std::string algorithm;
    std::uint64_t seed = 0;
    long long evals = 0;
    long long iterations = 0;
    std::vector<ArchiveEntry> front;
    std::vector<TelemetryRow> telemetry;

    [[nodiscard]] bool any_feasible() const;
};

/// Best-so-far elitist store. While no feasible individual has been seen it
/// keeps the solutions with the fewest conflicts (penalized against the
/// default (1,1,1) baseline so stored vectors do not depend on population
/// state); as soon as a feasible one arrives, only the mutually
/// non-dominated feasible set is retained and it never regresses.
class ParetoArchive {
public:
    /// Offers one evaluated individual; keeps the archive invariant.
    void offer(const Genome& genome, const RawFitness& raw);

    [[nodiscard]] const std::vector<ArchiveEntry>& entries() const { return entries_; }
    [[nodiscard]] bool any_feasible() const { return has_feasible_; }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }

    /// Entries ordered by (minimized objectives, genome) for stable output.
    [[nodiscard]] std::vector<ArchiveEntry> sorted_entries() const;

private:
    std::vector<ArchiveEntry> entries_;
    bool has_feasible_ = false;
    int best_violations_ = -1;
};

/// a Pareto-dominates b in minimized space (<= everywhere, < somewhere).
bool dominates(const std::array<double, 3>& a, const std::array<double, 3>& b);

} // namespace iotsched::search
