#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "iotsched/conflicts.hpp"
#include "iotsched/objectives.hpp"
#include "iotsched/scenario.hpp"
#include "iotsched/slotting.hpp"

namespace iotsched::search {

/// Everything one optimization run needs, prepared once up front.
struct ScenarioContext {
    CampaignSpec spec;
    PassCatalog catalog;
    CandidateSet candidates;
    ConflictGraph graph;
    SlottingPolicy slotting;
    CostModel cost; ///< with derived bounds

    static ScenarioContext prepare(CampaignSpec spec, PassCatalog catalog,
                                   SlottingPolicy slotting = {});
};

/// Objective values before constraint handling.
struct RawFitness {
    int violations = 0;
    double use = 0.0;
    double frag = 0.0;
    double cost = 0.0; ///< normalized, lower is better

    [[nodiscard]] bool feasible() const { return violations == 0; }
};

using Genome = std::vector<std::int32_t>;

/// Shared fitness pipeline for every algorithm. Evaluation is a pure
/// function of the genome (or candidate subset), so generations may be
/// evaluated from several threads with results identical to sequential runs.
class ScheduleEvaluator {
public:
    explicit ScheduleEvaluator(const ScenarioContext& ctx);

    /// Evaluates a requirement-indexed genome.
    [[nodiscard]] RawFitness eval_genome(std::span<const std::int32_t> genes) const;

    /// Evaluates an explicit candidate subset (one entry per chosen
    /// procedure); used by constructive algorithms on partial schedules.
    /// By default the objective arithmetic is skipped for conflicting
    /// subsets; `force_arithmetic` computes it anyway, which the ant
    /// system's desirability term needs for every candidate extension.
    [[nodiscard]] RawFitness eval_candidates(std::span<const std::int32_t> candidate_ids,
                                             bool force_arithmetic = false) const;

    /// Applies constraint handling: feasible raw fitness maps to
    /// (1-use, 1-frag, cost); infeasible to pop_feasible_max + violations.
    [[nodiscard]] FitnessVector finish(const RawFitness& raw,
                                       const std::array<double, 3>& pop_feasible_max) const;

    /// Scalar fitness used by the ant system, in maximize orientation:
    /// (use + frag + (1 - cost)) / 3.
    [[nodiscard]] static double scalar_fitness(const RawFitness& raw);

    [[nodiscard]] const ScenarioContext& context() const { return *ctx_; }

private:
    const ScenarioContext* ctx_;
    std::vector<std::int64_t> start_s_;
    std::vector<std::int64_t> end_s_;
    std::vector<std::int64_t> duration_s_;
    std::vector<Slot> candidate_slot_;
    std::int64_t delta_c_s_ = 0;
};

/// Evaluates a batch of genomes, optionally across `threads` workers.
/// Results are returned in genome order, so the thread count never changes
/// the outcome.
std::vector<RawFitness> evaluate_batch(const ScheduleEvaluator& evaluator,
                                       std::span<const Genome> genomes, int threads);

/// Per-objective maxima, in minimized orientation, over the feasible members
/// of a batch; (1,1,1) when none is feasible.
std::array<double, 3> feasible_maxima(std::span<const RawFitness> raws);

} // namespace iotsched::search
