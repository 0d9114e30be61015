#include "iotsched/search/aco.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "iotsched/rng.hpp"

namespace iotsched::search {

namespace {

constexpr double kEtaFloor = 1e-6;

} // namespace

std::vector<double> aco_desirability(const ScheduleEvaluator& evaluator,
                                     std::span<const std::int32_t> partial,
                                     std::span<const std::int32_t> options) {
    std::vector<double> eta(options.size(), 0.0);
    std::vector<double> gains(options.size(), 0.0);
    std::vector<bool> allowed(options.size(), false);

    const double base =
        partial.empty() ? 0.0
                        : ScheduleEvaluator::scalar_fitness(
                              evaluator.eval_candidates(partial, /*force_arithmetic=*/true));
    std::vector<std::int32_t> extended(partial.begin(), partial.end());
    extended.push_back(0);

    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < options.size(); ++k) {
        bool member = false;
        for (const std::int32_t m : partial) member = member || m == options[k];
        if (member) continue;
        extended.back() = options[k];
        const auto raw = evaluator.eval_candidates(extended, /*force_arithmetic=*/true);
        gains[k] = ScheduleEvaluator::scalar_fitness(raw) - base;
        best_gain = std::max(best_gain, gains[k]);
        allowed[k] = raw.violations == 0;
    }
    for (std::size_t k = 0; k < options.size(); ++k) {
        if (!allowed[k]) continue;
        eta[k] = best_gain > 0.0 ? std::max(gains[k] / best_gain, kEtaFloor) : kEtaFloor;
    }
    return eta;
}

void mmas_update(std::vector<double>& pheromone, std::size_t n,
                 std::span<const std::int32_t> best_walk, double best_fitness, double rho,
                 double tau_min, double tau_max) {
    for (double& t : pheromone) t *= 1.0 - rho;
    for (std::size_t step = 0; step + 1 < best_walk.size(); ++step) {
        pheromone[static_cast<std::size_t>(best_walk[step]) * n +
                  static_cast<std::size_t>(best_walk[step + 1])] += best_fitness;
    }
    for (double& t : pheromone) t = std::clamp(t, tau_min, tau_max);
}

RunResult aco_run(const ScenarioContext& ctx, const AcoConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    auto out_of_time = [&] {
        const auto elapsed = std::chrono::steady_clock::now() - t0;
        return std::chrono::duration_cast<std::chrono::seconds>(elapsed).count() >=
               cfg.wallclock_cap_seconds;
    };

    ScheduleEvaluator evaluator(ctx);
    Rng rng(cfg.rng_seed);
    const auto n = static_cast<std::size_t>(ctx.candidates.size());
    const std::size_t n_requirements = ctx.candidates.requirements.size();
    if (n == 0) throw std::invalid_argument("aco_run: no candidates");

    const double tau_max = cfg.tau_max > 0.0 ? cfg.tau_max : cfg.deposit / cfg.rho;
    const double tau_min =
        cfg.tau_min > 0.0 ? cfg.tau_min : tau_max / (2.0 * static_cast<double>(n));

    std::vector<double> pheromone(n * n, tau_max);
    auto tau = [&pheromone, n](std::size_t i, std::size_t j) -> double& {
        return pheromone[i * n + j];
    };

    // gene position of every candidate within its requirement group
    std::vector<std::int32_t> gene_of(n, -1);
    for (const auto& group : ctx.candidates.by_requirement) {
        for (std::size_t k = 0; k < group.size(); ++k)
            gene_of[static_cast<std::size_t>(group[k])] = static_cast<std::int32_t>(k);
    }

    RunResult result;
    result.algorithm = "aco";
    result.seed = cfg.rng_seed;
    ParetoArchive archive;

    std::vector<std::int32_t> best_walk;
    double best_fitness = -std::numeric_limits<double>::infinity();
    std::size_t best_coverage = 0;

    std::vector<char> in_schedule(n, 0);

    bool timed_out = false;
    while (!timed_out && result.evals + cfg.ants <= cfg.eval_budget && !out_of_time()) {
        for (int ant = 0; ant < cfg.ants; ++ant) {
            if (out_of_time()) {
                timed_out = true;
                break;
            }
            std::fill(in_schedule.begin(), in_schedule.end(), 0);

            std::vector<std::int32_t> walk;
            walk.reserve(n_requirements);
            std::int32_t current =
                static_cast<std::int32_t>(rng.uniform_index(static_cast<std::uint32_t>(n)));
            walk.push_back(current);
            in_schedule[static_cast<std::size_t>(current)] = 1;

            RawFitness raw = evaluator.eval_candidates(walk);
            double fitness = ScheduleEvaluator::scalar_fitness(raw);

            std::vector<std::int32_t> eligible;
            std::vector<double> eligible_gain;
            std::vector<RawFitness> eligible_raw;
            std::vector<double> weights;
            while (walk.size() < n_requirements) {
                // desirability of every remaining candidate: the scalar-fitness
                // gain of the extended schedule, with conflicting extensions
                // excluded from the feasible continuation set
                eligible.clear();
                eligible_gain.clear();
                eligible_raw.clear();
                double best_gain = -std::numeric_limits<double>::infinity();
                walk.push_back(0);
                for (std::size_t j = 0; j < n; ++j) {
                    if (in_schedule[j]) continue;
                    walk.back() = static_cast<std::int32_t>(j);
                    const auto extended =
                        evaluator.eval_candidates(walk, /*force_arithmetic=*/true);
                    const double gain = ScheduleEvaluator::scalar_fitness(extended) - fitness;
                    best_gain = std::max(best_gain, gain);
                    if (extended.violations == 0) {
                        eligible.push_back(static_cast<std::int32_t>(j));
                        eligible_gain.push_back(gain);
                        eligible_raw.push_back(extended);
                    }
                }
                walk.pop_back();
                if (eligible.empty()) break;

                weights.assign(eligible.size(), 0.0);
                for (std::size_t k = 0; k < eligible.size(); ++k) {
                    const double eta = best_gain > 0.0
                                           ? std::max(eligible_gain[k] / best_gain, kEtaFloor)
                                           : kEtaFloor;
                    weights[k] = std::pow(tau(static_cast<std::size_t>(current),
                                              static_cast<std::size_t>(eligible[k])),
                                          cfg.alpha) *
                                 std::pow(eta, cfg.beta);
                }
                const std::size_t pick = rng.weighted_index(weights);
                current = eligible[pick];
                walk.push_back(current);
                in_schedule[static_cast<std::size_t>(current)] = 1;
                raw = eligible_raw[pick];
                fitness = ScheduleEvaluator::scalar_fitness(raw);
            }

            result.evals += 1;
            const bool complete = walk.size() == n_requirements;
            if (complete) {
                Genome genome(n_requirements);
                for (const std::int32_t member : walk) {
                    const auto req = static_cast<std::size_t>(
                        ctx.candidates.candidate_requirement[static_cast<std::size_t>(member)]);
                    genome[req] = gene_of[static_cast<std::size_t>(member)];
                }
                archive.offer(genome, raw);
            }
            if (walk.size() > best_coverage ||
                (walk.size() == best_coverage && fitness > best_fitness)) {
                best_coverage = walk.size();
                best_fitness = fitness;
                best_walk = walk;
            }
        }

        mmas_update(pheromone, n, best_walk, best_fitness, cfg.rho, tau_min, tau_max);

        result.telemetry.push_back({result.iterations, result.evals, 0, 0.0, archive.size()});
        ++result.iterations;
    }

    result.front = archive.sorted_entries();
    return result;
}

} // namespace iotsched::search
