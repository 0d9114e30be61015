#include "iotsched/search/nsga3.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "iotsched/search/genome.hpp"
#include "iotsched/search/refpoints.hpp"

namespace iotsched::search {

namespace {

struct Individual {
    Genome genome;
    RawFitness raw;
    std::array<double, 3> objectives{}; // minimized, penalty applied
};

/// Recomputes penalized objectives for a set of individuals against the
/// feasible maxima of that same set.
void apply_penalties(std::vector<Individual>& pool) {
    std::array<double, 3> maxima = {1.0, 1.0, 1.0};
    bool any = false;
    for (const auto& ind : pool) {
        if (!ind.raw.feasible()) continue;
        const std::array<double, 3> m = {1.0 - ind.raw.use, 1.0 - ind.raw.frag, ind.raw.cost};
        if (!any) {
            maxima = m;
            any = true;
        } else {
            for (std::size_t k = 0; k < 3; ++k) maxima[k] = std::max(maxima[k], m[k]);
        }
    }
    for (auto& ind : pool) {
        if (ind.raw.feasible()) {
            ind.objectives = {1.0 - ind.raw.use, 1.0 - ind.raw.frag, ind.raw.cost};
        } else {
            const double g = static_cast<double>(ind.raw.violations);
            for (std::size_t k = 0; k < 3; ++k) ind.objectives[k] = maxima[k] + g;
        }
    }
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(const std::vector<Individual>& pool) {
    const std::size_t n = pool.size();
    std::vector<int> domination_count(n, 0);
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<std::vector<std::size_t>> fronts(1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(pool[i].objectives, pool[j].objectives)) {
                dominated[i].push_back(j);
                ++domination_count[j];
            } else if (dominates(pool[j].objectives, pool[i].objectives)) {
                dominated[j].push_back(i);
                ++domination_count[i];
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (domination_count[i] == 0) fronts[0].push_back(i);
    }
    std::size_t assigned = fronts[0].size();
    while (assigned < n) {
        const auto& current = fronts.back();
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            for (std::size_t j : dominated[i]) {
                if (--domination_count[j] == 0) next.push_back(j);
            }
        }
        std::sort(next.begin(), next.end());
        assigned += next.size();
        fronts.push_back(std::move(next));
    }
    return fronts;
}

double asf(const std::array<double, 3>& f, std::size_t axis) {
    double worst = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        const double w = k == axis ? 1.0 : 1e-6;
        worst = std::max(worst, f[k] / w);
    }
    return worst;
}

/// Deb-Jain normalization: translate by the ideal point and divide by the
/// intercepts of the plane through the extreme points, falling back to the
/// per-objective maxima when the plane is degenerate.
std::vector<std::array<double, 3>> normalize(const std::vector<Individual>& pool,
                                             const std::vector<std::size_t>& considered) {
    std::array<double, 3> ideal = {std::numeric_limits<double>::infinity(),
                                   std::numeric_limits<double>::infinity(),
                                   std::numeric_limits<double>::infinity()};
    for (std::size_t i : considered) {
        for (std::size_t k = 0; k < 3; ++k) ideal[k] = std::min(ideal[k], pool[i].objectives[k]);
    }

    std::array<std::array<double, 3>, 3> extreme{};
    for (std::size_t axis = 0; axis < 3; ++axis) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i : considered) {
            std::array<double, 3> t;
            for (std::size_t k = 0; k < 3; ++k) t[k] = pool[i].objectives[k] - ideal[k];
            const double v = asf(t, axis);
            if (v < best) {
                best = v;
                extreme[axis] = t;
            }
        }
    }

    std::array<double, 3> intercepts;
    bool ok = true;
    {
        // solve extreme * a = 1 by Gaussian elimination
        std::array<std::array<double, 4>, 3> m{};
        for (std::size_t r = 0; r < 3; ++r) {
            for (std::size_t c = 0; c < 3; ++c) m[r][c] = extreme[r][c];
            m[r][3] = 1.0;
        }
        for (std::size_t col = 0; col < 3 && ok; ++col) {
            std::size_t pivot = col;
            for (std::size_t r = col + 1; r < 3; ++r) {
                if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
            }
            if (std::fabs(m[pivot][col]) < 1e-12) {
                ok = false;
                break;
            }
            std::swap(m[col], m[pivot]);
            for (std::size_t r = 0; r < 3; ++r) {
                if (r == col) continue;
                const double factor = m[r][col] / m[col][col];
                for (std::size_t c = col; c < 4; ++c) m[r][c] -= factor * m[col][c];
            }
        }
        if (ok) {
            for (std::size_t k = 0; k < 3; ++k) {
                const double a = m[k][3] / m[k][k];
                if (!(a > 1e-12)) {
                    ok = false;
                    break;
                }
                intercepts[k] = 1.0 / a;
            }
        }
    }
    if (!ok) {
        intercepts = {0.0, 0.0, 0.0};
        for (std::size_t i : considered) {
            for (std::size_t k = 0; k < 3; ++k)
                intercepts[k] = std::max(intercepts[k], pool[i].objectives[k] - ideal[k]);
        }
    }
    for (std::size_t k = 0; k < 3; ++k) intercepts[k] = std::max(intercepts[k], 1e-12);

    std::vector<std::array<double, 3>> normalized(pool.size());
    for (std::size_t i : considered) {
        for (std::size_t k = 0; k < 3; ++k)
            normalized[i][k] = (pool[i].objectives[k] - ideal[k]) / intercepts[k];
    }
    return normalized;
}

double perpendicular_distance(const std::array<double, 3>& point,
                              const std::array<double, 3>& direction) {
    double dot = 0.0;
    double norm2 = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        dot += point[k] * direction[k];
        norm2 += direction[k] * direction[k];
    }
    const double t = dot / norm2;
    double dist2 = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        const double d = point[k] - t * direction[k];
        dist2 += d * d;
    }
    return std::sqrt(dist2);
}

struct Association {
    std::size_t ref = 0;
    double distance = 0.0;
};

/// Niche-preserving truncation of the last admitted front.
std::vector<std::size_t> niche_select(const std::vector<Individual>& pool,
                                      const std::vector<std::size_t>& selected,
                                      const std::vector<std::size_t>& last_front, std::size_t need,
                                      const std::vector<std::array<double, 3>>& refs, Rng& rng) {
    std::vector<std::size_t> considered = selected;
    considered.insert(considered.end(), last_front.begin(), last_front.end());
    const auto normalized = normalize(pool, considered);

    std::vector<Association> assoc(pool.size());
    for (std::size_t i : considered) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_ref = 0;
        for (std::size_t r = 0; r < refs.size(); ++r) {
            const double d = perpendicular_distance(normalized[i], refs[r]);
            if (d < best) {
                best = d;
                best_ref = r;
            }
        }
        assoc[i] = {best_ref, best};
    }

    std::vector<int> niche_count(refs.size(), 0);
    for (std::size_t i : selected) ++niche_count[assoc[i].ref];

    std::vector<std::vector<std::size_t>> members(refs.size());
    for (std::size_t i : last_front) members[assoc[i].ref].push_back(i);

    std::vector<bool> excluded(refs.size(), false);
    std::vector<std::size_t> picked;
    picked.reserve(need);
    while (picked.size() < need) {
        int min_count = std::numeric_limits<int>::max();
        for (std::size_t r = 0; r < refs.size(); ++r) {
            if (!excluded[r]) min_count = std::min(min_count, niche_count[r]);
        }
        std::vector<std::size_t> tied;
        for (std::size_t r = 0; r < refs.size(); ++r) {
            if (!excluded[r] && niche_count[r] == min_count) tied.push_back(r);
        }
        const std::size_t ref = tied[rng.uniform_index(static_cast<std::uint32_t>(tied.size()))];
        auto& pool_members = members[ref];
        if (pool_members.empty()) {
            excluded[ref] = true;
            continue;
        }
        std::size_t chosen_pos = 0;
        if (niche_count[ref] == 0) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t p = 0; p < pool_members.size(); ++p) {
                if (assoc[pool_members[p]].distance < best) {
                    best = assoc[pool_members[p]].distance;
                    chosen_pos = p;
                }
            }
        } else {
            chosen_pos = rng.uniform_index(static_cast<std::uint32_t>(pool_members.size()));
        }
        picked.push_back(pool_members[chosen_pos]);
        pool_members.erase(pool_members.begin() + static_cast<std::ptrdiff_t>(chosen_pos));
        ++niche_count[ref];
    }
    return picked;
}

std::vector<Individual> environmental_selection(std::vector<Individual> merged, std::size_t n_keep,
                                                const std::vector<std::array<double, 3>>& refs,
                                                Rng& rng) {
    apply_penalties(merged);
    const auto fronts = fast_nondominated_sort(merged);
    std::vector<std::size_t> selected;
    selected.reserve(n_keep);
    std::size_t level = 0;
    while (level < fronts.size() && selected.size() + fronts[level].size() <= n_keep) {
        selected.insert(selected.end(), fronts[level].begin(), fronts[level].end());
        ++level;
    }
    if (selected.size() < n_keep && level < fronts.size()) {
        const auto extra =
            niche_select(merged, selected, fronts[level], n_keep - selected.size(), refs, rng);
        selected.insert(selected.end(), extra.begin(), extra.end());
    }
    std::vector<Individual> kept;
    kept.reserve(selected.size());
    for (std::size_t i : selected) kept.push_back(std::move(merged[i]));
    return kept;
}

const Individual& tournament(const std::vector<Individual>& parents, Rng& rng) {
    const auto& a = parents[rng.uniform_index(static_cast<std::uint32_t>(parents.size()))];
    const auto& b = parents[rng.uniform_index(static_cast<std::uint32_t>(parents.size()))];
    if (dominates(a.objectives, b.objectives)) return a;
    if (dominates(b.objectives, a.objectives)) return b;
    return rng.bernoulli(0.5) ? a : b;
}

int min_violations(const std::vector<Individual>& pool) {
    int best = std::numeric_limits<int>::max();
    for (const auto& ind : pool) best = std::min(best, ind.raw.violations);
    return best;
}

double mean_violations(const std::vector<RawFitness>& raws) {
    if (raws.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& r : raws) sum += static_cast<double>(r.violations);
    return sum / static_cast<double>(raws.size());
}

} // namespace

RunResult nsga3_run(const ScenarioContext& ctx, const SearchConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    auto out_of_time = [&] {
        const auto elapsed = std::chrono::steady_clock::now() - t0;
        return std::chrono::duration_cast<std::chrono::seconds>(elapsed).count() >=
               cfg.wallclock_cap_seconds;
    };

    ScheduleEvaluator evaluator(ctx);
    Rng rng(cfg.rng_seed);
    const auto refs = reference_points(cfg.reference_point_count, cfg.ref_point_method);
    const auto n_p = static_cast<std::size_t>(cfg.population_size);

    RunResult result;
    result.algorithm = "nsga3";
    result.seed = cfg.rng_seed;
    ParetoArchive archive;

    auto genomes = init_population(cfg, ctx.candidates, rng);
    auto raws = evaluate_batch(evaluator, genomes, cfg.threads);
    result.evals += static_cast<long long>(genomes.size());

    std::vector<Individual> parents(n_p);
    for (std::size_t i = 0; i < n_p; ++i) {
        parents[i] = {std::move(genomes[i]), raws[i], {}};
        archive.offer(parents[i].genome, raws[i]);
    }
    apply_penalties(parents);

    result.telemetry.push_back({0, result.evals, min_violations(parents), mean_violations(raws),
                                archive.size()});
    result.iterations = 1;

    while (result.evals + static_cast<long long>(n_p) <= cfg.eval_budget && !out_of_time()) {
        std::vector<Genome> offspring;
        offspring.reserve(n_p);
        while (offspring.size() < n_p) {
            const Individual& p1 = tournament(parents, rng);
            const Individual& p2 = tournament(parents, rng);
            Genome c1;
            Genome c2;
            if (rng.bernoulli(cfg.crossover_prob)) {
                std::tie(c1, c2) = crossover_one_point(p1.genome, p2.genome, rng);
            } else {
                c1 = p1.genome;
                c2 = p2.genome;
            }
            offspring.push_back(mutate(c1, ctx.candidates, ctx.graph, cfg, rng));
            if (offspring.size() < n_p)
                offspring.push_back(mutate(c2, ctx.candidates, ctx.graph, cfg, rng));
        }

        raws = evaluate_batch(evaluator, offspring, cfg.threads);
        result.evals += static_cast<long long>(offspring.size());

        std::vector<Individual> merged;
        merged.reserve(parents.size() + offspring.size());
        for (auto& p : parents) merged.push_back(std::move(p));
        for (std::size_t i = 0; i < offspring.size(); ++i) {
            archive.offer(offspring[i], raws[i]);
            merged.push_back({std::move(offspring[i]), raws[i], {}});
        }
        parents = environmental_selection(std::move(merged), n_p, refs, rng);

        result.telemetry.push_back({result.iterations, result.evals, min_violations(parents),
                                    mean_violations(raws), archive.size()});
        ++result.iterations;
    }

    result.front = archive.sorted_entries();
    return result;
}

} // namespace iotsched::search
