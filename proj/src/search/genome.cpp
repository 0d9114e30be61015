#include "iotsched/search/genome.hpp"

#include <algorithm>
#include <stdexcept>

namespace iotsched::search {

ProcedureSchedule decode(const Genome& g, const CandidateSet& cands) {
    if (g.size() != cands.by_requirement.size())
        throw std::invalid_argument("genome length does not match requirement count");
    ProcedureSchedule s;
    s.procedures.reserve(g.size());
    for (std::size_t r = 0; r < g.size(); ++r) {
        const auto& group = cands.by_requirement[r];
        if (g[r] < 0 || static_cast<std::size_t>(g[r]) >= group.size())
            throw std::out_of_range("gene " + std::to_string(r) + " value " +
                                    std::to_string(g[r]) + " outside candidate list");
        s.procedures.push_back(
            cands.candidates[static_cast<std::size_t>(group[static_cast<std::size_t>(g[r])])]);
    }
    return s;
}

Genome encode(const ProcedureSchedule& s, const CandidateSet& cands) {
    Genome g(cands.by_requirement.size(), -1);
    for (const auto& p : s.procedures) {
        bool found = false;
        for (std::size_t r = 0; r < cands.by_requirement.size() && !found; ++r) {
            const auto& group = cands.by_requirement[r];
            for (std::size_t k = 0; k < group.size(); ++k) {
                if (cands.candidates[static_cast<std::size_t>(group[k])].id == p.id) {
                    g[r] = static_cast<std::int32_t>(k);
                    found = true;
                    break;
                }
            }
        }
        if (!found) throw std::invalid_argument("procedure " + p.id + " is not a candidate");
    }
    for (std::size_t r = 0; r < g.size(); ++r) {
        if (g[r] < 0)
            throw std::invalid_argument("schedule does not cover requirement " +
                                        cands.requirements[r].label());
    }
    return g;
}

std::vector<Genome> init_population(const SearchConfig& cfg, const CandidateSet& cands, Rng& rng) {
    cfg.validate();
    for (std::size_t r = 0; r < cands.by_requirement.size(); ++r) {
        if (cands.by_requirement[r].empty())
            throw InfeasibleScenarioError({cands.requirements[r]});
    }
    std::vector<Genome> population;
    population.reserve(static_cast<std::size_t>(cfg.population_size));
    for (int i = 0; i < cfg.population_size; ++i) {
        Genome g(cands.by_requirement.size());
        for (std::size_t r = 0; r < g.size(); ++r) {
            g[r] = static_cast<std::int32_t>(
                rng.uniform_index(static_cast<std::uint32_t>(cands.by_requirement[r].size())));
        }
        population.push_back(std::move(g));
    }
    return population;
}

std::pair<Genome, Genome> crossover_one_point(const Genome& a, const Genome& b, Rng& rng) {
    if (a.size() != b.size()) throw std::invalid_argument("crossover: genome lengths differ");
    if (a.size() < 2) return {a, b};
    const std::size_t cut = 1 + rng.uniform_index(static_cast<std::uint32_t>(a.size() - 1));
    Genome left(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(cut));
    left.insert(left.end(), b.begin() + static_cast<std::ptrdiff_t>(cut), b.end());
    Genome right(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(cut));
    right.insert(right.end(), a.begin() + static_cast<std::ptrdiff_t>(cut), a.end());
    return {std::move(left), std::move(right)};
}

double mutation_p_nc(int conflict_count, std::size_t schedule_size, const SearchConfig& cfg) {
    if (schedule_size == 0) return cfg.p_nc_max;
    // conflict pairs can outnumber procedures; keep the ratio in [0, 1]
    const double ratio = std::clamp(
        1.0 - static_cast<double>(conflict_count) / static_cast<double>(schedule_size), 0.0, 1.0);
    return cfg.p_nc_min + ratio * (cfg.p_nc_max - cfg.p_nc_min);
}

Genome mutate(const Genome& g, const CandidateSet& cands, const ConflictGraph& graph,
              const SearchConfig& cfg, Rng& rng) {
    if (!rng.bernoulli(cfg.mutation_prob)) return g;
    if (g.empty()) return g;

    const std::size_t pos = rng.uniform_index(static_cast<std::uint32_t>(g.size()));
    const auto& group = cands.by_requirement[pos];
    if (group.size() < 2) return g; // nothing eligible to swap in

    // resolve the current schedule to candidate vertices
    std::vector<std::int32_t> chosen(g.size());
    for (std::size_t r = 0; r < g.size(); ++r) {
        chosen[r] = cands.by_requirement[r][static_cast<std::size_t>(g[r])];
    }
    const int conflicts = graph.violation_count(chosen);
    const double p_nc = mutation_p_nc(conflicts, g.size(), cfg);
    const double p_c = 1.0 - p_nc;

    std::vector<std::int32_t> eligible;
    std::vector<double> weights;
    eligible.reserve(group.size() - 1);
    weights.reserve(group.size() - 1);
    for (std::size_t k = 0; k < group.size(); ++k) {
        if (static_cast<std::int32_t>(k) == g[pos]) continue;
        const std::int32_t candidate = group[k];
        bool clashes = false;
        for (std::size_t r = 0; r < chosen.size(); ++r) {
            if (r == pos) continue;
            if (graph.has_edge(candidate, chosen[r])) {
                clashes = true;
                break;
            }
        }
        eligible.push_back(static_cast<std::int32_t>(k));
        weights.push_back(clashes ? p_c : p_nc);
    }

    double total = 0.0;
    for (double w : weights) total += w;
    Genome mutated = g;
    if (total <= 0.0) {
        // every weight zero (p_nc_max == 1 and all eligible conflict): uniform fallback
        mutated[pos] = eligible[rng.uniform_index(static_cast<std::uint32_t>(eligible.size()))];
    } else {
        mutated[pos] = eligible[rng.weighted_index(weights)];
    }
    return mutated;
}

} // namespace iotsched::search
