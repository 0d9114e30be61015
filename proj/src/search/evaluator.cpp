#include "iotsched/search/evaluator.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace iotsched::search {

ScenarioContext ScenarioContext::prepare(CampaignSpec spec, PassCatalog catalog,
                                         SlottingPolicy slotting) {
    spec.validate();
    catalog.validate();
    slotting.validate();
    ScenarioContext ctx;
    ctx.candidates = generate_candidates(catalog, spec);
    ctx.graph = ConflictGraph::build(ctx.candidates);
    ctx.cost = derive_cost_bounds(spec.cost_model, ctx.candidates, spec.config_time());
    ctx.slotting = slotting;
    ctx.spec = std::move(spec);
    ctx.catalog = std::move(catalog);
    return ctx;
}

ScheduleEvaluator::ScheduleEvaluator(const ScenarioContext& ctx) : ctx_(&ctx) {
    const auto& cands = ctx.candidates.candidates;
    start_s_.reserve(cands.size());
    end_s_.reserve(cands.size());
    duration_s_.reserve(cands.size());
    candidate_slot_.reserve(cands.size());
    for (const auto& c : cands) {
        start_s_.push_back(c.t_start.epoch_seconds());
        end_s_.push_back(c.t_end.epoch_seconds());
        duration_s_.push_back(c.duration().seconds());
        candidate_slot_.push_back(generate_slot(c, ctx.slotting));
    }
    delta_c_s_ = ctx.spec.config_time().seconds();
}

RawFitness ScheduleEvaluator::eval_genome(std::span<const std::int32_t> genes) const {
    const auto& by_req = ctx_->candidates.by_requirement;
    if (genes.size() != by_req.size())
        throw std::invalid_argument("genome length does not match requirement count");
    std::vector<std::int32_t> chosen(genes.size());
    for (std::size_t r = 0; r < genes.size(); ++r) {
        const auto& group = by_req[r];
        if (genes[r] < 0 || static_cast<std::size_t>(genes[r]) >= group.size())
            throw std::out_of_range("gene " + std::to_string(r) + " value " +
                                    std::to_string(genes[r]) + " outside candidate list");
        chosen[r] = group[static_cast<std::size_t>(genes[r])];
    }
    return eval_candidates(chosen);
}

RawFitness ScheduleEvaluator::eval_candidates(std::span<const std::int32_t> ids,
                                              bool force_arithmetic) const {
    RawFitness raw;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            if (ctx_->graph.has_edge(ids[i], ids[j])) ++raw.violations;
        }
    }
    if (raw.violations > 0 && !force_arithmetic) return raw;
    if (ids.empty()) throw std::invalid_argument("cannot evaluate an empty schedule");

    std::int64_t first = start_s_[static_cast<std::size_t>(ids[0])];
    std::int64_t last = end_s_[static_cast<std::size_t>(ids[0])];
    std::int64_t busy = 0;
    std::vector<Slot> slots;
    slots.reserve(ids.size());
    for (const std::int32_t id : ids) {
        const auto k = static_cast<std::size_t>(id);
        first = std::min(first, start_s_[k]);
        last = std::max(last, end_s_[k]);
        busy += duration_s_[k];
        slots.push_back(candidate_slot_[k]);
    }
    const double span = static_cast<double>(last - first);
    raw.use = (static_cast<double>(ids.size() - 1) * static_cast<double>(delta_c_s_) +
               static_cast<double>(busy)) /
              span;

    const auto sanitized = sanitize_slots(std::move(slots), ctx_->slotting);
    raw.frag = ids.size() <= 1 ? 1.0
                               : 1.0 - (static_cast<double>(sanitized.size()) - 1.0) /
                                           (static_cast<double>(ids.size()) - 1.0);
    raw.cost = fit_cost(SlotSchedule{sanitized}, ctx_->cost);
    return raw;
}

FitnessVector ScheduleEvaluator::finish(const RawFitness& raw,
                                        const std::array<double, 3>& pop_feasible_max) const {
    FitnessVector fv;
    fv.violations = raw.violations;
    if (raw.violations > 0) {
        const double g = static_cast<double>(raw.violations);
        for (std::size_t k = 0; k < 3; ++k) fv.minimized[k] = pop_feasible_max[k] + g;
        return fv;
    }
    fv.use = raw.use;
    fv.frag = raw.frag;
    fv.cost = raw.cost;
    fv.minimized = {1.0 - raw.use, 1.0 - raw.frag, raw.cost};
    return fv;
}

double ScheduleEvaluator::scalar_fitness(const RawFitness& raw) {
    return (raw.use + raw.frag + (1.0 - raw.cost)) / 3.0;
}

std::vector<RawFitness> evaluate_batch(const ScheduleEvaluator& evaluator,
                                       std::span<const Genome> genomes, int threads) {
    std::vector<RawFitness> results(genomes.size());
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(genomes.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < genomes.size(); ++i)
            results[i] = evaluator.eval_genome(genomes[i]);
        return results;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = static_cast<std::size_t>(w); i < genomes.size();
                 i += static_cast<std::size_t>(workers)) {
                results[i] = evaluator.eval_genome(genomes[i]);
            }
        });
    }
    for (auto& t : pool) t.join();
    return results;
}

std::array<double, 3> feasible_maxima(std::span<const RawFitness> raws) {
    std::array<double, 3> maxima = {1.0, 1.0, 1.0};
    bool any = false;
    for (const auto& raw : raws) {
        if (!raw.feasible()) continue;
        const std::array<double, 3> minimized = {1.0 - raw.use, 1.0 - raw.frag, raw.cost};
        if (!any) {
            maxima = minimized;
            any = true;
        } else {
            for (std::size_t k = 0; k < 3; ++k) maxima[k] = std::max(maxima[k], minimized[k]);
        }
    }
    return maxima;
}

} // namespace iotsched::search
