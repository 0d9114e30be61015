#include "iotsched/search/random_search.hpp"

#include <chrono>
#include <limits>

#include "iotsched/search/genome.hpp"

namespace iotsched::search {

RunResult random_search_run(const ScenarioContext& ctx, const SearchConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    auto out_of_time = [&] {
        const auto elapsed = std::chrono::steady_clock::now() - t0;
        return std::chrono::duration_cast<std::chrono::seconds>(elapsed).count() >=
               cfg.wallclock_cap_seconds;
    };

    ScheduleEvaluator evaluator(ctx);
    Rng rng(cfg.rng_seed);
    const auto n_p = static_cast<std::size_t>(cfg.population_size);

    RunResult result;
    result.algorithm = "rs";
    result.seed = cfg.rng_seed;
    ParetoArchive archive;

    while (result.evals + static_cast<long long>(n_p) <= cfg.eval_budget && !out_of_time()) {
        const auto batch = init_population(cfg, ctx.candidates, rng);
        const auto raws = evaluate_batch(evaluator, batch, cfg.threads);
        result.evals += static_cast<long long>(batch.size());

        int min_v = std::numeric_limits<int>::max();
        double sum_v = 0.0;
        for (std::size_t i = 0; i < batch.size(); ++i) {
            archive.offer(batch[i], raws[i]);
            min_v = std::min(min_v, raws[i].violations);
            sum_v += static_cast<double>(raws[i].violations);
        }
        result.telemetry.push_back({result.iterations, result.evals, min_v,
                                    sum_v / static_cast<double>(batch.size()), archive.size()});
        ++result.iterations;
    }

    result.front = archive.sorted_entries();
    return result;
}

} // namespace iotsched::search
