// Acceptance suite: exercises the campaign-level behaviors end to end and
// prints one PASS/FAIL line per criterion. Exit status is non-zero when any
// criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "iotsched/json_io.hpp"
#include "iotsched/metrics.hpp"
#include "iotsched/search/aco.hpp"
#include "iotsched/search/genome.hpp"
#include "iotsched/search/nsga3.hpp"
#include "iotsched/search/random_search.hpp"
#include "../support/scenarios.hpp"

using namespace iotsched;

namespace {

struct Outcome {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<Outcome> g_outcomes;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    g_outcomes.push_back({id, name, pass, detail});
}

template <typename Fn>
void criterion(int id, const std::string& name, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        report(id, name, false, std::string("exception: ") + e.what());
    }
}

bool near(double a, double b, double tol = 1e-9) { return std::fabs(a - b) <= tol; }

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n == 0 ? 0.0 : (n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]));
}

const Instant kDay = instant_utc(2024, 10, 1);

Instant at(unsigned h, unsigned m = 0) { return kDay + Duration::of_seconds(h * 3600 + m * 60); }

TestProcedure proc(const std::string& id, const std::string& sat, Instant start, Instant end,
                   int config_minutes, ProcedureType type = ProcedureType::Sqm) {
    TestProcedure p;
    p.id = id;
    p.proc_type = type;
    p.t_start = start;
    p.t_end = end;
    p.config_time = Duration::of_minutes(config_minutes);
    p.pass.satellite_id = sat;
    p.pass.site_id = "gs1";
    p.pass.t_start = start - Duration::of_hours(3);
    p.pass.t_max = start;
    p.pass.t_end = end + Duration::of_hours(3);
    p.pass.theta_start = 4;
    p.pass.theta_max = 50;
    p.pass.theta_end = 4;
    return p;
}

// ---------------------------------------------------------------------------
// 1. formula fidelity
// ---------------------------------------------------------------------------
void criterion_1() {
    ProcedureSchedule use_example{{proc("a", "s01", at(0), at(3), 60),
                                   proc("b", "s02", at(5), at(9), 60),
                                   proc("c", "s03", at(13), at(15), 60)}};
    const double use = fit_use(use_example, Duration::of_hours(1));

    ProcedureSchedule four;
    for (int i = 0; i < 4; ++i)
        four.procedures.push_back(proc("p" + std::to_string(i), "s0" + std::to_string(i + 1),
                                       at(static_cast<unsigned>(6 * i)),
                                       at(static_cast<unsigned>(6 * i + 1)), 15));
    SlotSchedule two_slots{{{at(0), at(7)}, {at(12), at(19)}}};
    const double frag = fit_frag(four, two_slots);

    CostModel m;
    const double cost_120 = cost_of(SlotSchedule{{{at(10), at(12)}}}, m);
    const double cost_day = cost_of(SlotSchedule{{{at(0), at(24)}}}, m);

    const std::vector<double> sample = {0.3, 0.5, 0.9, 1.4};
    const double a12 = metrics::vargha_delaney_a12(sample, sample);

    const bool pass = near(frag, 1.0 - 1.0 / 3.0) && near(cost_120, 912.0) &&
                      near(cost_day, 3561.0) && near(a12, 0.5) && near(use, 11.0 / 15.0);
    std::ostringstream detail;
    detail << "frag=" << frag << " (0.667), cost(120min)=" << cost_120
           << ", cost(24h)=" << cost_day << ", A12(identical)=" << a12 << ", use=" << use
           << " (11/15)";
    report(1, "formula fidelity", pass, detail.str());
}

// ---------------------------------------------------------------------------
// 2. conflict oracle
// ---------------------------------------------------------------------------
bool oracle_pair(const TestProcedure& a, const TestProcedure& b) {
    if (a.proc_type == b.proc_type && a.pass.satellite_id == b.pass.satellite_id) return true;
    const std::int64_t as = a.t_start.epoch_seconds(), ae = a.t_end.epoch_seconds();
    const std::int64_t bs = b.t_start.epoch_seconds(), be = b.t_end.epoch_seconds();
    if (std::max(as, bs) < std::min(ae, be)) return true;
    if (ae <= bs) return bs - ae < b.config_time.seconds();
    return as - be < a.config_time.seconds();
}

void criterion_2() {
    std::mt19937_64 rng(20240101);
    long long checked_pairs = 0;
    for (int scenario = 0; scenario < 100; ++scenario) {
        CandidateSet set;
        const int n_reqs = 2 + static_cast<int>(rng() % 6);
        const int n = std::max(n_reqs, 6 + static_cast<int>(rng() % 25));
        for (int r = 0; r < n_reqs; ++r) {
            set.requirements.push_back({"s" + std::to_string(r % 4 + 1),
                                        (r / 4) % 2 == 0 ? ProcedureType::Sqm
                                                         : ProcedureType::Riot});
        }
        set.by_requirement.resize(set.requirements.size());
        for (int i = 0; i < n; ++i) {
            const int r = static_cast<int>(rng() % static_cast<std::uint64_t>(n_reqs));
            const auto& req = set.requirements[static_cast<std::size_t>(r)];
            const auto start =
                at(static_cast<unsigned>(rng() % 40), static_cast<unsigned>(rng() % 60));
            const auto len = Duration::of_minutes(15 + static_cast<std::int64_t>(rng() % 150));
            set.candidates.push_back(proc("c" + std::to_string(i), req.satellite_id, start,
                                          start + len, static_cast<int>(rng() % 30),
                                          req.proc_type));
            set.by_requirement[static_cast<std::size_t>(r)].push_back(
                static_cast<std::int32_t>(i));
            set.candidate_requirement.push_back(r);
        }
        const auto g = build_graph(set);

        for (int draw = 0; draw < 10; ++draw) {
            ProcedureSchedule s;
            std::vector<std::size_t> picked;
            for (int i = 0; i < n; ++i) {
                if (rng() % 3 == 0) {
                    s.procedures.push_back(set.candidates[static_cast<std::size_t>(i)]);
                    picked.push_back(static_cast<std::size_t>(i));
                }
            }
            int expected = 0;
            for (std::size_t i = 0; i < picked.size(); ++i) {
                for (std::size_t j = i + 1; j < picked.size(); ++j) {
                    expected += oracle_pair(set.candidates[picked[i]],
                                            set.candidates[picked[j]])
                                    ? 1
                                    : 0;
                    ++checked_pairs;
                }
            }
            if (violation_count(s, g) != expected || feasible(s, g) != (expected == 0)) {
                report(2, "conflict oracle", false,
                       "mismatch against the all-pairs oracle in scenario " +
                           std::to_string(scenario));
                return;
            }
        }
    }
    report(2, "conflict oracle", true,
           "100 random scenarios, " + std::to_string(checked_pairs) + " pairs, exact agreement");
}

// ---------------------------------------------------------------------------
// 3 + 4. search vs random baseline and the feasibility trajectory
// ---------------------------------------------------------------------------
struct Exp1Data {
    std::vector<search::RunResult> nsga;
    std::vector<search::RunResult> rs;
};

Exp1Data run_exp1(const search::ScenarioContext& ctx) {
    Exp1Data data;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        search::SearchConfig cfg;
        cfg.eval_budget = 10000;
        cfg.rng_seed = seed;
        data.nsga.push_back(search::nsga3_run(ctx, cfg));
        data.rs.push_back(search::random_search_run(ctx, cfg));
    }
    return data;
}

void criterion_3_and_4(const Exp1Data& data) {
    std::vector<metrics::Front> fronts;
    auto front_of = [](const search::RunResult& r, const std::string& tag) {
        metrics::Front f;
        f.provenance = tag;
        for (const auto& e : r.front) f.points.push_back(e.fitness.minimized);
        return f;
    };
    for (std::size_t i = 0; i < data.nsga.size(); ++i)
        fronts.push_back(front_of(data.nsga[i], "nsga3-" + std::to_string(i)));
    for (std::size_t i = 0; i < data.rs.size(); ++i)
        fronts.push_back(front_of(data.rs[i], "rs-" + std::to_string(i)));
    const auto reference = metrics::reference_front(fronts);
    const metrics::Point hv_ref = {1.1, 1.1, 1.1};

    std::vector<double> hv_nsga, hv_rs, gd_nsga, gd_rs;
    for (std::size_t i = 0; i < data.nsga.size(); ++i) {
        hv_nsga.push_back(metrics::hypervolume(fronts[i], hv_ref));
        gd_nsga.push_back(metrics::gd(fronts[i], reference));
    }
    for (std::size_t i = 0; i < data.rs.size(); ++i) {
        hv_rs.push_back(metrics::hypervolume(fronts[data.nsga.size() + i], hv_ref));
        gd_rs.push_back(metrics::gd(fronts[data.nsga.size() + i], reference));
    }

    const auto hv_test = metrics::mann_whitney_u(hv_nsga, hv_rs);
    const auto gd_test = metrics::mann_whitney_u(gd_nsga, gd_rs);
    const double hv_a12 = metrics::vargha_delaney_a12(hv_nsga, hv_rs); // higher HV is better
    const double gd_a12 = metrics::vargha_delaney_a12(gd_rs, gd_nsga); // lower GD is better

    bool nsga_all_feasible = true;
    for (const auto& r : data.nsga) {
        for (const auto& e : r.front) nsga_all_feasible = nsga_all_feasible && e.fitness.feasible();
    }
    double rs_mean_violations = 0.0;
    long long rows = 0;
    for (const auto& r : data.rs) {
        for (const auto& row : r.telemetry) {
            rs_mean_violations += row.mean_violations;
            ++rows;
        }
    }
    rs_mean_violations /= static_cast<double>(rows);

    const bool pass = hv_test.p_value < 0.05 && gd_test.p_value < 0.05 && hv_a12 >= 0.9 &&
                      gd_a12 >= 0.9 && nsga_all_feasible && rs_mean_violations > 0.0;
    std::ostringstream detail;
    detail << "HV p=" << hv_test.p_value << " A12=" << hv_a12 << " (mean "
           << mean_of(hv_nsga) << " vs " << mean_of(hv_rs) << "); GD p=" << gd_test.p_value
           << " A12=" << gd_a12 << " (mean " << mean_of(gd_nsga) << " vs " << mean_of(gd_rs)
           << "); fronts feasible=" << (nsga_all_feasible ? "yes" : "no")
           << "; rs mean violations=" << rs_mean_violations;
    report(3, "search beats random baseline", pass, detail.str());

    // criterion 4: minimum violations hit zero early in every seeded run
    const long long planned_iterations =
        10000 / 200; // evaluation budget over population size
    const auto threshold = static_cast<long long>(0.15 * static_cast<double>(planned_iterations));
    bool all_early = true;
    long long worst = -1;
    for (const auto& r : data.nsga) {
        long long reached = -1;
        for (const auto& row : r.telemetry) {
            if (row.min_violations == 0) {
                reached = row.iteration;
                break;
            }
        }
        if (reached < 0 || reached > threshold) all_early = false;
        worst = std::max(worst, reached);
    }
    std::ostringstream d4;
    d4 << "feasible by iteration " << worst << " on all 10 seeds (limit " << threshold << " of "
       << planned_iterations << ")";
    report(4, "feasibility reached early", all_early, d4.str());
}

// ---------------------------------------------------------------------------
// 5. throughput and front size against the ant system under one clock
// ---------------------------------------------------------------------------
void criterion_5(const search::ScenarioContext& ctx) {
    // generous budgets so the shared wall clock is the binding limit
    const long long cap_seconds = 5;
    const long long budget = 10000000;
    std::vector<double> nsga_evals, aco_evals, nsga_front, aco_front;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        search::SearchConfig cfg;
        cfg.eval_budget = budget;
        cfg.wallclock_cap_seconds = cap_seconds;
        cfg.rng_seed = seed;
        const auto nsga = search::nsga3_run(ctx, cfg);
        nsga_evals.push_back(static_cast<double>(nsga.evals));
        std::size_t feasible_members = 0;
        for (const auto& e : nsga.front) feasible_members += e.fitness.feasible() ? 1 : 0;
        nsga_front.push_back(static_cast<double>(feasible_members));

        search::AcoConfig aco;
        aco.eval_budget = budget;
        aco.wallclock_cap_seconds = cap_seconds;
        aco.rng_seed = seed;
        const auto ant = search::aco_run(ctx, aco);
        aco_evals.push_back(static_cast<double>(ant.evals));
        std::size_t ant_feasible = 0;
        for (const auto& e : ant.front) ant_feasible += e.fitness.feasible() ? 1 : 0;
        aco_front.push_back(static_cast<double>(ant_feasible));
    }
    const double nsga_med = median_of(nsga_evals);
    const double aco_med = median_of(aco_evals);
    const double nsga_front_med = median_of(nsga_front);
    const double aco_front_med = median_of(aco_front);
    const bool pass = aco_med > 0.0 && nsga_med >= 10.0 * aco_med &&
                      nsga_front_med > aco_front_med;
    std::ostringstream detail;
    detail << "median evals " << nsga_med << " vs " << aco_med << " under a " << cap_seconds
           << "s cap; median feasible front " << nsga_front_med << " vs " << aco_front_med;
    report(5, "evaluation throughput vs ant system", pass, detail.str());
}

// ---------------------------------------------------------------------------
// 6. slotting invariants
// ---------------------------------------------------------------------------
void criterion_6() {
    SlottingPolicy policy;
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 1000; ++trial) {
        ProcedureSchedule s;
        const int n = 1 + static_cast<int>(rng() % 10);
        for (int i = 0; i < n; ++i) {
            const auto start =
                kDay + Duration::of_seconds(static_cast<std::int64_t>(rng() % (96 * 3600)));
            const auto len = Duration::of_minutes(20 + static_cast<std::int64_t>(rng() % 300));
            s.procedures.push_back(proc("p" + std::to_string(i), "s01", start, start + len,
                                        static_cast<int>(rng() % 30)));
        }
        const auto q = slot_schedule(s, policy);
        for (const auto& p : s.procedures) {
            const Instant cover_start = p.t_start - p.config_time;
            bool covered = false;
            for (const auto& sl : q.slots)
                covered = covered || (sl.t_start <= cover_start && p.t_end <= sl.t_end);
            if (!covered) {
                report(6, "slotting invariants", false, "coverage violated");
                return;
            }
        }
        for (std::size_t i = 0; i < q.slots.size(); ++i) {
            if (q.slots[i].t_start.epoch_seconds() % (15 * 60) != 0 ||
                q.slots[i].length().seconds() % 3600 != 0 ||
                (i > 0 && !(q.slots[i - 1].t_end < q.slots[i].t_start))) {
                report(6, "slotting invariants", false, "alignment/quantum/order violated");
                return;
            }
        }
        if (sanitize_slots(q.slots, policy) != q.slots) {
            report(6, "slotting invariants", false, "pipeline is not idempotent");
            return;
        }
        const auto merged_once = combine_overlapping(q.slots);
        if (combine_overlapping(merged_once) != merged_once ||
            consolidate(merged_once, policy) !=
                consolidate(consolidate(merged_once, policy), policy)) {
            report(6, "slotting invariants", false, "merge/consolidate not idempotent");
            return;
        }
    }

    // strict boundary: exactly six slotted hours in a day never consolidate
    std::vector<Slot> six;
    for (unsigned h = 0; h < 12; h += 2) six.push_back({at(h), at(h + 1)});
    if (consolidate(six, policy) != six) {
        report(6, "slotting invariants", false, "exact six-hour load consolidated");
        return;
    }
    std::vector<Slot> seven = six;
    seven.push_back({at(13), at(14)});
    const auto collapsed = consolidate(seven, policy);
    if (collapsed.size() != 1 || collapsed[0].length().seconds() != 24 * 3600) {
        report(6, "slotting invariants", false, "seven-hour load did not collapse to a day");
        return;
    }
    report(6, "slotting invariants", true,
           "1000 random schedules: coverage, alignment, quanta, idempotence, strict 6h trigger");
}

// ---------------------------------------------------------------------------
// 7. penalty ordering
// ---------------------------------------------------------------------------
void criterion_7(const search::ScenarioContext& ctx) {
    const search::ScheduleEvaluator evaluator(ctx);
    Rng rng(707);
    long long feasible_seen = 0, infeasible_seen = 0;
    for (int population = 0; population < 1000; ++population) {
        std::vector<search::RawFitness> raws;
        std::vector<FitnessVector> vectors;
        search::SearchConfig cfg;
        cfg.population_size = 30;
        auto genomes = search::init_population(cfg, ctx.candidates, rng);
        raws.reserve(genomes.size());
        for (const auto& g : genomes) raws.push_back(evaluator.eval_genome(g));
        const auto maxima = search::feasible_maxima(raws);
        for (const auto& raw : raws) vectors.push_back(evaluator.finish(raw, maxima));

        for (std::size_t i = 0; i < vectors.size(); ++i) {
            for (std::size_t j = 0; j < vectors.size(); ++j) {
                if (i == j) continue;
                const bool fi = vectors[i].feasible();
                const bool fj = vectors[j].feasible();
                if (fi && !fj) {
                    ++feasible_seen;
                    ++infeasible_seen;
                    if (!search::dominates(vectors[i].minimized, vectors[j].minimized)) {
                        report(7, "penalty ordering", false,
                               "feasible individual fails to dominate an infeasible one");
                        return;
                    }
                    // a dominance tournament can therefore never pick the infeasible side
                    const auto& winner =
                        search::dominates(vectors[j].minimized, vectors[i].minimized)
                            ? vectors[j]
                            : vectors[i];
                    if (!winner.feasible()) {
                        report(7, "penalty ordering", false,
                               "tournament preferred an infeasible individual");
                        return;
                    }
                }
            }
        }
    }
    report(7, "penalty ordering", true,
           std::to_string(feasible_seen) + " feasible-vs-infeasible pairs all correctly ordered");
}

// ---------------------------------------------------------------------------
// 8. hypervolume oracle
// ---------------------------------------------------------------------------
void criterion_8() {
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const metrics::Point ref = {1.1, 1.1, 1.1};
    const int samples = 1000000;
    double worst_gap_sigmas = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        metrics::Front f;
        const int n = 1 + static_cast<int>(rng() % 20);
        for (int i = 0; i < n; ++i) f.points.push_back({unit(rng), unit(rng), unit(rng)});
        const double exact = metrics::hypervolume(f, ref);

        int hits = 0;
        for (int s = 0; s < samples; ++s) {
            const metrics::Point p = {unit(rng) * 1.1, unit(rng) * 1.1, unit(rng) * 1.1};
            for (const auto& q : f.points) {
                if (q[0] <= p[0] && q[1] <= p[1] && q[2] <= p[2]) {
                    ++hits;
                    break;
                }
            }
        }
        const double box = 1.1 * 1.1 * 1.1;
        const double p_hat = static_cast<double>(hits) / samples;
        const double estimate = box * p_hat;
        const double sigma =
            box * std::sqrt(std::max(p_hat * (1.0 - p_hat), 1e-12) / samples);
        const double gap = std::fabs(exact - estimate);
        worst_gap_sigmas = std::max(worst_gap_sigmas, gap / sigma);
        if (gap > 3.0 * sigma) {
            std::ostringstream detail;
            detail << "trial " << trial << ": exact " << exact << " vs Monte Carlo " << estimate
                   << " (" << gap / sigma << " sigma)";
            report(8, "hypervolume oracle", false, detail.str());
            return;
        }
    }
    std::ostringstream detail;
    detail << "50 fronts x 1e6 samples, worst deviation " << worst_gap_sigmas << " sigma";
    report(8, "hypervolume oracle", true, detail.str());
}

// ---------------------------------------------------------------------------
// 9. determinism
// ---------------------------------------------------------------------------
void criterion_9(const search::ScenarioContext& ctx) {
    search::SearchConfig cfg;
    cfg.population_size = 50;
    cfg.reference_point_count = 25;
    cfg.eval_budget = 2500;
    cfg.rng_seed = 909;

    auto serialize = [&ctx](const search::RunResult& r) {
        return io::archive_to_json(r, ctx.candidates, ctx.slotting).dump() + "|" +
               io::telemetry_to_json(r).dump();
    };

    const auto base = serialize(search::nsga3_run(ctx, cfg));
    const auto repeat = serialize(search::nsga3_run(ctx, cfg));
    cfg.threads = 4;
    const auto parallel = serialize(search::nsga3_run(ctx, cfg));
    cfg.threads = 1;

    search::AcoConfig aco;
    aco.ants = 10;
    aco.eval_budget = 200;
    aco.rng_seed = 909;
    const auto aco_a = serialize(search::aco_run(ctx, aco));
    const auto aco_b = serialize(search::aco_run(ctx, aco));

    const auto rs_a = serialize(search::random_search_run(ctx, cfg));
    const auto rs_b = serialize(search::random_search_run(ctx, cfg));

    const bool pass =
        base == repeat && base == parallel && aco_a == aco_b && rs_a == rs_b;
    std::ostringstream detail;
    detail << "nsga3 repeat=" << (base == repeat ? "identical" : "DIFFERS")
           << ", nsga3 4-thread=" << (base == parallel ? "identical" : "DIFFERS")
           << ", aco=" << (aco_a == aco_b ? "identical" : "DIFFERS")
           << ", rs=" << (rs_a == rs_b ? "identical" : "DIFFERS");
    report(9, "manifest determinism", pass, detail.str());
}

} // namespace

int main() {
    const auto exp1_ctx = testsupport::make_scenario(2024, 6, 3, 2);

    criterion(1, "formula fidelity", criterion_1);
    criterion(2, "conflict oracle", criterion_2);
    try {
        const auto data = run_exp1(exp1_ctx);
        criterion_3_and_4(data);
    } catch (const std::exception& e) {
        report(3, "search beats random baseline", false, std::string("exception: ") + e.what());
        report(4, "feasibility reached early", false, std::string("exception: ") + e.what());
    }
    criterion(5, "throughput vs ant system", [&] { criterion_5(exp1_ctx); });
    criterion(6, "slotting invariants", criterion_6);
    criterion(7, "penalty ordering", [&] { criterion_7(exp1_ctx); });
    criterion(8, "hypervolume oracle", criterion_8);
    criterion(9, "determinism", [&] {
        const auto ctx = testsupport::make_scenario(3, 5, 3, 1);
        criterion_9(ctx);
    });

    std::sort(g_outcomes.begin(), g_outcomes.end(),
              [](const Outcome& a, const Outcome& b) { return a.id < b.id; });
    bool all_pass = true;
    for (const auto& o : g_outcomes) {
        std::printf("%s  criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", o.id,
                    o.name.c_str(), o.detail.c_str());
        all_pass = all_pass && o.pass;
    }
    if (g_outcomes.size() != 9) {
        std::printf("FAIL  expected 9 criteria, saw %zu\n", g_outcomes.size());
        all_pass = false;
    }
    return all_pass ? 0 : 1;
}
