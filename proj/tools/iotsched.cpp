// Command-line front end for the IOT campaign scheduling engine.
//
// Subcommands:
//   synth       generate a synthetic pass catalog CSV
//   candidates  expand a scenario into candidates and conflict-graph stats
//   optimize    run nsga3 / rs / aco and write archive + telemetry
//   evaluate    compare run archives with GD / SP / HV and rank statistics
//   export      extract slot schedules from an archive entry
//
// Exit codes: 0 success with a feasible schedule, 2 no feasible schedule,
// 3 invalid input, 4 internal error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "iotsched/json_io.hpp"
#include "iotsched/search/aco.hpp"
#include "iotsched/search/genome.hpp"
#include "iotsched/search/nsga3.hpp"
#include "iotsched/search/random_search.hpp"

namespace fs = std::filesystem;
using namespace iotsched;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNoFeasible = 2;
constexpr int kExitBadInput = 3;
constexpr int kExitInternal = 4;

std::string default_out_dir() {
    const char* env = std::getenv("IOTSCHED_OUT_DIR");
    return env != nullptr && env[0] != '\0' ? env : ".";
}

PassCatalog load_passes_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open pass file " + path);
    const auto format = path.size() >= 5 && path.substr(path.size() - 5) == ".json"
                            ? PassFileFormat::Json
                            : PassFileFormat::Csv;
    return load_passes(in, format);
}

io::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    io::json doc;
    try {
        in >> doc;
    } catch (const io::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return doc;
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

struct SynthArgs {
    std::uint64_t seed = 1;
    int sats = 6;
    int days = 3;
    std::string start;
    std::string site = "gs1";
    SynthParams params;
    std::string output;
};

int cmd_synth(const SynthArgs& args) {
    const Instant start =
        args.start.empty() ? instant_utc(2024, 10, 1) : parse_instant(args.start);
    const Instant end = start + Duration::of_hours(24LL * args.days);
    const PassCatalog catalog =
        synth_passes(args.seed, args.sats, start, end, args.params, args.site);

    std::ofstream out(args.output);
    if (!out) throw std::runtime_error("cannot write " + args.output);
    write_passes_csv(out, catalog);

    std::map<std::string, int> per_sat;
    int riot_eligible = 0;
    for (const auto& p : catalog.passes) {
        ++per_sat[p.satellite_id];
        if (p.theta_start <= 5.0 && p.theta_end <= 5.0) ++riot_eligible;
    }
    std::cout << "wrote " << catalog.passes.size() << " passes to " << args.output << "\n";
    for (const auto& [sat, count] : per_sat) std::cout << "  " << sat << ": " << count << "\n";
    std::cout << "  low-edge (riot-eligible) passes: " << riot_eligible << "\n";
    return kExitOk;
}

int cmd_candidates(const std::string& scenario_path, const std::string& passes_path,
                   const std::string& graph_json_path) {
    const CampaignSpec spec = io::campaign_spec_from_json(load_json_file(scenario_path));
    const PassCatalog catalog = load_passes_file(passes_path);
    const CandidateSet cands = generate_candidates(catalog, spec);
    const ConflictGraph graph = ConflictGraph::build(cands);

    std::cout << "candidates: " << cands.size() << "\n";
    for (std::size_t r = 0; r < cands.requirements.size(); ++r) {
        std::cout << "  " << cands.requirements[r].label() << ": "
                  << cands.by_requirement[r].size() << " candidates\n";
    }
    const double n = static_cast<double>(graph.vertex_count());
    const double density =
        n > 1.0 ? static_cast<double>(graph.edge_count()) / (n * (n - 1.0) / 2.0) : 0.0;
    std::cout << "conflict graph: " << graph.vertex_count() << " vertices, " << graph.edge_count()
              << " edges (density " << density << ")\n";
    if (!graph_json_path.empty()) {
        write_text_file(graph_json_path, io::graph_to_json(graph, cands).dump(2) + "\n");
        std::cout << "graph written to " << graph_json_path << "\n";
    }
    return kExitOk;
}

search::RunResult dispatch_run(const io::RunManifest& manifest,
                               const search::ScenarioContext& ctx) {
    if (manifest.algorithm == "nsga3") return search::nsga3_run(ctx, manifest.search);
    if (manifest.algorithm == "rs") return search::random_search_run(ctx, manifest.search);
    return search::aco_run(ctx, manifest.aco);
}

int cmd_optimize(io::RunManifest manifest) {
    const CampaignSpec spec = io::campaign_spec_from_json(load_json_file(manifest.scenario_path));
    const PassCatalog catalog = load_passes_file(manifest.passes_path);
    const auto ctx = search::ScenarioContext::prepare(spec, catalog, manifest.slotting);

    const fs::path out_dir(manifest.output_dir);
    fs::create_directories(out_dir);
    write_text_file(out_dir / "manifest.json", io::to_json(manifest).dump(2) + "\n");

    const search::RunResult result = dispatch_run(manifest, ctx);

    write_text_file(out_dir / "archive.json",
                    io::archive_to_json(result, ctx.candidates, ctx.slotting).dump(2) + "\n");
    write_text_file(out_dir / "telemetry.json", io::telemetry_to_json(result).dump(2) + "\n");

    const fs::path slots_dir = out_dir / "slots";
    fs::create_directories(slots_dir);
    for (std::size_t i = 0; i < result.front.size(); ++i) {
        const ProcedureSchedule schedule = search::decode(result.front[i].genome, ctx.candidates);
        const SlotSchedule slots = slot_schedule(schedule, ctx.slotting);
        char name[32];
        std::snprintf(name, sizeof(name), "member_%03zu.csv", i);
        std::ofstream out(slots_dir / name);
        io::write_slots_csv(out, slots, schedule, ctx.slotting);
    }

    const std::size_t step = std::max<std::size_t>(1, result.telemetry.size() / 10);
    for (std::size_t i = 0; i < result.telemetry.size(); i += step) {
        const auto& row = result.telemetry[i];
        std::cout << "iter " << row.iteration << ": evals=" << row.evals
                  << " min_violations=" << row.min_violations
                  << " mean_violations=" << row.mean_violations
                  << " front_size=" << row.front_size << "\n";
    }

    std::size_t feasible = 0;
    double best_use = 0.0, best_frag = 0.0, best_score = 0.0;
    for (const auto& e : result.front) {
        if (!e.fitness.feasible()) continue;
        ++feasible;
        best_use = std::max(best_use, e.fitness.use);
        best_frag = std::max(best_frag, e.fitness.frag);
        best_score = std::max(best_score, 1.0 - e.fitness.cost);
    }
    std::cout << result.algorithm << ": " << result.evals << " evaluations, "
              << result.iterations << " iterations, front size " << result.front.size() << " ("
              << feasible << " feasible)\n";
    if (feasible > 0) {
        std::cout << "best per objective (higher is better): use=" << best_use
                  << " frag=" << best_frag << " cost-score=" << best_score << "\n";
    }
    std::cout << "outputs in " << out_dir.string() << "\n";
    return feasible > 0 ? kExitOk : kExitNoFeasible;
}

struct EvaluateArgs {
    std::vector<std::string> runs; ///< label=path pairs
    std::string out_dir;
    std::vector<double> hv_ref = {1.1, 1.1, 1.1};
};

int cmd_evaluate(const EvaluateArgs& args) {
    struct RunRecord {
        std::string label;
        std::string path;
        metrics::Front front;
        double gd = 0.0, sp = 0.0, hv = 0.0;
    };
    std::vector<RunRecord> records;
    for (const auto& spec : args.runs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
            throw ParseError("--run expects label=path, got \"" + spec + "\"");
        RunRecord rec;
        rec.label = spec.substr(0, eq);
        rec.path = spec.substr(eq + 1);
        rec.front = io::front_from_archive_json(load_json_file(rec.path), rec.path);
        records.push_back(std::move(rec));
    }

    std::vector<metrics::Front> fronts;
    fronts.reserve(records.size());
    for (const auto& r : records) fronts.push_back(r.front);
    const metrics::Front reference = metrics::reference_front(fronts);
    const metrics::Point hv_ref = {args.hv_ref[0], args.hv_ref[1], args.hv_ref[2]};

    std::map<std::string, std::map<std::string, std::vector<double>>> samples;
    for (auto& rec : records) {
        rec.gd = rec.front.points.empty() ? 0.0 : metrics::gd(rec.front, reference);
        rec.sp = metrics::spread(rec.front);
        rec.hv = metrics::hypervolume(rec.front, hv_ref);
        samples[rec.label]["GD"].push_back(rec.gd);
        samples[rec.label]["SP"].push_back(rec.sp);
        samples[rec.label]["HV"].push_back(rec.hv);
    }

    io::json report;
    report["reference_front_size"] = reference.points.size();
    report["hv_ref_point"] = args.hv_ref;
    io::json run_rows = io::json::array();
    for (const auto& rec : records) {
        run_rows.push_back({{"label", rec.label},
                            {"path", rec.path},
                            {"front_size", rec.front.points.size()},
                            {"gd", rec.gd},
                            {"sp", rec.sp},
                            {"hv", rec.hv}});
    }
    report["runs"] = std::move(run_rows);

    std::ostringstream comparisons_csv;
    comparisons_csv << "metric,label_a,label_b,p_value,a12,mean_a,mean_b\n";
    io::json comparisons = io::json::array();
    std::vector<std::string> labels;
    for (const auto& [label, _] : samples) labels.push_back(label);
    bool any_stats = false;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = i + 1; j < labels.size(); ++j) {
            for (const std::string metric : {"GD", "SP", "HV"}) {
                const auto& a = samples[labels[i]][metric];
                const auto& b = samples[labels[j]][metric];
                if (a.size() < 2 || b.size() < 2) continue;
                any_stats = true;
                const auto mwu = metrics::mann_whitney_u(a, b);
                const double a12 = metrics::vargha_delaney_a12(a, b);
                auto mean = [](const std::vector<double>& v) {
                    double s = 0.0;
                    for (double x : v) s += x;
                    return s / static_cast<double>(v.size());
                };
                comparisons.push_back({{"metric", metric},
                                       {"a", labels[i]},
                                       {"b", labels[j]},
                                       {"p_value", mwu.p_value},
                                       {"a12", a12},
                                       {"mean_a", mean(a)},
                                       {"mean_b", mean(b)}});
                comparisons_csv << metric << ',' << labels[i] << ',' << labels[j] << ','
                                << mwu.p_value << ',' << a12 << ',' << mean(a) << ',' << mean(b)
                                << "\n";
            }
        }
    }
    if (!any_stats) {
        report["notice"] = "fewer than two runs per label: statistics skipped";
        std::cerr << "notice: fewer than two runs per label, statistics skipped\n";
    }
    report["comparisons"] = std::move(comparisons);

    const fs::path out_dir(args.out_dir);
    fs::create_directories(out_dir);
    write_text_file(out_dir / "report.json", report.dump(2) + "\n");

    std::ostringstream runs_csv;
    runs_csv << "label,path,front_size,gd,sp,hv\n";
    for (const auto& rec : records) {
        runs_csv << rec.label << ',' << rec.path << ',' << rec.front.points.size() << ',' << rec.gd
                 << ',' << rec.sp << ',' << rec.hv << "\n";
    }
    write_text_file(out_dir / "runs.csv", runs_csv.str());
    write_text_file(out_dir / "comparisons.csv", comparisons_csv.str());

    std::cout << "reference front: " << reference.points.size() << " points\n";
    std::cout << "report written to " << (out_dir / "report.json").string() << "\n";
    return kExitOk;
}

int cmd_export(const std::string& archive_path, std::size_t index, const std::string& slots_csv,
               const std::string& slots_json) {
    const io::json doc = load_json_file(archive_path);
    const auto& front = doc.at("front");
    if (index >= front.size())
        throw ParseError("archive has " + std::to_string(front.size()) +
                         " front members; index " + std::to_string(index) + " out of range");
    const auto& record = front[index];

    if (!slots_json.empty()) {
        io::json slots = {{"slots", record.at("slots")}};
        write_text_file(slots_json, slots.dump(2) + "\n");
        std::cout << "slot JSON written to " << slots_json << "\n";
    }
    if (!slots_csv.empty()) {
        std::ofstream out(slots_csv);
        if (!out) throw std::runtime_error("cannot write " + slots_csv);
        out << "slot_start,slot_end,procedures\n";
        for (const auto& slot : record.at("slots")) {
            const Instant s = parse_instant(slot[0].get<std::string>());
            const Instant e = parse_instant(slot[1].get<std::string>());
            out << format_instant(s) << ',' << format_instant(e) << ',';
            bool first = true;
            for (const auto& p : record.at("procedures")) {
                const Instant ps = parse_instant(p.at("t_start").get<std::string>());
                const Instant pe = parse_instant(p.at("t_end").get<std::string>());
                const auto config =
                    Duration::of_minutes(p.at("config_time_minutes").get<std::int64_t>());
                if (s <= ps - config && pe <= e) {
                    if (!first) out << ';';
                    out << p.at("id").get<std::string>();
                    first = false;
                }
            }
            out << "\n";
        }
        std::cout << "slot CSV written to " << slots_csv << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"IOT campaign scheduling engine"};
    app.require_subcommand(1);

    // synth
    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "generate a synthetic pass catalog");
    synth->add_option("--seed", synth_args.seed, "RNG seed")->required();
    synth->add_option("--sats", synth_args.sats, "number of satellites")->required();
    synth->add_option("--days", synth_args.days, "window length in days");
    synth->add_option("--start", synth_args.start, "window start (ISO-8601, default 2024-10-01)");
    synth->add_option("--site", synth_args.site, "ground site id");
    synth->add_option("--period_minutes", synth_args.params.period_minutes, "orbital period");
    synth->add_option("--period_jitter_minutes", synth_args.params.period_jitter_minutes,
                      "period jitter");
    synth->add_option("--pass_duration_minutes", synth_args.params.pass_duration_minutes,
                      "mean pass duration");
    synth->add_option("--pass_duration_jitter_minutes",
                      synth_args.params.pass_duration_jitter_minutes, "duration jitter");
    synth->add_option("--riot_fraction", synth_args.params.riot_fraction,
                      "fraction of satellites with low-edge passes");
    synth->add_option("-o,--output", synth_args.output, "output CSV path")->required();

    // candidates
    std::string scenario_path, passes_path, graph_json_path;
    auto* candidates = app.add_subcommand("candidates", "dump candidate and conflict stats");
    candidates->add_option("--scenario", scenario_path, "campaign spec JSON")->required();
    candidates->add_option("--passes", passes_path, "pass catalog (CSV or JSON)")->required();
    candidates->add_option("--graph-json", graph_json_path, "write the conflict graph JSON here");

    // optimize
    io::RunManifest manifest;
    manifest.output_dir = default_out_dir();
    std::string manifest_path;
    std::string ref_method = "riesz_energy";
    auto* optimize = app.add_subcommand("optimize", "run a scheduling algorithm");
    optimize->add_option("--manifest", manifest_path, "re-run a recorded manifest");
    optimize->add_option("--scenario", manifest.scenario_path, "campaign spec JSON");
    optimize->add_option("--passes", manifest.passes_path, "pass catalog (CSV or JSON)");
    optimize->add_option("--algo", manifest.algorithm, "nsga3 | rs | aco")
        ->check(CLI::IsMember({"nsga3", "rs", "aco"}));
    optimize->add_option("--out", manifest.output_dir, "output directory");
    auto* seed_opt = optimize->add_option_function<std::uint64_t>(
        "--rng_seed,--seed",
        [&manifest](std::uint64_t seed) {
            manifest.search.rng_seed = seed;
            manifest.aco.rng_seed = seed;
        },
        "seed for every random draw of the run");
    optimize->add_option("--population_size", manifest.search.population_size, "");
    optimize->add_option("--reference_point_count", manifest.search.reference_point_count, "");
    optimize->add_option("--crossover_prob", manifest.search.crossover_prob, "");
    optimize->add_option("--mutation_prob", manifest.search.mutation_prob, "");
    optimize->add_option("--p_nc_min", manifest.search.p_nc_min, "");
    optimize->add_option("--p_nc_max", manifest.search.p_nc_max, "");
    auto* budget_opt = optimize->add_option_function<long long>(
        "--eval_budget,--evals",
        [&manifest](long long v) {
            manifest.search.eval_budget = v;
            manifest.aco.eval_budget = v;
        },
        "fitness evaluation budget");
    auto* wallclock_opt = optimize->add_option_function<long long>(
        "--wallclock_cap_seconds,--wallclock",
        [&manifest](long long v) {
            manifest.search.wallclock_cap_seconds = v;
            manifest.aco.wallclock_cap_seconds = v;
        },
        "wall-clock cap in seconds");
    optimize->add_option("--threads", manifest.search.threads, "evaluation threads");
    optimize->add_option("--ref_point_method", ref_method, "riesz_energy | das_dennis")
        ->check(CLI::IsMember({"riesz_energy", "das_dennis"}));
    optimize->add_option("--ants", manifest.aco.ants, "");
    optimize->add_option("--alpha", manifest.aco.alpha, "");
    optimize->add_option("--beta", manifest.aco.beta, "");
    optimize->add_option("--rho", manifest.aco.rho, "");
    optimize->add_option("--deposit", manifest.aco.deposit, "");
    optimize->add_option("--tau_min", manifest.aco.tau_min, "");
    optimize->add_option("--tau_max", manifest.aco.tau_max, "");
    optimize->add_option("--align_minutes", manifest.slotting.align_minutes, "");
    optimize->add_option("--slot_quantum_minutes", manifest.slotting.slot_quantum_minutes, "");
    optimize->add_option("--consolidation_threshold_minutes",
                         manifest.slotting.consolidation_threshold_minutes, "");
    optimize->add_option("--consolidation_window_minutes",
                         manifest.slotting.consolidation_window_minutes, "");
    optimize->add_flag("--no-cover-config-time",
                       [&manifest](std::int64_t) { manifest.slotting.cover_config_time = false; },
                       "slots cover only the procedure interval");

    // evaluate
    EvaluateArgs eval_args;
    eval_args.out_dir = default_out_dir();
    auto* evaluate = app.add_subcommand("evaluate", "compare run archives");
    evaluate->add_option("--run", eval_args.runs, "label=archive.json (repeatable)")->required();
    evaluate->add_option("--out", eval_args.out_dir, "output directory");
    evaluate->add_option("--hv-ref", eval_args.hv_ref, "hypervolume reference point")
        ->expected(3);

    // export
    std::string archive_path, slots_csv_path, slots_json_path;
    std::size_t member_index = 0;
    auto* export_cmd = app.add_subcommand("export", "extract a front member's slot schedule");
    export_cmd->add_option("--archive", archive_path, "archive JSON")->required();
    export_cmd->add_option("--index", member_index, "front member index");
    export_cmd->add_option("--slots-csv", slots_csv_path, "write a Gantt-friendly CSV here");
    export_cmd->add_option("--slots-json", slots_json_path, "write slot JSON here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) return cmd_synth(synth_args);
        if (candidates->parsed()) return cmd_candidates(scenario_path, passes_path, graph_json_path);
        if (optimize->parsed()) {
            if (!manifest_path.empty()) {
                manifest = io::manifest_from_json(load_json_file(manifest_path));
            } else {
                if (manifest.scenario_path.empty() || manifest.passes_path.empty()) {
                    std::cerr << "error: optimize needs --scenario and --passes (or --manifest)\n";
                    return kExitBadInput;
                }
                if (ref_method == "das_dennis")
                    manifest.search.ref_point_method = search::RefPointMethod::DasDennis;
                (void)seed_opt;
                (void)budget_opt;
                (void)wallclock_opt;
            }
            return cmd_optimize(std::move(manifest));
        }
        if (evaluate->parsed()) return cmd_evaluate(eval_args);
        if (export_cmd->parsed())
            return cmd_export(archive_path, member_index, slots_csv_path, slots_json_path);
    } catch (const InfeasibleScenarioError& e) {
        std::cerr << "infeasible scenario: " << e.what() << "\n";
        return kExitNoFeasible;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
