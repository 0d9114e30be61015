#include "iotsched/json_io.hpp"

#include <cmath>
#include <ostream>

#include "iotsched/search/genome.hpp"

namespace iotsched::io {

namespace {

json instant_json(Instant t) { return format_instant(t); }

Instant instant_from(const json& v) { return parse_instant(v.get<std::string>()); }

json cost_model_json(const CostModel& m) {
    json doc;
    doc["rate_per_hour"] = m.rate_per_hour;
    doc["day_cap_cost"] = m.day_cap_cost;
    doc["day_threshold_minutes"] = m.day_threshold_minutes;
    if (m.has_bounds()) {
        doc["cost_min"] = m.cost_min;
        doc["cost_max"] = m.cost_max;
    }
    return doc;
}

CostModel cost_model_from(const json& doc) {
    CostModel m;
    m.rate_per_hour = doc.value("rate_per_hour", m.rate_per_hour);
    m.day_cap_cost = doc.value("day_cap_cost", m.day_cap_cost);
    m.day_threshold_minutes = doc.value("day_threshold_minutes", m.day_threshold_minutes);
    m.cost_min = doc.value("cost_min", m.cost_min);
    m.cost_max = doc.value("cost_max", m.cost_max);
    return m;
}

} // namespace

json to_json(const CampaignSpec& spec) {
    json doc;
    doc["site_id"] = spec.site_id;
    doc["window"] = json::array({instant_json(spec.window_start), instant_json(spec.window_end)});
    doc["satellites"] = spec.satellites;
    json reqs = json::array();
    for (const auto& r : spec.requirements) {
        reqs.push_back({{"satellite_id", r.satellite_id},
                        {"proc_type", std::string(to_string(r.proc_type))}});
    }
    doc["requirements"] = std::move(reqs);
    doc["config_time_minutes"] = spec.config_time_minutes;
    doc["sqm_duration_minutes"] = spec.sqm_duration_minutes;
    doc["riot_max_edge_elevation_deg"] = spec.riot_max_edge_elevation_deg;
    doc["cost_model"] = cost_model_json(spec.cost_model);
    return doc;
}

CampaignSpec campaign_spec_from_json(const json& doc) {
    try {
        CampaignSpec spec;
        spec.site_id = doc.at("site_id").get<std::string>();
        const auto& window = doc.at("window");
        if (!window.is_array() || window.size() != 2)
            throw ParseError("campaign window must be a [start, end] pair");
        spec.window_start = instant_from(window[0]);
        spec.window_end = instant_from(window[1]);
        spec.satellites = doc.at("satellites").get<std::vector<std::string>>();
        for (const auto& r : doc.at("requirements")) {
            Requirement req;
            req.satellite_id = r.at("satellite_id").get<std::string>();
            req.proc_type = procedure_type_from_string(r.at("proc_type").get<std::string>());
            spec.requirements.push_back(std::move(req));
        }
        spec.config_time_minutes = doc.value("config_time_minutes", spec.config_time_minutes);
        spec.sqm_duration_minutes = doc.value("sqm_duration_minutes", spec.sqm_duration_minutes);
        spec.riot_max_edge_elevation_deg =
            doc.value("riot_max_edge_elevation_deg", spec.riot_max_edge_elevation_deg);
        if (doc.contains("cost_model")) spec.cost_model = cost_model_from(doc["cost_model"]);
        spec.validate();
        return spec;
    } catch (const json::exception& e) {
        throw ParseError(std::string("campaign spec: ") + e.what());
    }
}

json to_json(const SlottingPolicy& policy) {
    return json{{"align_minutes", policy.align_minutes},
                {"slot_quantum_minutes", policy.slot_quantum_minutes},
                {"consolidation_threshold_minutes", policy.consolidation_threshold_minutes},
                {"consolidation_window_minutes", policy.consolidation_window_minutes},
                {"cover_config_time", policy.cover_config_time}};
}

SlottingPolicy slotting_policy_from_json(const json& doc) {
    SlottingPolicy p;
    p.align_minutes = doc.value("align_minutes", p.align_minutes);
    p.slot_quantum_minutes = doc.value("slot_quantum_minutes", p.slot_quantum_minutes);
    p.consolidation_threshold_minutes =
        doc.value("consolidation_threshold_minutes", p.consolidation_threshold_minutes);
    p.consolidation_window_minutes =
        doc.value("consolidation_window_minutes", p.consolidation_window_minutes);
    p.cover_config_time = doc.value("cover_config_time", p.cover_config_time);
    p.validate();
    return p;
}

json to_json(const search::SearchConfig& cfg) {
    return json{{"population_size", cfg.population_size},
                {"reference_point_count", cfg.reference_point_count},
                {"crossover_prob", cfg.crossover_prob},
                {"mutation_prob", cfg.mutation_prob},
                {"p_nc_min", cfg.p_nc_min},
                {"p_nc_max", cfg.p_nc_max},
                {"eval_budget", cfg.eval_budget},
                {"wallclock_cap_seconds", cfg.wallclock_cap_seconds},
                {"rng_seed", cfg.rng_seed},
                {"threads", cfg.threads},
                {"ref_point_method", cfg.ref_point_method == search::RefPointMethod::RieszEnergy
                                         ? "riesz_energy"
                                         : "das_dennis"}};
}

search::SearchConfig search_config_from_json(const json& doc) {
    search::SearchConfig cfg;
    cfg.population_size = doc.value("population_size", cfg.population_size);
    cfg.reference_point_count = doc.value("reference_point_count", cfg.population_size / 2);
    cfg.crossover_prob = doc.value("crossover_prob", cfg.crossover_prob);
    cfg.mutation_prob = doc.value("mutation_prob", cfg.mutation_prob);
    cfg.p_nc_min = doc.value("p_nc_min", cfg.p_nc_min);
    cfg.p_nc_max = doc.value("p_nc_max", cfg.p_nc_max);
    cfg.eval_budget = doc.value("eval_budget", cfg.eval_budget);
    cfg.wallclock_cap_seconds = doc.value("wallclock_cap_seconds", cfg.wallclock_cap_seconds);
    cfg.rng_seed = doc.value("rng_seed", cfg.rng_seed);
    cfg.threads = doc.value("threads", cfg.threads);
    const std::string method = doc.value("ref_point_method", std::string("riesz_energy"));
    if (method == "riesz_energy") {
        cfg.ref_point_method = search::RefPointMethod::RieszEnergy;
    } else if (method == "das_dennis") {
        cfg.ref_point_method = search::RefPointMethod::DasDennis;
    } else {
        throw ParseError("unknown ref_point_method \"" + method + "\"");
    }
    cfg.validate();
    return cfg;
}

json to_json(const search::AcoConfig& cfg) {
    return json{{"ants", cfg.ants},
                {"alpha", cfg.alpha},
                {"beta", cfg.beta},
                {"rho", cfg.rho},
                {"deposit", cfg.deposit},
                {"tau_min", cfg.tau_min},
                {"tau_max", cfg.tau_max},
                {"eval_budget", cfg.eval_budget},
                {"wallclock_cap_seconds", cfg.wallclock_cap_seconds},
                {"rng_seed", cfg.rng_seed}};
}

search::AcoConfig aco_config_from_json(const json& doc) {
    search::AcoConfig cfg;
    cfg.ants = doc.value("ants", cfg.ants);
    cfg.alpha = doc.value("alpha", cfg.alpha);
    cfg.beta = doc.value("beta", cfg.beta);
    cfg.rho = doc.value("rho", cfg.rho);
    cfg.deposit = doc.value("deposit", cfg.deposit);
    cfg.tau_min = doc.value("tau_min", cfg.tau_min);
    cfg.tau_max = doc.value("tau_max", cfg.tau_max);
    cfg.eval_budget = doc.value("eval_budget", cfg.eval_budget);
    cfg.wallclock_cap_seconds = doc.value("wallclock_cap_seconds", cfg.wallclock_cap_seconds);
    cfg.rng_seed = doc.value("rng_seed", cfg.rng_seed);
    cfg.validate();
    return cfg;
}

json to_json(const RunManifest& manifest) {
    return json{{"algorithm", manifest.algorithm},
                {"scenario", manifest.scenario_path},
                {"passes", manifest.passes_path},
                {"output_dir", manifest.output_dir},
                {"search_config", to_json(manifest.search)},
                {"aco_config", to_json(manifest.aco)},
                {"slotting_policy", to_json(manifest.slotting)}};
}

RunManifest manifest_from_json(const json& doc) {
    try {
        RunManifest m;
        m.algorithm = doc.at("algorithm").get<std::string>();
        if (m.algorithm != "nsga3" && m.algorithm != "rs" && m.algorithm != "aco")
            throw ParseError("unknown algorithm \"" + m.algorithm + "\"");
        m.scenario_path = doc.at("scenario").get<std::string>();
        m.passes_path = doc.at("passes").get<std::string>();
        m.output_dir = doc.value("output_dir", std::string("."));
        if (doc.contains("search_config")) m.search = search_config_from_json(doc["search_config"]);
        if (doc.contains("aco_config")) m.aco = aco_config_from_json(doc["aco_config"]);
        if (doc.contains("slotting_policy"))
            m.slotting = slotting_policy_from_json(doc["slotting_policy"]);
        return m;
    } catch (const json::exception& e) {
        throw ParseError(std::string("manifest: ") + e.what());
    }
}

json archive_to_json(const search::RunResult& result, const CandidateSet& cands,
                     const SlottingPolicy& policy) {
    json doc;
    doc["algorithm"] = result.algorithm;
    doc["seed"] = result.seed;
    doc["evals"] = result.evals;
    doc["iterations"] = result.iterations;
    json front = json::array();
    for (const auto& entry : result.front) {
        const ProcedureSchedule schedule = search::decode(entry.genome, cands);
        json record;
        record["genome"] = entry.genome;
        json procedures = json::array();
        for (const auto& p : schedule.procedures) {
            procedures.push_back({{"id", p.id},
                                  {"proc_type", std::string(to_string(p.proc_type))},
                                  {"satellite_id", p.satellite_id()},
                                  {"t_start", instant_json(p.t_start)},
                                  {"t_end", instant_json(p.t_end)},
                                  {"config_time_minutes", p.config_time.seconds() / 60}});
        }
        record["procedures"] = std::move(procedures);
        const SlotSchedule slots = slot_schedule(schedule, policy);
        record["slots"] = slots_to_json(slots)["slots"];
        if (entry.fitness.feasible()) {
            record["fitness_raw"] = {{"use", entry.fitness.use},
                                     {"frag", entry.fitness.frag},
                                     {"cost", entry.fitness.cost}};
        } else {
            record["fitness_raw"] = nullptr;
        }
        record["fitness_minimized"] = entry.fitness.minimized;
        record["violations"] = entry.fitness.violations;
        front.push_back(std::move(record));
    }
    doc["front"] = std::move(front);
    return doc;
}

json telemetry_to_json(const search::RunResult& result) {
    json rows = json::array();
    for (const auto& row : result.telemetry) {
        rows.push_back({{"iteration", row.iteration},
                        {"evals", row.evals},
                        {"min_violations", row.min_violations},
                        {"mean_violations", row.mean_violations},
                        {"front_size", row.front_size}});
    }
    return json{{"algorithm", result.algorithm},
                {"seed", result.seed},
                {"iterations", std::move(rows)}};
}

metrics::Front front_from_archive_json(const json& doc, std::string provenance) {
    metrics::Front front;
    front.provenance = std::move(provenance);
    try {
        for (const auto& record : doc.at("front")) {
            const auto& m = record.at("fitness_minimized");
            if (!m.is_array() || m.size() != 3)
                throw ParseError("archive " + front.provenance +
                                 ": fitness_minimized must have three objectives");
            front.points.push_back({m[0].get<double>(), m[1].get<double>(), m[2].get<double>()});
        }
    } catch (const json::exception& e) {
        throw ParseError("archive " + front.provenance + ": " + e.what());
    }
    return front;
}

json graph_to_json(const ConflictGraph& graph, const CandidateSet& cands) {
    json vertices = json::array();
    for (const auto& c : cands.candidates) vertices.push_back(c.id);
    json edges = json::array();
    for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
        for (const std::int32_t j : graph.neighbors(static_cast<std::int32_t>(i))) {
            if (static_cast<std::size_t>(j) > i)
                edges.push_back(json::array({i, static_cast<std::size_t>(j)}));
        }
    }
    return json{{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

json slots_to_json(const SlotSchedule& slots) {
    json arr = json::array();
    for (const auto& s : slots.slots)
        arr.push_back(json::array({instant_json(s.t_start), instant_json(s.t_end)}));
    return json{{"slots", std::move(arr)}};
}

void write_slots_csv(std::ostream& out, const SlotSchedule& slots, const ProcedureSchedule& s,
                     const SlottingPolicy& policy) {
    out << "slot_start,slot_end,procedures\n";
    for (const auto& slot : slots.slots) {
        out << format_instant(slot.t_start) << ',' << format_instant(slot.t_end) << ',';
        bool first = true;
        for (const auto& p : s.procedures) {
            const Instant cover_start =
                policy.cover_config_time ? p.t_start - p.config_time : p.t_start;
            if (slot.t_start <= cover_start && p.t_end <= slot.t_end) {
                if (!first) out << ';';
                out << p.id;
                first = false;
            }
        }
        out << '\n';
    }
}

} // namespace iotsched::io
