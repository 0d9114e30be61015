#include "iotsched/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "iotsched/rng.hpp"

namespace iotsched {

void CampaignSpec::validate() const {
    if (!(window_start < window_end))
        throw std::invalid_argument("campaign window ends before it starts");
    if (config_time_minutes < 0) throw std::invalid_argument("negative configuration time");
    if (sqm_duration_minutes <= 0) throw std::invalid_argument("non-positive SQM duration");
    if (requirements.empty()) throw std::invalid_argument("campaign has no requirements");
    for (const auto& r : requirements) {
        if (std::find(satellites.begin(), satellites.end(), r.satellite_id) == satellites.end())
            throw std::invalid_argument("requirement " + r.label() +
                                        " names a satellite outside the campaign");
    }
    for (std::size_t i = 0; i < requirements.size(); ++i) {
        for (std::size_t j = i + 1; j < requirements.size(); ++j) {
            if (requirements[i] == requirements[j])
                throw std::invalid_argument("duplicate requirement " + requirements[i].label());
        }
    }
}

InfeasibleScenarioError::InfeasibleScenarioError(std::vector<Requirement> missing)
    : std::runtime_error([&missing] {
          std::string msg = "no candidate procedures for:";
          for (const auto& r : missing) msg += " " + r.label();
          return msg;
      }()),
      uncovered(std::move(missing)) {}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_angle(const std::string& text, const char* what) {
    try {
        std::size_t consumed = 0;
        const double v = std::stod(text, &consumed);
        if (consumed != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError("bad " + std::string(what) + " value \"" + text + "\"");
    }
}

SatellitePass pass_from_fields(const std::vector<std::string>& f) {
    SatellitePass p;
    p.satellite_id = f[0];
    p.site_id = f[1];
    p.t_start = parse_instant(f[2]);
    p.t_max = parse_instant(f[3]);
    p.t_end = parse_instant(f[4]);
    p.theta_start = parse_angle(f[5], "el_start");
    p.theta_max = parse_angle(f[6], "el_max");
    p.theta_end = parse_angle(f[7], "el_end");
    p.phi_start = parse_angle(f[8], "az_start");
    p.phi_max = parse_angle(f[9], "az_max");
    p.phi_end = parse_angle(f[10], "az_end");
    return p;
}

PassCatalog finalize_catalog(std::vector<SatellitePass> passes) {
    PassCatalog catalog;
    if (passes.empty()) {
        std::cerr << "warning: pass source contained no records; catalog is empty\n";
        return catalog;
    }
    catalog.site_id = passes.front().site_id;
    catalog.window_start = passes.front().t_start;
    catalog.window_end = passes.front().t_end;
    for (const auto& p : passes) {
        catalog.window_start = std::min(catalog.window_start, p.t_start);
        catalog.window_end = std::max(catalog.window_end, p.t_end);
    }
    catalog.passes = std::move(passes);
    catalog.validate();
    return catalog;
}

PassCatalog load_passes_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<SatellitePass> passes;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != kPassCsvHeader)
                throw ParseError("line 1: expected header \"" + std::string(kPassCsvHeader) +
                                 "\"");
            header_seen = true;
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 11)
            throw ParseError("line " + std::to_string(line_no) + ": expected 11 fields, got " +
                             std::to_string(fields.size()));
        SatellitePass p;
        try {
            p = pass_from_fields(fields);
        } catch (const std::exception& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        try {
            p.validate();
        } catch (const std::exception& e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": rejected pass: " +
                                        e.what());
        }
        passes.push_back(std::move(p));
    }
    return finalize_catalog(std::move(passes));
}

PassCatalog load_passes_json(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("pass JSON: ") + e.what());
    }
    if (doc.is_null() || (doc.is_array() && doc.empty())) return finalize_catalog({});
    if (!doc.is_array()) throw ParseError("pass JSON: expected a top-level array of records");
    std::vector<SatellitePass> passes;
    std::size_t record_no = 0;
    for (const auto& rec : doc) {
        ++record_no;
        SatellitePass p;
        try {
            p.satellite_id = rec.at("sat").get<std::string>();
            p.site_id = rec.at("site").get<std::string>();
            p.t_start = parse_instant(rec.at("t_start").get<std::string>());
            p.t_max = parse_instant(rec.at("t_max").get<std::string>());
            p.t_end = parse_instant(rec.at("t_end").get<std::string>());
            p.theta_start = rec.at("el_start").get<double>();
            p.theta_max = rec.at("el_max").get<double>();
            p.theta_end = rec.at("el_end").get<double>();
            p.phi_start = rec.at("az_start").get<double>();
            p.phi_max = rec.at("az_max").get<double>();
            p.phi_end = rec.at("az_end").get<double>();
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("pass record " + std::to_string(record_no) + ": " + e.what());
        }
        try {
            p.validate();
        } catch (const std::exception& e) {
            throw std::invalid_argument("pass record " + std::to_string(record_no) +
                                        ": rejected pass: " + e.what());
        }
        passes.push_back(std::move(p));
    }
    return finalize_catalog(std::move(passes));
}

} // namespace

PassCatalog load_passes(std::istream& in, PassFileFormat format) {
    return format == PassFileFormat::Csv ? load_passes_csv(in) : load_passes_json(in);
}

namespace {

std::string format_angle(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

} // namespace

void write_passes_csv(std::ostream& out, const PassCatalog& catalog) {
    out << kPassCsvHeader << "\n";
    for (const auto& p : catalog.passes) {
        out << p.satellite_id << ',' << p.site_id << ',' << format_instant(p.t_start) << ','
            << format_instant(p.t_max) << ',' << format_instant(p.t_end) << ','
            << format_angle(p.theta_start) << ',' << format_angle(p.theta_max) << ','
            << format_angle(p.theta_end) << ',' << format_angle(p.phi_start) << ','
            << format_angle(p.phi_max) << ',' << format_angle(p.phi_end) << "\n";
    }
}

PassCatalog synth_passes(std::uint64_t seed, int n_sats, Instant window_start, Instant window_end,
                         const SynthParams& params, const std::string& site_id) {
    if (n_sats < 1) throw std::invalid_argument("synth_passes: need at least one satellite");
    if (!(window_start < window_end))
        throw std::invalid_argument("synth_passes: empty or reversed window");
    const std::int64_t max_pass_s =
        static_cast<std::int64_t>(params.pass_duration_minutes + params.pass_duration_jitter_minutes) *
        60;
    if (delta_time(window_start, window_end).seconds() < max_pass_s)
        throw std::invalid_argument("synth_passes: window shorter than one synthetic pass");
    if (params.period_minutes <= 0 || params.pass_duration_minutes <= 0)
        throw std::invalid_argument("synth_passes: period and duration must be positive");

    const int n_riot = static_cast<int>(
        std::llround(std::clamp(params.riot_fraction, 0.0, 1.0) * n_sats));

    PassCatalog catalog;
    catalog.site_id = site_id;
    catalog.window_start = window_start;
    catalog.window_end = window_end;

    Rng root(seed);
    for (int sat = 0; sat < n_sats; ++sat) {
        Rng rng = root.fork(static_cast<std::uint64_t>(sat));
        const bool riot_capable = sat < n_riot;
        char name[16];
        std::snprintf(name, sizeof(name), "s%02d", sat + 1);

        const std::int64_t period_s = static_cast<std::int64_t>(params.period_minutes) * 60;
        std::int64_t t = window_start.epoch_seconds() +
                         static_cast<std::int64_t>(rng.uniform01() * static_cast<double>(period_s));
        while (true) {
            const std::int64_t jitter =
                static_cast<std::int64_t>(std::llround(rng.uniform(-1.0, 1.0) *
                                                       params.period_jitter_minutes * 60.0));
            const std::int64_t dur =
                static_cast<std::int64_t>(params.pass_duration_minutes) * 60 +
                static_cast<std::int64_t>(std::llround(rng.uniform(-1.0, 1.0) *
                                                       params.pass_duration_jitter_minutes * 60.0));
            const std::int64_t start = t + jitter;
            const std::int64_t end = start + std::max<std::int64_t>(dur, 600);
            if (start < window_start.epoch_seconds()) {
                t += period_s;
                continue;
            }
            if (end > window_end.epoch_seconds()) break;

            SatellitePass p;
            p.satellite_id = name;
            p.site_id = site_id;
            p.t_start = Instant::from_epoch_seconds(start);
            p.t_end = Instant::from_epoch_seconds(end);
            // culmination near mid-pass
            const std::int64_t len = end - start;
            const std::int64_t mid = start + len / 2;
            const std::int64_t skew = static_cast<std::int64_t>(
                std::llround(rng.uniform(-1.0, 1.0) * static_cast<double>(len) / 8.0));
            p.t_max = Instant::from_epoch_seconds(std::clamp(mid + skew, start + 1, end - 1));
            p.theta_max = rng.uniform(10.0, 90.0);
            if (riot_capable) {
                p.theta_start = rng.uniform(0.5, 5.0);
                p.theta_end = rng.uniform(0.5, 5.0);
            } else {
                p.theta_start = rng.uniform(5.5, 15.0);
                p.theta_end = rng.uniform(5.5, 15.0);
            }
            p.theta_max = std::max({p.theta_max, p.theta_start, p.theta_end});
            p.phi_start = rng.uniform(0.0, 360.0);
            p.phi_max = rng.uniform(0.0, 360.0);
            p.phi_end = rng.uniform(0.0, 360.0);
            p.validate();
            catalog.passes.push_back(std::move(p));

            t += period_s;
        }
    }
    // group passes per satellite but keep global chronology stable for readers
    std::sort(catalog.passes.begin(), catalog.passes.end(),
              [](const SatellitePass& a, const SatellitePass& b) {
                  return a.t_start != b.t_start ? a.t_start < b.t_start
                                                : a.satellite_id < b.satellite_id;
              });
    catalog.validate();
    return catalog;
}

namespace {

std::string candidate_id(const Requirement& req, std::size_t pass_no, const char* placement) {
    std::string id = req.label() + "/p" + std::to_string(pass_no);
    if (placement[0] != '\0') {
        id += "/";
        id += placement;
    }
    return id;
}

} // namespace

CandidateSet generate_candidates(const PassCatalog& catalog, const CampaignSpec& spec) {
    spec.validate();
    if (!catalog.passes.empty() && catalog.site_id != spec.site_id)
        throw std::invalid_argument("pass catalog site " + catalog.site_id +
                                    " does not match campaign site " + spec.site_id);

    CandidateSet set;
    set.requirements = spec.requirements;
    set.by_requirement.resize(spec.requirements.size());

    const Duration delta_c = spec.config_time();
    const Duration sqm_len = spec.sqm_duration();
    const std::int64_t half_sqm = sqm_len.seconds() / 2;

    for (std::size_t req_idx = 0; req_idx < spec.requirements.size(); ++req_idx) {
        const Requirement& req = spec.requirements[req_idx];
        std::size_t pass_no = 0;
        for (const auto& pass : catalog.passes) {
            if (pass.satellite_id != req.satellite_id) continue;
            if (pass.t_start < spec.window_start || spec.window_end < pass.t_end) continue;
            ++pass_no;

            auto emit = [&](Instant start, Instant end, const char* placement) {
                if (start < pass.t_start || pass.t_end < end) return; // escapes the pass: dropped
                TestProcedure proc;
                proc.id = candidate_id(req, pass_no, placement);
                proc.proc_type = req.proc_type;
                proc.t_start = start;
                proc.t_end = end;
                proc.config_time = delta_c;
                proc.pass = pass;
                proc.validate();
                const auto idx = static_cast<std::int32_t>(set.candidates.size());
                set.candidates.push_back(std::move(proc));
                set.by_requirement[req_idx].push_back(idx);
                set.candidate_requirement.push_back(static_cast<std::int32_t>(req_idx));
            };

            if (req.proc_type == ProcedureType::Sqm) {
                emit(pass.t_max, pass.t_max + sqm_len, "start");
                emit(pass.t_max - sqm_len, pass.t_max, "end");
                const Instant c_start = pass.t_max - Duration::of_seconds(half_sqm);
                emit(c_start, c_start + sqm_len, "center");
            } else {
                if (pass.theta_start <= spec.riot_max_edge_elevation_deg &&
                    pass.theta_end <= spec.riot_max_edge_elevation_deg) {
                    emit(pass.t_start, pass.t_end, "");
                }
            }
        }
    }

    std::vector<Requirement> missing;
    for (std::size_t i = 0; i < set.requirements.size(); ++i) {
        if (set.by_requirement[i].empty()) missing.push_back(set.requirements[i]);
    }
    if (!missing.empty()) throw InfeasibleScenarioError(std::move(missing));
    return set;
}

} // namespace iotsched
