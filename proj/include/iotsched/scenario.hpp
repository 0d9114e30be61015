#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "iotsched/model.hpp"
#include "iotsched/objectives.hpp"

namespace iotsched {

/// One test the campaign must run: a (satellite, procedure type) pair.
struct Requirement {
    std::string satellite_id;
    ProcedureType proc_type = ProcedureType::Sqm;

    bool operator==(const Requirement&) const = default;
    [[nodiscard]] std::string label() const {
        return std::string(to_string(proc_type)) + "/" + satellite_id;
    }
};

/// Everything that defines one campaign: site, window, satellites under
/// test, the required procedures and the timing/cost parameters.
struct CampaignSpec {
    std::string site_id;
    Instant window_start; ///< campaign start
    Instant window_end;   ///< campaign end
    std::vector<std::string> satellites;
    std::vector<Requirement> requirements;
    int config_time_minutes = 15;
    int sqm_duration_minutes = 45;
    double riot_max_edge_elevation_deg = 5.0;
    CostModel cost_model;

    [[nodiscard]] Duration config_time() const { return Duration::of_minutes(config_time_minutes); }
    [[nodiscard]] Duration sqm_duration() const { return Duration::of_minutes(sqm_duration_minutes); }
    void validate() const;
};

/// A campaign that cannot be scheduled because some requirement has no
/// candidate procedure at all.
struct InfeasibleScenarioError : std::runtime_error {
    explicit InfeasibleScenarioError(std::vector<Requirement> missing);
    std::vector<Requirement> uncovered;
};

/// All candidate procedures generated for a campaign, grouped by the
/// requirement each one satisfies. Candidate indices are stable and used as
/// conflict-graph vertices and genome gene values.
struct CandidateSet {
    std::vector<TestProcedure> candidates;
    std::vector<Requirement> requirements;
    /// Per requirement (parallel to `requirements`), indices into `candidates`.
    std::vector<std::vector<std::int32_t>> by_requirement;
    /// Per candidate, the index of the requirement it satisfies.
    std::vector<std::int32_t> candidate_requirement;

    [[nodiscard]] std::size_t size() const { return candidates.size(); }
};

enum class PassFileFormat { Csv, Json };

/// Header expected by the CSV pass format.
inline constexpr const char* kPassCsvHeader =
    "sat,site,t_start,t_max,t_end,el_start,el_max,el_end,az_start,az_max,az_end";

/// Reads and validates a pass catalog. CSV uses `kPassCsvHeader` with
/// ISO-8601 times; JSON is an array of objects with the same keys. Parse
/// failures and invariant violations raise errors naming the record. An
/// empty input yields an empty catalog with a warning on stderr.
PassCatalog load_passes(std::istream& in, PassFileFormat format);

void write_passes_csv(std::ostream& out, const PassCatalog& catalog);

/// Knobs for the synthetic pass generator.
struct SynthParams {
    int period_minutes = 480;
    int period_jitter_minutes = 45;
    int pass_duration_minutes = 110;
    int pass_duration_jitter_minutes = 30;
    /// Fraction of satellites whose passes rise and set below the RIOT
    /// eligibility elevation; the first round(fraction * n) satellites are
    /// chosen so a fixed requirement list stays coverable.
    double riot_fraction = 0.25;
};

/// Deterministic synthetic pass catalog: per satellite, one pass per orbital
/// period with jittered timing, culmination near mid-pass and elevations
/// drawn per RIOT eligibility. Identical seeds yield identical catalogs.
PassCatalog synth_passes(std::uint64_t seed, int n_sats, Instant window_start, Instant window_end,
                         const SynthParams& params = {}, const std::string& site_id = "gs1");

/// Expands a pass catalog into the candidate procedures of a campaign:
/// three fixed-length placements per pass for each SQM requirement (starting
/// at, ending at and centered on the culmination; placements that would
/// escape the pass are dropped) and one full-pass candidate per eligible
/// low-elevation pass for each RIOT requirement. Throws
/// InfeasibleScenarioError when any requirement ends up without candidates.
CandidateSet generate_candidates(const PassCatalog& catalog, const CampaignSpec& spec);

} // namespace iotsched
