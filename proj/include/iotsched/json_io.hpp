#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "iotsched/conflicts.hpp"
#include "iotsched/metrics.hpp"
#include "iotsched/scenario.hpp"
#include "iotsched/search/archive.hpp"
#include "iotsched/search/config.hpp"
#include "iotsched/slotting.hpp"

namespace iotsched::io {

using nlohmann::json;

json to_json(const CampaignSpec& spec);
CampaignSpec campaign_spec_from_json(const json& doc);

json to_json(const SlottingPolicy& policy);
SlottingPolicy slotting_policy_from_json(const json& doc);

json to_json(const search::SearchConfig& cfg);
search::SearchConfig search_config_from_json(const json& doc);

json to_json(const search::AcoConfig& cfg);
search::AcoConfig aco_config_from_json(const json& doc);

/// Everything needed to reproduce one optimization run byte for byte.
struct RunManifest {
    std::string algorithm = "nsga3"; ///< nsga3 | rs | aco
    std::string scenario_path;
    std::string passes_path;
    std::string output_dir;
    search::SearchConfig search;
    search::AcoConfig aco;
    SlottingPolicy slotting;
};

json to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const json& doc);

/// Final archive document: run metadata plus one record per front member
/// with its genome, decoded procedures, slot schedule and fitness.
json archive_to_json(const search::RunResult& result, const CandidateSet& cands,
                     const SlottingPolicy& policy);

/// Per-iteration progress document.
json telemetry_to_json(const search::RunResult& result);

/// Minimized-objective points of an archive document, for indicator input.
metrics::Front front_from_archive_json(const json& doc, std::string provenance);

/// Conflict graph as {"vertices": [ids], "edges": [[i, j], ...]}.
json graph_to_json(const ConflictGraph& graph, const CandidateSet& cands);

json slots_to_json(const SlotSchedule& slots);

/// Gantt-friendly CSV: slot_start,slot_end,procedures. Each slot lists the
/// ids of the procedures whose covered interval it contains, ';'-joined.
void write_slots_csv(std::ostream& out, const SlotSchedule& slots, const ProcedureSchedule& s,
                     const SlottingPolicy& policy);

} // namespace iotsched::io
