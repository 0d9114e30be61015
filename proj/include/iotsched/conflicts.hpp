#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "iotsched/scenario.hpp"

namespace iotsched {

/// True when the two procedures cannot coexist in one schedule:
///  (1) they satisfy the same requirement (same satellite and type),
///  (2) their intervals overlap ([start, end) semantics), or
///  (3) the gap from the earlier one's end to the later one's start is
///      shorter than the later one's configuration time.
/// Rules (2) and (3) apply only when the procedures share the antenna.
/// Symmetric and total.
bool conflicts_pair(const TestProcedure& a, const TestProcedure& b, bool single_antenna = true);

/// Undirected graph over candidate procedures whose edges mark pairs that
/// cannot coexist; feasible schedules are exactly its independent sets.
/// Immutable after build; all queries are const and thread-safe.
class ConflictGraph {
public:
    /// Builds the graph with an interval-sorted sweep for the temporal rules
    /// plus one clique per requirement for the alternative-candidate rule.
    static ConflictGraph build(const CandidateSet& cands);

    [[nodiscard]] std::size_t vertex_count() const { return adjacency_.size(); }
    [[nodiscard]] std::size_t edge_count() const { return edge_count_; }
    [[nodiscard]] bool has_edge(std::int32_t i, std::int32_t j) const;
    [[nodiscard]] const std::vector<std::int32_t>& neighbors(std::int32_t v) const {
        return adjacency_[static_cast<std::size_t>(v)];
    }

    /// Number of conflicting unordered pairs among the given vertices.
    [[nodiscard]] int violation_count(std::span<const std::int32_t> vertices) const;
    /// Same, resolving procedures by id. Throws on ids that are not vertices.
    [[nodiscard]] int violation_count(const ProcedureSchedule& s) const;

    [[nodiscard]] bool feasible(std::span<const std::int32_t> vertices) const {
        return violation_count(vertices) == 0;
    }
    [[nodiscard]] bool feasible(const ProcedureSchedule& s) const {
        return violation_count(s) == 0;
    }

    /// Maps a procedure id to its vertex index; throws on unknown ids.
    [[nodiscard]] std::int32_t vertex_of(const std::string& id) const;

private:
    std::vector<std::vector<std::int32_t>> adjacency_; // sorted neighbor lists
    std::unordered_map<std::string, std::int32_t> id_to_vertex_;
    std::size_t edge_count_ = 0;
};

/// Free-function forms of the graph queries.
inline ConflictGraph build_graph(const CandidateSet& cands) { return ConflictGraph::build(cands); }
inline int violation_count(const ProcedureSchedule& s, const ConflictGraph& g) {
    return g.violation_count(s);
}
inline bool feasible(const ProcedureSchedule& s, const ConflictGraph& g) { return g.feasible(s); }

} // namespace iotsched
