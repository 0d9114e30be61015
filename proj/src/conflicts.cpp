#include "iotsched/conflicts.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace iotsched {

bool conflicts_pair(const TestProcedure& a, const TestProcedure& b, bool single_antenna) {
    // alternative candidates for the same requirement
    if (a.proc_type == b.proc_type && a.satellite_id() == b.satellite_id()) return true;
    if (!single_antenna) return false;

    // temporal overlap, [start, end)
    if (a.t_start < b.t_end && b.t_start < a.t_end) return true;

    // repositioning gap before the later procedure
    const TestProcedure& earlier = a.t_end <= b.t_start ? a : b;
    const TestProcedure& later = a.t_end <= b.t_start ? b : a;
    const std::int64_t gap = later.t_start.epoch_seconds() - earlier.t_end.epoch_seconds();
    return gap < later.config_time.seconds();
}

ConflictGraph ConflictGraph::build(const CandidateSet& cands) {
    const auto n = static_cast<std::int32_t>(cands.size());
    ConflictGraph g;
    g.adjacency_.assign(static_cast<std::size_t>(n), {});
    g.id_to_vertex_.reserve(static_cast<std::size_t>(n));
    for (std::int32_t i = 0; i < n; ++i) {
        auto [it, inserted] = g.id_to_vertex_.emplace(cands.candidates[static_cast<std::size_t>(i)].id, i);
        if (!inserted)
            throw std::invalid_argument("duplicate candidate id " + it->first);
    }

    auto add_edge = [&g](std::int32_t i, std::int32_t j) {
        g.adjacency_[static_cast<std::size_t>(i)].push_back(j);
        g.adjacency_[static_cast<std::size_t>(j)].push_back(i);
    };

    // requirement cliques: alternatives for one requirement are pairwise exclusive
    for (const auto& group : cands.by_requirement) {
        for (std::size_t a = 0; a < group.size(); ++a) {
            for (std::size_t b = a + 1; b < group.size(); ++b) add_edge(group[a], group[b]);
        }
    }

    // temporal conflicts via a start-sorted sweep; a later candidate can only
    // conflict with an earlier one while it starts before end + max config gap
    std::int64_t max_config = 0;
    for (const auto& c : cands.candidates)
        max_config = std::max(max_config, c.config_time.seconds());

    std::vector<std::int32_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
        const auto& pa = cands.candidates[static_cast<std::size_t>(a)];
        const auto& pb = cands.candidates[static_cast<std::size_t>(b)];
        return pa.t_start != pb.t_start ? pa.t_start < pb.t_start : a < b;
    });
    for (std::size_t p = 0; p < order.size(); ++p) {
        const auto& a = cands.candidates[static_cast<std::size_t>(order[p])];
        const std::int64_t horizon = a.t_end.epoch_seconds() + max_config;
        for (std::size_t q = p + 1; q < order.size(); ++q) {
            const auto& b = cands.candidates[static_cast<std::size_t>(order[q])];
            if (b.t_start.epoch_seconds() >= horizon) break;
            const bool same_requirement =
                a.proc_type == b.proc_type && a.satellite_id() == b.satellite_id();
            if (same_requirement) continue; // already covered by the cliques
            if (conflicts_pair(a, b)) add_edge(order[p], order[q]);
        }
    }

    std::size_t total = 0;
    for (auto& nbrs : g.adjacency_) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        total += nbrs.size();
    }
    g.edge_count_ = total / 2;
    return g;
}

bool ConflictGraph::has_edge(std::int32_t i, std::int32_t j) const {
    if (i == j) return false;
    const auto& a = adjacency_[static_cast<std::size_t>(i)];
    const auto& b = adjacency_[static_cast<std::size_t>(j)];
    const auto& smaller = a.size() <= b.size() ? a : b;
    const std::int32_t target = a.size() <= b.size() ? j : i;
    return std::binary_search(smaller.begin(), smaller.end(), target);
}

int ConflictGraph::violation_count(std::span<const std::int32_t> vertices) const {
    int count = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i] < 0 || static_cast<std::size_t>(vertices[i]) >= adjacency_.size())
            throw std::out_of_range("violation_count: vertex " + std::to_string(vertices[i]) +
                                    " outside the graph");
        for (std::size_t j = i + 1; j < vertices.size(); ++j) {
            if (has_edge(vertices[i], vertices[j])) ++count;
        }
    }
    return count;
}

int ConflictGraph::violation_count(const ProcedureSchedule& s) const {
    std::vector<std::int32_t> vertices;
    vertices.reserve(s.size());
    for (const auto& p : s.procedures) vertices.push_back(vertex_of(p.id));
    return violation_count(vertices);
}

std::int32_t ConflictGraph::vertex_of(const std::string& id) const {
    const auto it = id_to_vertex_.find(id);
    if (it == id_to_vertex_.end())
        throw std::out_of_range("procedure id \"" + id + "\" is not a conflict-graph vertex");
    return it->second;
}

} // namespace iotsched
