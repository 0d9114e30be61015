#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

namespace iotsched::metrics {

using Point = std::array<double, 3>;

/// A set of mutually non-dominated points in minimized objective space.
struct Front {
    std::vector<Point> points;
    std::string provenance;
};

/// True when a is no worse everywhere and strictly better somewhere.
bool dominates(const Point& a, const Point& b);

/// Non-dominated subset of a point set, duplicates collapsed, sorted.
std::vector<Point> non_dominated_subset(std::vector<Point> points);

/// Reference front: non-dominated subset of the union of all runs' fronts.
Front reference_front(const std::vector<Front>& runs);

/// Generational distance: mean distance from each front point to its nearest
/// reference point. Throws on empty inputs.
double gd(const Front& front, const Front& ref);

/// Generalized spread: dispersion of nearest-neighbor distances plus the
/// objective-wise extreme-point terms,
/// (sum_k d(E_k) + sum_i |d_i - mean|) / (sum_k d(E_k) + N * mean).
/// A single point yields 0; coincident points yield 1 (total collapse).
double spread(const Front& front);

/// Exact hypervolume in 3-D by a plane-sweep over the third objective.
/// Points that fail to dominate the reference point are discarded with a
/// warning on stderr; an empty effective front yields 0.
double hypervolume(const Front& front, const Point& ref_point);

struct MannWhitneyResult {
    double u = 0.0;       ///< U statistic of the first sample
    double p_value = 1.0; ///< two-sided, normal approximation with tie correction
};

/// Rank-sum test for two independent samples. Degenerate pooled samples
/// (all values identical) yield p = 1.
MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

/// Vargha-Delaney effect size: P(a > b) + 0.5 P(a = b) by pairwise counting.
double vargha_delaney_a12(std::span<const double> a, std::span<const double> b);

} // namespace iotsched::metrics
