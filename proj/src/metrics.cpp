#include "iotsched/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace iotsched::metrics {

bool dominates(const Point& a, const Point& b) {
    bool strictly = false;
    for (std::size_t k = 0; k < 3; ++k) {
        if (a[k] > b[k]) return false;
        if (a[k] < b[k]) strictly = true;
    }
    return strictly;
}

std::vector<Point> non_dominated_subset(std::vector<Point> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<Point> kept;
    for (const auto& p : points) {
        bool is_dominated = false;
        for (const auto& q : points) {
            if (dominates(q, p)) {
                is_dominated = true;
                break;
            }
        }
        if (!is_dominated) kept.push_back(p);
    }
    return kept;
}

Front reference_front(const std::vector<Front>& runs) {
    if (runs.empty()) throw std::invalid_argument("reference_front: no runs");
    std::vector<Point> all;
    for (const auto& run : runs) all.insert(all.end(), run.points.begin(), run.points.end());
    return Front{non_dominated_subset(std::move(all)), "reference"};
}

namespace {

double distance(const Point& a, const Point& b) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        const double d = a[k] - b[k];
        d2 += d * d;
    }
    return std::sqrt(d2);
}

double nearest_distance(const Point& p, std::span<const Point> others, std::size_t skip) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < others.size(); ++i) {
        if (i == skip) continue;
        best = std::min(best, distance(p, others[i]));
    }
    return best;
}

} // namespace

double gd(const Front& front, const Front& ref) {
    if (front.points.empty() || ref.points.empty())
        throw std::invalid_argument("gd: empty front");
    double sum = 0.0;
    for (const auto& p : front.points) {
        sum += nearest_distance(p, ref.points, ref.points.size());
    }
    return sum / static_cast<double>(front.points.size());
}

double spread(const Front& front) {
    const auto& pts = front.points;
    if (pts.size() <= 1) return 0.0;

    std::vector<double> nn(pts.size());
    double mean = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        nn[i] = nearest_distance(pts[i], pts, i);
        mean += nn[i];
    }
    mean /= static_cast<double>(pts.size());
    if (mean <= 0.0) return 1.0; // all points coincide: no diversity at all

    double extremes = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            if (pts[i][k] < pts[best][k]) best = i;
        }
        extremes += nn[best];
    }
    double deviation = 0.0;
    for (const double d : nn) deviation += std::fabs(d - mean);
    return (extremes + deviation) / (extremes + static_cast<double>(pts.size()) * mean);
}

double hypervolume(const Front& front, const Point& ref_point) {
    std::vector<Point> pts;
    pts.reserve(front.points.size());
    for (const auto& p : front.points) {
        if (p[0] <= ref_point[0] && p[1] <= ref_point[1] && p[2] <= ref_point[2]) {
            pts.push_back(p);
        } else {
            std::cerr << "warning: hypervolume: discarding point outside the reference box\n";
        }
    }
    if (pts.empty()) return 0.0;

    // Sweep the third objective; between consecutive levels the dominated
    // x/y area is the staircase of the points active so far.
    std::sort(pts.begin(), pts.end(),
              [](const Point& a, const Point& b) { return a[2] < b[2]; });

    auto staircase_area = [&ref_point](std::vector<std::array<double, 2>>& xy) {
        // keep only 2-D non-dominated corners, sorted by x ascending
        std::sort(xy.begin(), xy.end());
        std::vector<std::array<double, 2>> stairs;
        double best_y = std::numeric_limits<double>::infinity();
        for (const auto& p : xy) {
            if (p[1] < best_y) {
                stairs.push_back(p);
                best_y = p[1];
            }
        }
        double area = 0.0;
        double x_edge = ref_point[0];
        for (std::size_t i = stairs.size(); i-- > 0;) {
            area += (x_edge - stairs[i][0]) * (ref_point[1] - stairs[i][1]);
            x_edge = stairs[i][0];
        }
        return area;
    };

    double volume = 0.0;
    std::vector<std::array<double, 2>> active;
    std::size_t i = 0;
    while (i < pts.size()) {
        const double z = pts[i][2];
        while (i < pts.size() && pts[i][2] == z) {
            active.push_back({pts[i][0], pts[i][1]});
            ++i;
        }
        const double z_next = i < pts.size() ? pts[i][2] : ref_point[2];
        volume += staircase_area(active) * (z_next - z);
    }
    return volume;
}

MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("mann_whitney_u: empty sample");
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    const std::size_t n = na + nb;

    std::vector<std::pair<double, int>> pooled;
    pooled.reserve(n);
    for (const double v : a) pooled.emplace_back(v, 0);
    for (const double v : b) pooled.emplace_back(v, 1);
    std::sort(pooled.begin(), pooled.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    // average ranks over ties, accumulating the tie correction term
    double rank_sum_a = 0.0;
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && pooled[j].first == pooled[i].first) ++j;
        const double t = static_cast<double>(j - i);
        const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) {
            if (pooled[k].second == 0) rank_sum_a += avg_rank;
        }
        tie_term += t * t * t - t;
        i = j;
    }

    MannWhitneyResult res;
    res.u = rank_sum_a - static_cast<double>(na) * (static_cast<double>(na) + 1.0) / 2.0;

    const double n_a = static_cast<double>(na);
    const double n_b = static_cast<double>(nb);
    const double n_d = static_cast<double>(n);
    const double mu = n_a * n_b / 2.0;
    const double variance =
        n_a * n_b / 12.0 * ((n_d + 1.0) - tie_term / (n_d * (n_d - 1.0)));
    if (variance <= 0.0) {
        res.p_value = 1.0; // pooled values all identical
        return res;
    }
    const double z = std::max(std::fabs(res.u - mu) - 0.5, 0.0) / std::sqrt(variance);
    res.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return res;
}

double vargha_delaney_a12(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("vargha_delaney_a12: empty sample");
    double wins = 0.0;
    for (const double x : a) {
        for (const double y : b) {
            if (x > y)
                wins += 1.0;
            else if (x == y)
                wins += 0.5;
        }
    }
    return wins / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

} // namespace iotsched::metrics
