#include "iotsched/search/refpoints.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "iotsched/rng.hpp"

namespace iotsched::search {

namespace {

constexpr double kEnergyExponent = 7.0; // s in 1/d^s; > dimension keeps forces local

void project_to_simplex(std::array<double, 3>& x) {
    for (double& v : x) v = std::max(v, 1e-9);
    const double sum = x[0] + x[1] + x[2];
    for (double& v : x) v /= sum;
}

} // namespace

std::vector<std::array<double, 3>> riesz_energy_points(int count) {
    if (count < 1) throw std::invalid_argument("reference point count must be >= 1");
    std::vector<std::array<double, 3>> pts;
    pts.reserve(static_cast<std::size_t>(count));

    // corners first so the axes stay represented
    const std::size_t fixed = std::min<std::size_t>(3, static_cast<std::size_t>(count));
    const std::array<std::array<double, 3>, 3> corners = {
        {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
    for (std::size_t i = 0; i < fixed; ++i) pts.push_back(corners[i]);

    // deterministic interior seeding, independent of the run seed
    Rng rng(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(count));
    while (pts.size() < static_cast<std::size_t>(count)) {
        // uniform over the simplex via sorted-gaps sampling
        double u = rng.uniform01();
        double v = rng.uniform01();
        if (u > v) std::swap(u, v);
        std::array<double, 3> p{u, v - u, 1.0 - v};
        project_to_simplex(p);
        pts.push_back(p);
    }
    if (pts.size() <= fixed) return pts;

    std::vector<std::array<double, 3>> grad(pts.size());
    double step = 0.05;
    for (int iter = 0; iter < 400; ++iter) {
        for (auto& g : grad) g = {0.0, 0.0, 0.0};
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                std::array<double, 3> diff;
                double d2 = 0.0;
                for (std::size_t k = 0; k < 3; ++k) {
                    diff[k] = pts[i][k] - pts[j][k];
                    d2 += diff[k] * diff[k];
                }
                d2 = std::max(d2, 1e-12);
                // gradient of 1/d^s pushes the pair apart
                const double scale = kEnergyExponent / std::pow(d2, kEnergyExponent / 2.0 + 1.0);
                for (std::size_t k = 0; k < 3; ++k) {
                    grad[i][k] += diff[k] * scale;
                    grad[j][k] -= diff[k] * scale;
                }
            }
        }
        double max_norm = 0.0;
        for (std::size_t i = fixed; i < pts.size(); ++i) {
            // restrict motion to the simplex plane
            const double mean = (grad[i][0] + grad[i][1] + grad[i][2]) / 3.0;
            double norm = 0.0;
            for (std::size_t k = 0; k < 3; ++k) {
                grad[i][k] -= mean;
                norm += grad[i][k] * grad[i][k];
            }
            max_norm = std::max(max_norm, std::sqrt(norm));
        }
        if (max_norm < 1e-12) break;
        for (std::size_t i = fixed; i < pts.size(); ++i) {
            for (std::size_t k = 0; k < 3; ++k) {
                pts[i][k] += step * grad[i][k] / max_norm * 0.1;
            }
            project_to_simplex(pts[i]);
        }
        step *= 0.995;
    }
    return pts;
}

std::vector<std::array<double, 3>> das_dennis_points(int min_count) {
    if (min_count < 1) throw std::invalid_argument("reference point count must be >= 1");
    int divisions = 1;
    while ((divisions + 1) * (divisions + 2) / 2 < min_count) ++divisions;
    std::vector<std::array<double, 3>> pts;
    const double h = static_cast<double>(divisions);
    for (int i = 0; i <= divisions; ++i) {
        for (int j = 0; j + i <= divisions; ++j) {
            const int k = divisions - i - j;
            pts.push_back({static_cast<double>(i) / h, static_cast<double>(j) / h,
                           static_cast<double>(k) / h});
        }
    }
    return pts;
}

std::vector<std::array<double, 3>> reference_points(int count, RefPointMethod method) {
    return method == RefPointMethod::RieszEnergy ? riesz_energy_points(count)
                                                 : das_dennis_points(count);
}

} // namespace iotsched::search
