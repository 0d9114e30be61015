#pragma once

#include <array>
#include <vector>

#include "iotsched/search/config.hpp"

namespace iotsched::search {

/// Reference directions on the 3-objective unit simplex used by the
/// niche-preserving selection.
///
/// The energy method starts from a deterministic seeded layout (with the
/// simplex corners pinned) and descends the pairwise Riesz s-energy, which
/// spreads an arbitrary number of points evenly. The lattice method is the
/// classic simplex grid; it returns the smallest lattice with at least the
/// requested number of points, so counts are exact only for the energy
/// method.
std::vector<std::array<double, 3>> reference_points(int count, RefPointMethod method);

std::vector<std::array<double, 3>> riesz_energy_points(int count);
std::vector<std::array<double, 3>> das_dennis_points(int min_count);

} // namespace iotsched::search
