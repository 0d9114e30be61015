#include "iotsched/search/archive.hpp"

#include <algorithm>

namespace iotsched::search {

bool dominates(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    bool strictly = false;
    for (std::size_t k = 0; k < 3; ++k) {
        if (a[k] > b[k]) return false;
        if (a[k] < b[k]) strictly = true;
    }
    return strictly;
}

bool RunResult::any_feasible() const {
    return std::any_of(front.begin(), front.end(),
                       [](const ArchiveEntry& e) { return e.fitness.feasible(); });
}

void ParetoArchive::offer(const Genome& genome, const RawFitness& raw) {
    if (raw.violations > 0) {
        if (has_feasible_) return;
        if (best_violations_ >= 0 && raw.violations > best_violations_) return;
        if (best_violations_ < 0 || raw.violations < best_violations_) {
            entries_.clear();
            best_violations_ = raw.violations;
        }
        for (const auto& e : entries_) {
            if (e.genome == genome) return;
        }
        FitnessVector fv;
        fv.violations = raw.violations;
        const double g = static_cast<double>(raw.violations);
        fv.minimized = {1.0 + g, 1.0 + g, 1.0 + g};
        entries_.push_back({genome, fv});
        return;
    }

    if (!has_feasible_) {
        entries_.clear();
        has_feasible_ = true;
    }
    FitnessVector fv;
    fv.violations = 0;
    fv.use = raw.use;
    fv.frag = raw.frag;
    fv.cost = raw.cost;
    fv.minimized = {1.0 - raw.use, 1.0 - raw.frag, raw.cost};

    for (const auto& e : entries_) {
        if (dominates(e.fitness.minimized, fv.minimized)) return;
        if (e.fitness.minimized == fv.minimized && e.genome == genome) return;
    }
    entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                  [&fv](const ArchiveEntry& e) {
                                      return dominates(fv.minimized, e.fitness.minimized);
                                  }),
                   entries_.end());
    entries_.push_back({genome, fv});
}

std::vector<ArchiveEntry> ParetoArchive::sorted_entries() const {
    std::vector<ArchiveEntry> sorted = entries_;
    std::sort(sorted.begin(), sorted.end(), [](const ArchiveEntry& a, const ArchiveEntry& b) {
        if (a.fitness.minimized != b.fitness.minimized)
            return a.fitness.minimized < b.fitness.minimized;
        return a.genome < b.genome;
    });
    return sorted;
}

} // namespace iotsched::search
