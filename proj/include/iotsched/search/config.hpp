#pragma once

#include <cstdint>
#include <stdexcept>

namespace iotsched::search {

enum class RefPointMethod { RieszEnergy, DasDennis };

/// Settings for the evolutionary search and the random-search baseline.
struct SearchConfig {
    int population_size = 200;
    int reference_point_count = 100; ///< defaults to half the population
    double crossover_prob = 0.8;
    double mutation_prob = 0.2;
    double p_nc_min = 0.5;  ///< floor probability of picking a non-conflicting replacement
    double p_nc_max = 0.95; ///< ceiling probability of picking a non-conflicting replacement
    long long eval_budget = 50000;
    long long wallclock_cap_seconds = 3600;
    std::uint64_t rng_seed = 1;
    int threads = 1; ///< fitness evaluation fan-out; never changes results
    RefPointMethod ref_point_method = RefPointMethod::RieszEnergy;

    void validate() const {
        if (population_size < 2) throw std::invalid_argument("population_size must be >= 2");
        if (reference_point_count < 1)
            throw std::invalid_argument("reference_point_count must be >= 1");
        for (double p : {crossover_prob, mutation_prob, p_nc_min, p_nc_max}) {
            if (p < 0.0 || p > 1.0)
                throw std::invalid_argument("probabilities must lie in [0, 1]");
        }
        if (p_nc_min > p_nc_max) throw std::invalid_argument("p_nc_min must not exceed p_nc_max");
        if (eval_budget <= 0 || wallclock_cap_seconds <= 0)
            throw std::invalid_argument("budgets must be positive");
        if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    }
};

/// Settings for the max-min ant-system baseline.
struct AcoConfig {
    int ants = 50;
    double alpha = 1.0;   ///< pheromone importance
    double beta = 1.0;    ///< heuristic importance
    double rho = 0.5;     ///< evaporation rate
    double deposit = 100.0;
    double tau_min = 0.0; ///< <= 0: derived as tau_max / (2 * candidate count)
    double tau_max = 0.0; ///< <= 0: derived as deposit / rho
    long long eval_budget = 50000;
    long long wallclock_cap_seconds = 3600;
    std::uint64_t rng_seed = 1;

    void validate() const {
        if (ants < 1) throw std::invalid_argument("ants must be >= 1");
        if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (0, 1)");
        if (alpha < 0.0 || beta < 0.0) throw std::invalid_argument("alpha/beta must be >= 0");
        if (deposit <= 0.0) throw std::invalid_argument("deposit must be positive");
        if (tau_max > 0.0 && tau_min > 0.0 && tau_min >= tau_max)
            throw std::invalid_argument("tau_min must be below tau_max");
        if (eval_budget <= 0 || wallclock_cap_seconds <= 0)
            throw std::invalid_argument("budgets must be positive");
    }
};

} // namespace iotsched::search
