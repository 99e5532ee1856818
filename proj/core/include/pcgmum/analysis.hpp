#pragma once

#include <cstdint>
#include <vector>

#include "pcgmum/config.hpp"
#include "pcgmum/cvsim.hpp"

namespace pcgmum {

// Shannon entropy in bits, 0 log 0 := 0.
double shannon_entropy(const OutcomeDistribution& dist);

// Kullback-Leibler divergence from the uniform d-outcome distribution, in
// bits (same base as the entropy, so kl = log2(d) - entropy).
double kl_uniform(const OutcomeDistribution& dist);

// Uniform background-noise mixer: (1-f) p + f/d per entry.
OutcomeDistribution apply_background(const OutcomeDistribution& dist, double noise_fraction);

struct SweepParams {
    int prep_j = 0;
    std::int64_t prep_u = 0;
    int measure_k = 2;
    double min_period_px = 20.0;
    double max_period_px = 200.0;
    double step_px = 1.0;       // SLM pixel granularity
    std::size_t grid_size = 4096;
    double beam_width = 0.0;    // dimensionless; 0 = derive from beam_radius_m
    double beam_radius_m = 2.54e-3;
};

struct SweepResult {
    int j, k;
    std::vector<std::pair<double, double>> samples;        // (period px, entropy bits)
    std::vector<std::pair<std::int64_t, double>> markers;  // (m, period px) satisfying the
                                                           // period-product relation
    std::vector<double> gaps;                              // periods skipped due to grid errors
};

// Entropy of the measured distribution in direction k as direction k's
// period is swept, everything else held at the configured values.
SweepResult entropy_sweep(const MumConfig& config, const SweepParams& params,
                          const PhysicalScale& scale);

struct TableParams {
    double noise_fraction = 0.0;
    std::size_t grid_size = 4096;
    double beam_width = 0.0;  // dimensionless; 0 = derive from beam_radius_m
    double beam_radius_m = 2.54e-3;
    std::int64_t prep_u = 0;
};

struct Tables {
    std::vector<std::vector<double>> entropy;  // [j][k], bits
    std::vector<std::vector<double>> kl;       // [j][k], bits
};

// Prepare (j, u), measure k, mix in background noise; entropy and KL for
// every direction pair.
Tables reproduce_tables(const MumConfig& config, const TableParams& params,
                        const PhysicalScale& scale);

// Dimensionless Gaussian width for a physical beam radius.
double beam_width_dimensionless(double beam_radius_m, const PhysicalScale& scale);

}  // namespace pcgmum
