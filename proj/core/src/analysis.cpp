#include "pcgmum/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "pcgmum/errors.hpp"
#include "pcgmum/frft.hpp"

namespace pcgmum {

namespace {
void check_dist(const OutcomeDistribution& dist) {
    if (dist.probs.empty()) throw std::domain_error("OutcomeDistribution: empty");
    double total = 0;
    for (double p : dist.probs) {
        if (p < -1e-12 || p > 1.0 + 1e-12)
            throw std::domain_error("OutcomeDistribution: entry outside [0, 1]");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::domain_error("OutcomeDistribution: probabilities must sum to 1");
}
}  // namespace

double shannon_entropy(const OutcomeDistribution& dist) {
    check_dist(dist);
    double e = 0;
    for (double p : dist.probs)
        if (p > 0) e -= p * std::log2(p);
    return e;
}

double kl_uniform(const OutcomeDistribution& dist) {
    check_dist(dist);
    const double d = static_cast<double>(dist.probs.size());
    double kl = 0;
    for (double p : dist.probs)
        if (p > 0) kl += p * std::log2(p * d);
    return kl;
}

OutcomeDistribution apply_background(const OutcomeDistribution& dist, double noise_fraction) {
    check_dist(dist);
    if (noise_fraction < 0 || noise_fraction > 1)
        throw std::domain_error("apply_background: noise_fraction must lie in [0, 1]");
    OutcomeDistribution out = dist;
    const double u = 1.0 / static_cast<double>(dist.probs.size());
    for (double& p : out.probs) p = (1.0 - noise_fraction) * p + noise_fraction * u;
    return out;
}

double beam_width_dimensionless(double beam_radius_m, const PhysicalScale& scale) {
    if (beam_radius_m <= 0) throw std::domain_error("beam_width_dimensionless: radius must be positive");
    return beam_radius_m / length_scale(scale);
}

SweepResult entropy_sweep(const MumConfig& config, const SweepParams& params,
                          const PhysicalScale& scale) {
    const int j = params.prep_j, k = params.measure_k;
    if (j < 0 || j >= config.directions() || k < 0 || k >= config.directions() || j == k)
        throw std::domain_error("entropy_sweep: need two distinct valid directions");
    if (!(params.step_px > 0) || !(params.min_period_px > 0) ||
        params.max_period_px < params.min_period_px)
        throw std::domain_error("entropy_sweep: bad period range");

    const double px_per_unit = length_scale(scale) / scale.pixel_pitch;
    const double width = params.beam_width > 0
                             ? params.beam_width
                             : beam_width_dimensionless(params.beam_radius_m, scale);

    const GridState input = gaussian_state(params.grid_size, width, 0.0);
    const GridState prepared = prepare(input, config, j, params.prep_u);
    // The transform does not depend on the swept period; bin once per sample.
    const GridState rotated = frft(prepared, config.angles[k] - config.angles[j]);

    SweepResult result;
    result.j = j;
    result.k = k;
    for (double px = params.min_period_px; px <= params.max_period_px + 1e-9;
         px += params.step_px) {
        const double T = px / px_per_unit;
        const BinMask mask{T, config.d, T / (2.0 * static_cast<double>(config.d))};
        try {
            const OutcomeDistribution dist = bin_probs(rotated, mask);
            result.samples.emplace_back(px, shannon_entropy(dist));
        } catch (const grid_error&) {
            result.gaps.push_back(px);
        }
    }

    // Special periods: integer m with T_j * T(m) * m = 2 pi d |sin theta_jk|.
    const double sjk = std::abs(std::sin(config.angles[k] - config.angles[j]));
    const double product = 2.0 * std::numbers::pi * static_cast<double>(config.d) * sjk /
                           config.periods[j];
    for (std::int64_t m = 1;; ++m) {
        const double px = product / static_cast<double>(m) * px_per_unit;
        if (px < params.min_period_px) break;
        if (px <= params.max_period_px) result.markers.emplace_back(m, px);
    }
    return result;
}

Tables reproduce_tables(const MumConfig& config, const TableParams& params,
                        const PhysicalScale& scale) {
    const int R = config.directions();
    const double width = params.beam_width > 0
                             ? params.beam_width
                             : beam_width_dimensionless(params.beam_radius_m, scale);
    const GridState input = gaussian_state(params.grid_size, width, 0.0);

    Tables tables;
    tables.entropy.assign(R, std::vector<double>(R, 0.0));
    tables.kl.assign(R, std::vector<double>(R, 0.0));
    for (int j = 0; j < R; ++j) {
        const GridState prepared = prepare(input, config, j, params.prep_u);
        for (int k = 0; k < R; ++k) {
            OutcomeDistribution dist = measure_probs(prepared, config, j, k);
            dist = apply_background(dist, params.noise_fraction);
            tables.entropy[j][k] = shannon_entropy(dist);
            tables.kl[j][k] = kl_uniform(dist);
        }
    }
    return tables;
}

}  // namespace pcgmum
