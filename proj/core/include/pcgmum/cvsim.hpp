#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "pcgmum/config.hpp"

namespace pcgmum {

// Complex wavefunction sampled on a uniform grid. Continuum-normalized:
// norm() integrates |psi|^2 dq with the Riemann rule.
struct GridState {
    std::vector<std::complex<double>> amplitudes;
    double spacing = 0.0;
    double center = 0.0;  // coordinate of the grid midpoint (index N/2)

    std::size_t size() const { return amplitudes.size(); }
    double extent() const { return spacing * static_cast<double>(size()); }
    double q(std::size_t i) const {
        return center + (static_cast<double>(i) - static_cast<double>(size()) / 2.0) * spacing;
    }
    double norm() const;
    void normalize();
};

// Empty state on the balanced grid dq = sqrt(2 pi / N), on which the
// symmetric-convention Fourier transform is exactly the centered DFT.
// N must be a power of two.
GridState balanced_grid(std::size_t N);

// One direction's periodic square-wave binning.
struct BinMask {
    double period;
    std::int64_t bins;
    double offset;

    double bin_width() const { return period / static_cast<double>(bins); }
};

BinMask mask_for(const MumConfig& config, int j);

// d nonnegative probabilities summing to 1.
struct OutcomeDistribution {
    std::vector<double> probs;
    // Probability mass renormalized away (grid truncation); recorded when
    // above 1e-6, fatal above 1e-3.
    double truncation_loss = 0.0;
};

// Normalized Gaussian exp(-(q-center)^2 / (2 width^2)) on the balanced grid.
GridState gaussian_state(std::size_t N, double width, double center);

// 1 iff (q - offset) mod period falls in bin u's half-open interval
// [u s, (u+1) s).
int mask_value(double q, const BinMask& mask, std::int64_t u);

// FrFT by theta_j followed by the bin-u mask of direction j, renormalized.
GridState prepare(const GridState& input, const MumConfig& config, int j, std::int64_t u);

// FrFT by (theta_k - theta_j), then Riemann-binned probabilities of
// direction k's mask.
OutcomeDistribution measure_probs(const GridState& state, const MumConfig& config,
                                  int from_j, int to_k);

// Riemann-binned |state|^2 over the mask's bins (no transform). Renormalizes
// against truncation, fatal above 1e-3 loss.
OutcomeDistribution bin_probs(const GridState& state, const BinMask& mask);

// |psi(q)|^2 sampled on the grid.
std::vector<double> intensity_profile(const GridState& state);

}  // namespace pcgmum
