#include "pcgmum/cvsim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pcgmum/errors.hpp"
#include "pcgmum/frft.hpp"

namespace pcgmum {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }
}  // namespace

double GridState::norm() const {
    double s = 0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return std::sqrt(s * spacing);
}

void GridState::normalize() {
    const double n = norm();
    if (!(n > 0)) throw std::domain_error("GridState::normalize: zero norm");
    for (auto& a : amplitudes) a /= n;
}

GridState balanced_grid(std::size_t N) {
    if (!is_pow2(N)) throw std::domain_error("balanced_grid: N must be a power of two");
    GridState g;
    g.amplitudes.assign(N, 0.0);
    g.spacing = std::sqrt(kTwoPi / static_cast<double>(N));
    g.center = 0.0;
    return g;
}

BinMask mask_for(const MumConfig& config, int j) {
    return BinMask{config.periods.at(j), config.d, config.offsets.at(j)};
}

GridState gaussian_state(std::size_t N, double width, double center) {
    GridState g = balanced_grid(N);
    if (!(width > 0)) throw std::domain_error("gaussian_state: width must be positive");
    if (width < 4.0 * g.spacing || width > g.extent() / 4.0)
        throw grid_error("gaussian_state: width " + std::to_string(width) +
                         " unresolvable on this grid (need 4*dq <= w <= extent/4)");
    for (std::size_t i = 0; i < N; ++i) {
        const double x = g.q(i) - center;
        g.amplitudes[i] = std::exp(-x * x / (2.0 * width * width));
    }
    g.normalize();
    return g;
}

int mask_value(double q, const BinMask& mask, std::int64_t u) {
    if (mask.period <= 0 || mask.bins < 1)
        throw std::domain_error("mask_value: invalid mask");
    if (u < 0 || u >= mask.bins) throw std::domain_error("mask_value: u out of range");
    double z = std::fmod(q - mask.offset, mask.period);
    if (z < 0) z += mask.period;
    const double s = mask.bin_width();
    return (z >= static_cast<double>(u) * s && z < static_cast<double>(u + 1) * s) ? 1 : 0;
}

GridState prepare(const GridState& input, const MumConfig& config, int j, std::int64_t u) {
    if (j < 0 || j >= config.directions())
        throw std::domain_error("prepare: direction index out of range");
    GridState out = frft(input, config.angles.at(j));
    const BinMask mask = mask_for(config, j);
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!mask_value(out.q(i), mask, u)) out.amplitudes[i] = 0.0;
    const double n = out.norm();
    if (n < 1e-12)
        throw empty_preparation_error("prepare: mask (" + std::to_string(j) + ", " +
                                      std::to_string(u) + ") annihilated the state");
    for (auto& a : out.amplitudes) a /= n;
    return out;
}

OutcomeDistribution bin_probs(const GridState& state, const BinMask& mask) {
    // Probability mass concentrated in the outer 2% of the grid signals a
    // state parked against the boundary, which wraps around under rotations.
    // This is a coarse sanity guard only: hard-edged masked states carry
    // slowly decaying spectral combs whose line intensities near the grid
    // edge are physical, not a discretization failure, so the threshold here
    // is deliberately lax.
    const std::size_t N = state.size();
    const std::size_t edge = std::max<std::size_t>(1, N / 50);
    double edge_mass = 0;
    for (std::size_t i = 0; i < edge; ++i)
        edge_mass += (std::norm(state.amplitudes[i]) +
                      std::norm(state.amplitudes[N - 1 - i])) *
                     state.spacing;
    if (edge_mass > 0.05)
        throw grid_error("bin_probs: state mass at grid edge (" +
                         std::to_string(edge_mass) + ")");

    OutcomeDistribution dist;
    dist.probs.assign(static_cast<std::size_t>(mask.bins), 0.0);
    for (std::size_t i = 0; i < N; ++i) {
        const double w = std::norm(state.amplitudes[i]) * state.spacing;
        if (w == 0.0) continue;
        const double q = state.q(i);
        for (std::int64_t v = 0; v < mask.bins; ++v)
            if (mask_value(q, mask, v)) {
                dist.probs[static_cast<std::size_t>(v)] += w;
                break;
            }
    }
    double total = 0;
    for (double p : dist.probs) total += p;
    const double loss = std::abs(1.0 - total);
    if (loss > 1e-3)
        throw grid_error("bin_probs: grid too small (truncation loss " +
                         std::to_string(loss) + ")");
    if (loss > 1e-6) dist.truncation_loss = loss;
    if (total > 0)
        for (double& p : dist.probs) p /= total;
    return dist;
}

OutcomeDistribution measure_probs(const GridState& state, const MumConfig& config,
                                  int from_j, int to_k) {
    if (from_j < 0 || from_j >= config.directions() || to_k < 0 ||
        to_k >= config.directions())
        throw std::domain_error("measure_probs: direction index out of range");
    const GridState rotated = frft(state, config.angles.at(to_k) - config.angles.at(from_j));
    return bin_probs(rotated, mask_for(config, to_k));
}

std::vector<double> intensity_profile(const GridState& state) {
    std::vector<double> out(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) out[i] = std::norm(state.amplitudes[i]);
    return out;
}

}  // namespace pcgmum
