#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "pcgmum/cvsim.hpp"

namespace pcgmum {

// Fractional Fourier transform of order angle theta (reduced mod 2 pi).
//
// Quarter turns use closed forms (identity, centered DFT, parity, inverse
// centered DFT); every other order goes through a discrete Hermite-Gaussian
// eigenbasis built once per grid size and cached. The eigenbasis route is
// exactly unitary and exactly additive, and its quarter turns coincide with
// the closed forms, so the two paths are interchangeable.
GridState frft(const GridState& state, double order_angle);

// Chirp-multiply / FFT / chirp-multiply evaluation (Bluestein convolution of
// the tan-sin-tan decomposition, composing with a quarter turn when |sin| is
// small). Accurate on smooth states; kept as an independent cross-validation
// route — hard-edged (masked) states alias its quadrature and it must not be
// used for them.
GridState frft_chirp(const GridState& state, double order_angle);

// Symmetric-convention Fourier transform on the balanced grid: the centered
// DFT, applied matrix-free via FFT. inverse=true applies the adjoint.
void centered_dft(std::vector<std::complex<double>>& amplitudes, bool inverse = false);

// Eigenbasis handle, exposed for oracles and benchmarks. Columns of `vectors`
// (column-major, N x N) are the basis states; `index[t]` is the Hermite index
// whose eigenvalue exp(-i n theta) column t carries.
struct FrftBasis {
    std::size_t N;
    std::vector<int> index;
    std::vector<double> vectors;

    std::vector<std::complex<double>> apply(const std::vector<std::complex<double>>& x,
                                            double order_angle) const;
};

// Build or fetch the cached basis for grid size N (power of two, <= 8192;
// larger sizes raise resource_error — quarter-turn orders remain available
// at any N through the closed-form paths).
const FrftBasis& frft_basis(std::size_t N);

}  // namespace pcgmum
