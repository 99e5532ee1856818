#include "pcgmum/frft.hpp"

#include <cblas.h>
#include <fftw3.h>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "pcgmum/errors.hpp"

namespace pcgmum {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAngleTol = 1e-12;

bool is_pow2(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

// The FFTW planner is not thread-safe; executions are.
std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

void fft_inplace(std::vector<std::complex<double>>& x, int sign) {
    fftw_complex* data = reinterpret_cast<fftw_complex*>(x.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(x.size()), data, data, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(plan);
    }
}

void require_balanced(const GridState& state) {
    const std::size_t N = state.size();
    if (!is_pow2(N))
        throw std::domain_error("frft: grid size must be a power of two");
    if (std::abs(state.spacing - std::sqrt(kTwoPi / static_cast<double>(N))) > 1e-12 ||
        std::abs(state.center) > 1e-12)
        throw std::domain_error("frft: state must live on the balanced grid (see balanced_grid)");
}

// Index map realizing q -> -q on the balanced grid (the square of the
// centered DFT).
std::vector<std::complex<double>> parity(const std::vector<std::complex<double>>& x) {
    const std::size_t N = x.size();
    std::vector<std::complex<double>> y(N);
    y[0] = x[0];
    for (std::size_t i = 1; i < N; ++i) y[i] = x[N - i];
    return y;
}

double reduce_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0) a += kTwoPi;
    return a;
}

}  // namespace

void centered_dft(std::vector<std::complex<double>>& x, bool inverse) {
    const std::size_t N = x.size();
    if (!is_pow2(N)) throw std::domain_error("centered_dft: size must be a power of two");
    if (inverse)
        for (auto& v : x) v = std::conj(v);
    // F x = exp(-2 pi i c^2 / N) (-1)^m FFT[(-1)^n x_n] / sqrt(N), c = N/2.
    for (std::size_t n = 1; n < N; n += 2) x[n] = -x[n];
    fft_inplace(x, FFTW_FORWARD);
    const double c = static_cast<double>(N) / 2.0;
    const std::complex<double> phase =
        std::polar(1.0 / std::sqrt(static_cast<double>(N)), -kTwoPi * c * c / static_cast<double>(N));
    for (std::size_t m = 0; m < N; ++m) {
        x[m] *= phase;
        if (m & 1) x[m] = -x[m];
    }
    if (inverse)
        for (auto& v : x) v = std::conj(v);
}

namespace {

// ---- eigenbasis construction -------------------------------------------

// Sampled Hermite functions by the renormalized three-term recurrence in
// long double, accepted while they remain numerical eigenvectors of the
// centered DFT. Returns the accepted count; columns land in H (N x cap).
std::size_t sampled_hermites(std::size_t N, std::vector<double>& H, std::size_t cap) {
    const long double dq = sqrtl(2.0L * static_cast<long double>(kPi) / static_cast<long double>(N));
    std::vector<long double> q(N), prev(N), cur(N), next(N);
    for (std::size_t i = 0; i < N; ++i)
        q[i] = (static_cast<long double>(i) - static_cast<long double>(N) / 2.0L) * dq;

    auto renorm = [&](std::vector<long double>& v) {
        long double s = 0;
        for (long double x : v) s += x * x;
        s = sqrtl(s);
        for (long double& x : v) x /= s;
    };
    auto residual = [&](const std::vector<long double>& v, std::size_t n) {
        std::vector<std::complex<double>> t(N);
        for (std::size_t i = 0; i < N; ++i) t[i] = static_cast<double>(v[i]);
        centered_dft(t);
        const std::complex<double> lam = std::polar(1.0, -kPi / 2.0 * static_cast<double>(n % 4));
        double r = 0;
        for (std::size_t i = 0; i < N; ++i)
            r += std::norm(t[i] - lam * static_cast<double>(v[i]));
        return std::sqrt(r);
    };

    std::size_t accepted = 0;
    for (std::size_t n = 0; n < cap; ++n) {
        if (n == 0) {
            for (std::size_t i = 0; i < N; ++i) cur[i] = expl(-q[i] * q[i] / 2.0L);
            renorm(cur);
        } else {
            const long double a = sqrtl(2.0L / static_cast<long double>(n));
            const long double b = n > 1 ? sqrtl(static_cast<long double>(n - 1) /
                                                static_cast<long double>(n))
                                        : 0.0L;
            for (std::size_t i = 0; i < N; ++i) next[i] = a * q[i] * cur[i] - b * prev[i];
            renorm(next);
            prev.swap(cur);
            cur.swap(next);
        }
        if (residual(cur, n) > 1e-11) break;
        for (std::size_t i = 0; i < N; ++i) H[n * N + i] = static_cast<double>(cur[i]);
        ++accepted;
    }
    return accepted;
}

void qr_orthonormalize(std::size_t N, std::vector<double>& A, std::size_t cols) {
    std::vector<double> tau(cols);
    if (LAPACKE_dgeqrf(LAPACK_COL_MAJOR, static_cast<int>(N), static_cast<int>(cols), A.data(),
                       static_cast<int>(N), tau.data()) != 0)
        throw std::runtime_error("frft basis: dgeqrf failed");
    std::vector<double> diag_sign(cols);
    for (std::size_t i = 0; i < cols; ++i)
        diag_sign[i] = A[i * N + i] >= 0 ? 1.0 : -1.0;
    if (LAPACKE_dorgqr(LAPACK_COL_MAJOR, static_cast<int>(N), static_cast<int>(cols),
                       static_cast<int>(cols), A.data(), static_cast<int>(N), tau.data()) != 0)
        throw std::runtime_error("frft basis: dorgqr failed");
    for (std::size_t c = 0; c < cols; ++c)
        if (diag_sign[c] < 0)
            for (std::size_t i = 0; i < N; ++i) A[c * N + i] = -A[c * N + i];
}

std::unique_ptr<FrftBasis> build_basis(std::size_t N) {
    auto basis = std::make_unique<FrftBasis>();
    basis->N = N;
    basis->index.assign(N, -1);
    basis->vectors.assign(N * N, 0.0);

    // 1. Hermite block, re-orthonormalized.
    const std::size_t cap = static_cast<std::size_t>(0.78 * static_cast<double>(N));
    std::vector<double> H(N * cap, 0.0);
    const std::size_t nh = sampled_hermites(N, H, cap);
    if (nh < N / 2) throw std::runtime_error("frft basis: too few stable Hermite vectors");
    H.resize(N * nh);
    qr_orthonormalize(N, H, nh);

    std::vector<bool> used(2 * N, false);
    for (std::size_t n = 0; n < nh; ++n) {
        std::copy(H.begin() + static_cast<std::ptrdiff_t>(n * N),
                  H.begin() + static_cast<std::ptrdiff_t>((n + 1) * N),
                  basis->vectors.begin() + static_cast<std::ptrdiff_t>(n * N));
        basis->index[n] = static_cast<int>(n);
        used[n] = true;
    }
    std::size_t filled = nh;

    // 2. Complete each DFT-eigenvalue class c with projections of strided
    //    delta vectors: P_c = (1/4) sum_j lambda_c^{-j} F^j, with F delta in
    //    closed form and F^2 the parity permutation.
    const double c0 = static_cast<double>(N) / 2.0;
    const double inv_sqrtN = 1.0 / std::sqrt(static_cast<double>(N));
    for (int cls = 0; cls < 4; ++cls) {
        std::vector<std::size_t> class_pos;
        for (std::size_t n = 0; n < nh; ++n)
            if (n % 4 == static_cast<std::size_t>(cls)) class_pos.push_back(n);
        const std::size_t nc = class_pos.size();
        // Eigenvalue multiplicities of the centered DFT: N/4 + 1 for +1,
        // N/4 for -i and -1, N/4 - 1 for +i (the classic DFT multiplicity
        // pattern); the surplus +1 vector takes Hermite index N.
        const std::size_t dim = N / 4 + (cls == 0 ? 1 : 0) - (cls == 3 ? 1 : 0);
        if (nc > dim) throw std::runtime_error("frft basis: class overfilled");
        const std::size_t need = dim - nc;
        if (need == 0) continue;

        std::vector<double> Hc(N * nc);
        for (std::size_t t = 0; t < nc; ++t)
            std::copy(H.begin() + static_cast<std::ptrdiff_t>(class_pos[t] * N),
                      H.begin() + static_cast<std::ptrdiff_t>((class_pos[t] + 1) * N),
                      Hc.begin() + static_cast<std::ptrdiff_t>(t * N));

        std::size_t ncand = std::min(N, need * 3 + 96);
        const std::size_t m = 2 * ncand;  // real + imaginary parts
        std::vector<double> C(N * m, 0.0);
        // lambda_c^{-j} = i^{c j}
        const std::complex<double> iu(0.0, 1.0);
        std::complex<double> lam_inv = std::pow(iu, cls);
        for (std::size_t t = 0; t < ncand; ++t) {
            const std::size_t pos =
                (13 + static_cast<std::size_t>(static_cast<double>(t) *
                                               (static_cast<double>(N) / static_cast<double>(ncand)))) % N;
            std::vector<std::complex<double>> pe(N, 0.0);
            // F delta_pos in closed form: F[r, pos] = exp(-2 pi i (r-c0)(pos-c0)/N)/sqrt(N)
            std::vector<std::complex<double>> Fd(N);
            for (std::size_t r = 0; r < N; ++r)
                Fd[r] = std::polar(inv_sqrtN,
                                   -kTwoPi * (static_cast<double>(r) - c0) *
                                       (static_cast<double>(pos) - c0) / static_cast<double>(N));
            const std::size_t ppos = pos == 0 ? 0 : N - pos;  // parity image of the delta
            const std::complex<double> l1 = lam_inv;
            const std::complex<double> l2 = lam_inv * lam_inv;
            const std::complex<double> l3 = l2 * lam_inv;
            for (std::size_t r = 0; r < N; ++r) pe[r] = l1 * Fd[r] + l3 * Fd[r == 0 ? 0 : N - r];
            pe[pos] += 1.0;
            pe[ppos] += l2;
            for (std::size_t r = 0; r < N; ++r) {
                C[t * N + r] = 0.25 * pe[r].real();
                C[(ncand + t) * N + r] = 0.25 * pe[r].imag();
            }
        }

        // Project out the Hermite part of the class (twice, for stability).
        std::vector<double> T(nc * m);
        for (int pass = 0; pass < 2 && nc > 0; ++pass) {
            cblas_dgemm(CblasColMajor, CblasTrans, CblasNoTrans, static_cast<int>(nc),
                        static_cast<int>(m), static_cast<int>(N), 1.0, Hc.data(),
                        static_cast<int>(N), C.data(), static_cast<int>(N), 0.0, T.data(),
                        static_cast<int>(nc));
            cblas_dgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(N),
                        static_cast<int>(m), static_cast<int>(nc), -1.0, Hc.data(),
                        static_cast<int>(N), T.data(), static_cast<int>(nc), 1.0, C.data(),
                        static_cast<int>(N));
        }

        // Rank-select through the small Gram matrix (numerically sturdier
        // here than an SVD of C, and the final QR polish restores full
        // orthonormality).
        std::vector<double> G(m * m);
        cblas_dsyrk(CblasColMajor, CblasUpper, CblasTrans, static_cast<int>(m),
                    static_cast<int>(N), 1.0, C.data(), static_cast<int>(N), 0.0, G.data(),
                    static_cast<int>(m));
        std::vector<double> w(m);
        if (LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', static_cast<int>(m), G.data(),
                           static_cast<int>(m), w.data()) != 0)
            throw std::runtime_error("frft basis: dsyevd failed");
        std::size_t rank = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (w[i] > 1e-12) ++rank;  // singular values of C above 1e-6
        if (rank != need)
            throw std::runtime_error("frft basis: completion rank mismatch");

        std::vector<double> U(N * need);
        cblas_dgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(N),
                    static_cast<int>(need), static_cast<int>(m), 1.0, C.data(),
                    static_cast<int>(N), G.data() + (m - need) * m, static_cast<int>(m), 0.0,
                    U.data(), static_cast<int>(N));
        for (std::size_t t = 0; t < need; ++t) {
            const double inv_s = 1.0 / std::sqrt(w[m - need + t]);
            for (std::size_t r = 0; r < N; ++r) U[t * N + r] *= inv_s;
        }
        if (nc > 0) {
            std::vector<double> T2(nc * need);
            cblas_dgemm(CblasColMajor, CblasTrans, CblasNoTrans, static_cast<int>(nc),
                        static_cast<int>(need), static_cast<int>(N), 1.0, Hc.data(),
                        static_cast<int>(N), U.data(), static_cast<int>(N), 0.0, T2.data(),
                        static_cast<int>(nc));
            cblas_dgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(N),
                        static_cast<int>(need), static_cast<int>(nc), -1.0, Hc.data(),
                        static_cast<int>(N), T2.data(), static_cast<int>(nc), 1.0, U.data(),
                        static_cast<int>(N));
        }
        qr_orthonormalize(N, U, need);

        // Smallest unused Hermite indices congruent to the class.
        std::size_t next_idx = static_cast<std::size_t>(cls);
        for (std::size_t t = 0; t < need; ++t) {
            while (used[next_idx]) next_idx += 4;
            used[next_idx] = true;
            std::copy(U.begin() + static_cast<std::ptrdiff_t>(t * N),
                      U.begin() + static_cast<std::ptrdiff_t>((t + 1) * N),
                      basis->vectors.begin() + static_cast<std::ptrdiff_t>(filled * N));
            basis->index[filled] = static_cast<int>(next_idx);
            ++filled;
        }
    }
    if (filled != N) throw std::runtime_error("frft basis: incomplete basis");

    // Sort columns by Hermite index.
    std::vector<std::size_t> order(N);
    for (std::size_t i = 0; i < N; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return basis->index[a] < basis->index[b]; });
    std::vector<double> sorted(N * N);
    std::vector<int> sorted_idx(N);
    for (std::size_t t = 0; t < N; ++t) {
        sorted_idx[t] = basis->index[order[t]];
        std::copy(basis->vectors.begin() + static_cast<std::ptrdiff_t>(order[t] * N),
                  basis->vectors.begin() + static_cast<std::ptrdiff_t>((order[t] + 1) * N),
                  sorted.begin() + static_cast<std::ptrdiff_t>(t * N));
    }
    basis->vectors.swap(sorted);
    basis->index.swap(sorted_idx);
    return basis;
}

}  // namespace

std::vector<std::complex<double>> FrftBasis::apply(const std::vector<std::complex<double>>& x,
                                                   double order_angle) const {
    if (x.size() != N) throw std::domain_error("FrftBasis::apply: size mismatch");
    std::vector<double> X(N * 2), Y(N * 2), Z(N * 2), out(N * 2);
    for (std::size_t i = 0; i < N; ++i) {
        X[i] = x[i].real();
        X[N + i] = x[i].imag();
    }
    cblas_dgemm(CblasColMajor, CblasTrans, CblasNoTrans, static_cast<int>(N), 2,
                static_cast<int>(N), 1.0, vectors.data(), static_cast<int>(N), X.data(),
                static_cast<int>(N), 0.0, Y.data(), static_cast<int>(N));
    for (std::size_t t = 0; t < N; ++t) {
        const std::complex<double> c(Y[t], Y[N + t]);
        const std::complex<double> r =
            c * std::polar(1.0, -static_cast<double>(index[t]) * order_angle);
        Z[t] = r.real();
        Z[N + t] = r.imag();
    }
    cblas_dgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(N), 2,
                static_cast<int>(N), 1.0, vectors.data(), static_cast<int>(N), Z.data(),
                static_cast<int>(N), 0.0, out.data(), static_cast<int>(N));
    std::vector<std::complex<double>> y(N);
    for (std::size_t i = 0; i < N; ++i) y[i] = {out[i], out[N + i]};
    return y;
}

const FrftBasis& frft_basis(std::size_t N) {
    if (!is_pow2(N)) throw std::domain_error("frft_basis: N must be a power of two");
    if (N < 8) throw std::domain_error("frft_basis: N too small");
    if (N > 8192)
        throw resource_error("frft_basis: eigenbasis capped at N = 8192 (" +
                             std::to_string(N) + " requested); quarter-turn orders "
                             "remain available at any size");
    static std::mutex cache_mutex;
    static std::map<std::size_t, std::unique_ptr<FrftBasis>> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(N);
    if (it == cache.end()) it = cache.emplace(N, build_basis(N)).first;
    return *it->second;
}

GridState frft(const GridState& state, double order_angle) {
    require_balanced(state);
    const double a = reduce_angle(order_angle);
    GridState out = state;
    if (a < kAngleTol || kTwoPi - a < kAngleTol) return out;
    if (std::abs(a - kPi / 2.0) < kAngleTol) {
        centered_dft(out.amplitudes);
        return out;
    }
    if (std::abs(a - kPi) < kAngleTol) {
        out.amplitudes = parity(out.amplitudes);
        return out;
    }
    if (std::abs(a - 1.5 * kPi) < kAngleTol) {
        centered_dft(out.amplitudes, /*inverse=*/true);
        return out;
    }
    out.amplitudes = frft_basis(state.size()).apply(state.amplitudes, a);
    return out;
}

namespace {

// One chirp-FFT-chirp pass, valid away from sin(theta) ~ 0.
GridState chirp_core(const GridState& state, double a) {
    const std::size_t N = state.size();
    const double s = std::sin(a);
    const double t2 = std::tan(a / 2.0);
    const double dq = state.spacing;

    std::size_t M = 1;
    while (M < 2 * N) M <<= 1;
    std::vector<std::complex<double>> f(M, 0.0), g(M, 0.0);
    for (std::size_t i = 0; i < N; ++i) {
        const double q = state.q(i);
        f[i] = state.amplitudes[i] * std::polar(1.0, -t2 * q * q / 2.0);
    }
    for (std::ptrdiff_t k = -(static_cast<std::ptrdiff_t>(N) - 1);
         k < static_cast<std::ptrdiff_t>(N); ++k) {
        const double kd = static_cast<double>(k) * dq;
        g[(k + static_cast<std::ptrdiff_t>(M)) % static_cast<std::ptrdiff_t>(M)] =
            std::polar(1.0, kd * kd / (2.0 * s));
    }
    fft_inplace(f, FFTW_FORWARD);
    fft_inplace(g, FFTW_FORWARD);
    for (std::size_t i = 0; i < M; ++i) f[i] *= g[i];
    fft_inplace(f, FFTW_BACKWARD);
    const double inv_M = 1.0 / static_cast<double>(M);

    // C = sqrt((1 - i cot a) / 2 pi)
    const std::complex<double> amp = std::sqrt(std::complex<double>(1.0, -1.0 / std::tan(a)) /
                                               kTwoPi);
    GridState out = state;
    for (std::size_t i = 0; i < N; ++i) {
        const double q = state.q(i);
        out.amplitudes[i] = amp * dq * std::polar(1.0, -t2 * q * q / 2.0) * f[i] * inv_M;
    }
    return out;
}

}  // namespace

GridState frft_chirp(const GridState& state, double order_angle) {
    require_balanced(state);
    const double a = reduce_angle(order_angle);
    GridState out = state;
    if (a < kAngleTol || kTwoPi - a < kAngleTol) return out;
    if (std::abs(a - kPi / 2.0) < kAngleTol) {
        centered_dft(out.amplitudes);
        return out;
    }
    if (std::abs(a - kPi) < kAngleTol) {
        out.amplitudes = parity(out.amplitudes);
        return out;
    }
    if (std::abs(a - 1.5 * kPi) < kAngleTol) {
        centered_dft(out.amplitudes, /*inverse=*/true);
        return out;
    }
    if (std::abs(std::sin(a)) < 0.7) {
        // Compose with a quarter turn; the remainder has |sin| >= cos(0.7755..)
        GridState quarter = out;
        centered_dft(quarter.amplitudes);
        return chirp_core(quarter, reduce_angle(a - kPi / 2.0));
    }
    return chirp_core(out, a);
}

}  // namespace pcgmum
