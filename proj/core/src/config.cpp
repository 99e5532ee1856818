#include "pcgmum/config.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "pcgmum/errors.hpp"

namespace pcgmum {

namespace {
constexpr double kPi = std::numbers::pi;

void check_config_shape(const MumConfig& c) {
    const int R = c.directions();
    if (c.d < 2) throw std::domain_error("MumConfig: d must be >= 2");
    if (R < 2) throw std::domain_error("MumConfig: need at least 2 directions");
    if (static_cast<int>(c.periods.size()) != R ||
        static_cast<int>(c.offsets.size()) != R ||
        c.m_matrix.directions() != R)
        throw std::domain_error("MumConfig: inconsistent field lengths");
    if (std::abs(c.angles[0]) > 1e-15)
        throw std::domain_error("MumConfig: angles[0] must be 0");
    for (int j = 0; j < R; ++j) {
        if (c.angles[j] < 0.0 || c.angles[j] >= kPi)
            throw std::domain_error("MumConfig: angles must lie in [0, pi)");
        if (j > 0 && c.angles[j] <= c.angles[j - 1])
            throw std::domain_error("MumConfig: angles must be strictly increasing");
        if (c.periods[j] <= 0.0)
            throw std::domain_error("MumConfig: periods must be positive");
    }
}
}  // namespace

double length_scale(const PhysicalScale& scale) {
    if (scale.wavelength <= 0 || scale.lens_spacing <= 0 || scale.pixel_pitch <= 0)
        throw std::domain_error("PhysicalScale: all fields must be positive");
    return std::sqrt(scale.wavelength * scale.lens_spacing / kPi);
}

std::vector<double> periods_from_anchor(std::int64_t d, double T0,
                                        const std::vector<double>& angles,
                                        const std::vector<std::int64_t>& m_col) {
    if (d < 2 || T0 <= 0) throw std::domain_error("periods_from_anchor: need d >= 2, T0 > 0");
    if (m_col.size() + 1 != angles.size())
        throw std::domain_error("periods_from_anchor: m_col must have one entry per non-anchor angle");
    std::vector<double> periods{T0};
    for (std::size_t j = 1; j < angles.size(); ++j) {
        const double s = std::sin(angles[j]);
        if (!(s > 0.0))
            throw degenerate_angle_error("periods_from_anchor: sin(theta_j) must be positive for j >= 1");
        if (m_col[j - 1] < 1)
            throw std::domain_error("periods_from_anchor: multipliers must be positive");
        periods.push_back(2.0 * kPi * static_cast<double>(d) * s /
                          (static_cast<double>(m_col[j - 1]) * T0));
    }
    return periods;
}

Rational cot_ratio(int j, Rational Q) {
    if (j < 1) throw std::domain_error("cot_ratio: j must be >= 1");
    if (Q <= Rational(0)) throw std::domain_error("cot_ratio: Q must be positive");
    // c_1 = 1; cot addition formula gives c_{j+1} = (c_j - Q) / (c_j + 1)
    // after dividing through by cot(theta).
    Rational c(1);
    for (int i = 1; i < j; ++i) {
        if (c == Rational(-1))
            throw degenerate_angle_error("cot_ratio: cot((j+1)theta) diverges");
        c = (c - Q) / (c + Rational(1));
    }
    return c;
}

MumConfig build_symmetric(std::int64_t d, Rational Q, int R,
                          const std::vector<std::int64_t>& m_col0) {
    if (d < 2) throw std::domain_error("build_symmetric: d must be >= 2");
    if (Q <= Rational(0)) throw std::domain_error("build_symmetric: Q must be positive");
    if (R < 2) throw std::domain_error("build_symmetric: R must be >= 2");
    if (R > r_max(d))
        throw bound_error("build_symmetric: R = " + std::to_string(R) +
                          " exceeds r_max(" + std::to_string(d) + ") = " +
                          std::to_string(r_max(d)));
    if (static_cast<int>(m_col0.size()) != R - 1)
        throw std::domain_error("build_symmetric: m_col0 must have R-1 entries");
    for (std::int64_t m : m_col0)
        if (m < 1 || !coprime_with_dimension(m, d))
            throw std::domain_error("build_symmetric: m_col0 entries must be coprime with d");

    const double Qd = boost::rational_cast<double>(Q);
    const double theta = std::atan(std::sqrt(Qd));
    if (theta > kPi / static_cast<double>(R) + 1e-12)
        throw std::domain_error("build_symmetric: arctan(sqrt(Q)) exceeds pi/R");

    MumConfig cfg;
    cfg.d = d;
    for (int j = 0; j < R; ++j) cfg.angles.push_back(static_cast<double>(j) * theta);
    const double T0 = std::sqrt(kPi * static_cast<double>(d) * std::tan(theta));
    cfg.periods = periods_from_anchor(d, T0, cfg.angles, m_col0);

    // Multipliers from the exact rational path: with c_j = cot(j theta)/cot(theta)
    // the closed form m_jk = m_j0 m_k0 (T0^2 / 2 pi d)(cot theta_k - cot theta_j)
    // reduces to m_j0 m_k0 (c_k - c_j) / 2, rational in Q.
    cfg.m_matrix.d = d;
    cfg.m_matrix.m.resize(R);
    std::vector<Rational> c(R);
    for (int j = 1; j < R; ++j) c[j] = cot_ratio(j, Q);
    for (int j = 1; j < R; ++j) {
        cfg.m_matrix.m[j].resize(j);
        cfg.m_matrix.m[j][0] = m_col0[j - 1];
        for (int k = 1; k < j; ++k) {
            const Rational r = Rational(m_col0[j - 1] * m_col0[k - 1]) *
                               (c[k] - c[j]) / Rational(2);
            if (r <= Rational(0) || r.denominator() != 1)
                throw construction_error(
                    j, k, "build_symmetric: derived multiplier m[" + std::to_string(j) +
                              "][" + std::to_string(k) + "] = " +
                              std::to_string(r.numerator()) + "/" +
                              std::to_string(r.denominator()) +
                              " is not a positive integer");
            const std::int64_t mi = r.numerator();
            if (!coprime_with_dimension(mi, d))
                throw construction_error(
                    j, k, "build_symmetric: derived multiplier m[" + std::to_string(j) +
                              "][" + std::to_string(k) + "] = " + std::to_string(mi) +
                              " shares a factor with d");
            cfg.m_matrix.m[j][k] = mi;
        }
    }

    // Bin origins centered on half a bin width; a pure relabeling freedom
    // that keeps prepared-state spectral lines off the bin edges downstream.
    for (int j = 0; j < R; ++j)
        cfg.offsets.push_back(cfg.periods[j] / (2.0 * static_cast<double>(d)));

    const VerifyReport report = verify_config(cfg, 1e-9);
    if (!report.pass)
        throw construction_error(0, 0, "build_symmetric: constructed config fails verification");
    return cfg;
}

VerifyReport verify_config(const MumConfig& config, double rel_tol) {
    check_config_shape(config);
    if (rel_tol <= 0) throw std::domain_error("verify_config: rel_tol must be positive");
    VerifyReport report;
    report.pass = true;
    const int R = config.directions();
    for (int j = 1; j < R; ++j)
        for (int k = 0; k < j; ++k) {
            PairCheck pc;
            pc.j = j;
            pc.k = k;
            const double sjk = std::abs(std::sin(config.angles[j] - config.angles[k]));
            pc.m_real = 2.0 * kPi * static_cast<double>(config.d) * sjk /
                        (config.periods[j] * config.periods[k]);
            pc.m_int = std::llround(pc.m_real);
            pc.residual = std::abs(pc.m_real - static_cast<double>(pc.m_int)) /
                          std::max(1.0, std::abs(pc.m_real));
            pc.coprime = pc.m_int >= 1 && std::gcd(pc.m_int, config.d) == 1;
            pc.matches_matrix = pc.m_int == config.m_matrix.at(j, k);
            pc.pass = pc.residual < rel_tol && pc.coprime && pc.matches_matrix;
            report.pass = report.pass && pc.pass;
            report.pairs.push_back(pc);
        }
    return report;
}

std::vector<double> to_physical(const MumConfig& config, const PhysicalScale& scale) {
    const double f = length_scale(scale) / scale.pixel_pitch;
    std::vector<double> px;
    px.reserve(config.periods.size());
    for (double T : config.periods) px.push_back(f * T);
    return px;
}

double cv_overlap(double theta_jk) {
    if (std::abs(std::remainder(theta_jk, kPi)) < 1e-12)
        throw degenerate_angle_error("cv_overlap: directions are parallel");
    return 1.0 / std::sqrt(2.0 * kPi * std::abs(std::sin(theta_jk)));
}

}  // namespace pcgmum
