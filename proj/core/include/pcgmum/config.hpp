#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <vector>

#include "pcgmum/numtheory.hpp"

namespace pcgmum {

using Rational = boost::rational<std::int64_t>;

// A complete set of R mutually unbiased periodic coarse-grained measurement
// directions for a d-outcome binning.
struct MumConfig {
    std::int64_t d = 0;
    std::vector<double> angles;   // theta_j in [0, pi), strictly increasing, angles[0] == 0
    std::vector<double> periods;  // T_j, dimensionless units
    MultiplierMatrix m_matrix;
    std::vector<double> offsets;  // bin origin q_j^cen per direction

    int directions() const { return static_cast<int>(angles.size()); }
    double bin_width(int j) const { return periods.at(j) / static_cast<double>(d); }
};

struct PhysicalScale {
    double wavelength;    // meters
    double lens_spacing;  // meters (separation z of the FrFT lens system)
    double pixel_pitch;   // meters
};

// sqrt(lambda * z / pi): meters per dimensionless unit.
double length_scale(const PhysicalScale& scale);

// T_j = 2 pi d sin(theta_j) / (m_col[j-1] * T0) for j >= 1, prepended with T0.
std::vector<double> periods_from_anchor(std::int64_t d, double T0,
                                        const std::vector<double>& angles,
                                        const std::vector<std::int64_t>& m_col);

// Symmetric construction: theta_j = j*theta with tan(theta) = sqrt(Q),
// T0 = sqrt(pi d tan theta), remaining multipliers derived exactly in
// rational arithmetic. m_col0 holds m_10 .. m_{R-1,0}. Throws bound_error if
// R exceeds r_max(d) and construction_error when a derived multiplier is not
// a positive integer coprime with d.
MumConfig build_symmetric(std::int64_t d, Rational Q, int R,
                          const std::vector<std::int64_t>& m_col0);

struct PairCheck {
    int j, k;
    double m_real;        // 2 pi d |sin theta_jk| / (T_j T_k)
    std::int64_t m_int;   // nearest integer
    double residual;      // |m_real - m_int| / max(1, m_real)
    bool coprime;         // m_int coprime with d
    bool matches_matrix;  // m_int equals the stored multiplier
    bool pass;
};

struct VerifyReport {
    std::vector<PairCheck> pairs;
    bool pass = false;
};

VerifyReport verify_config(const MumConfig& config, double rel_tol = 1e-9);

// Mask periods in physical pixels: T'_j = length_scale * T_j / pixel_pitch.
std::vector<double> to_physical(const MumConfig& config, const PhysicalScale& scale);

// Transverse overlap (2 pi |sin theta_jk|)^(-1/2) of two phase-space
// directions; infinite (error) for parallel directions.
double cv_overlap(double theta_jk);

// cot(j*theta) / cot(theta) for tan(theta)^2 = Q, exact. Rational in Q.
Rational cot_ratio(int j, Rational Q);

}  // namespace pcgmum
