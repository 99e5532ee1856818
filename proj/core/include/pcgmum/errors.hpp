#pragma once

#include <stdexcept>
#include <string>

namespace pcgmum {

// Search-space / memory guards. Raised instead of silently truncating results.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A symmetric construction produced a non-integer or non-coprime multiplier.
// Carries the offending direction pair.
struct construction_error : std::runtime_error {
    int j, k;
    construction_error(int j_, int k_, const std::string& what_)
        : std::runtime_error(what_), j(j_), k(k_) {}
};

// Angle difference is a multiple of pi where a transverse overlap is undefined.
struct degenerate_angle_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Requested measurement direction set exceeds the number-theoretic bound.
struct bound_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Grid cannot resolve the requested state or has lost too much probability.
struct grid_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Preparation mask annihilated the state.
struct empty_preparation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pcgmum
