#pragma once

#include <cstdint>
#include <vector>

namespace pcgmum {

// Strictly lower triangular matrix of period multipliers m_jk for j > k.
// Row j stores entries for k = 0 .. j-1; row 0 is empty.
struct MultiplierMatrix {
    std::int64_t d = 0;
    std::vector<std::vector<std::int64_t>> m;

    int directions() const { return static_cast<int>(m.size()); }
    std::int64_t at(int j, int k) const { return m.at(j).at(k); }

    static MultiplierMatrix make(std::int64_t d, int directions);
};

// Smallest prime p dividing d (p == d iff d is prime). Trial division;
// intended for d up to ~1e9.
std::int64_t smallest_prime_factor(std::int64_t d);

// Upper bound on the number of mutually unbiased periodic coarse-grained
// measurements: smallest_prime_factor(d) + 1.
std::int64_t r_max(std::int64_t d);

// Inverse of m modulo prime p, result in [1, p-1].
std::int64_t mod_inverse(std::int64_t m, std::int64_t p);

// gcd(m, d) == 1, the multiplier admissibility condition.
bool coprime_with_dimension(std::int64_t m, std::int64_t d);

// Literal quantifier form of the same condition: m*n/d is a non-integer for
// every n in 1..d-1. O(d); kept as a cross-check of the gcd implementation.
bool coprime_with_dimension_scan(std::int64_t m, std::int64_t d);

// True iff every entry is >= 1 and coprime with d, and the determinant-style
// consistency m[j][1]*m[k][0] - m[j][0]*m[k][1] == m[j][k]*m[1][0] holds for
// all j > k > 1. Requires at least 3 directions.
bool consistent_family(const MultiplierMatrix& mm);

struct SearchOptions {
    // Distinct-congruence-class pruning modulo the smallest prime factor.
    // Exact (implied by the consistency relation), but an unpruned path is
    // kept for small-d cross-validation.
    bool use_congruence_pruning = true;
    // Hard cap on visited search nodes; exceeding it raises resource_error
    // rather than returning a silently truncated answer.
    std::uint64_t node_budget = 500'000'000;
};

// Largest R such that some MultiplierMatrix with entries in [1, m_bound]
// satisfies consistent_family. Exponential search intended for small d.
std::int64_t search_max_family(std::int64_t d, std::int64_t m_bound,
                               SearchOptions opt = {});

}  // namespace pcgmum
