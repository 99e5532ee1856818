#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include "pcgmum/errors.hpp"
#include "pcgmum/numtheory.hpp"

using namespace pcgmum;

TEST_CASE("smallest_prime_factor basics") {
    CHECK(smallest_prime_factor(3) == 3);
    CHECK(smallest_prime_factor(12) == 2);
    // trial-division oracle value
    CHECK(smallest_prime_factor(91) == 7);
    CHECK(smallest_prime_factor(2) == 2);
    CHECK(smallest_prime_factor(997) == 997);
    CHECK_THROWS_AS(smallest_prime_factor(1), std::domain_error);
    CHECK_THROWS_AS(smallest_prime_factor(0), std::domain_error);
}

TEST_CASE("r_max equals smallest prime factor plus one across 2..200") {
    CHECK(r_max(3) == 4);
    CHECK(r_max(4) == 3);
    CHECK(r_max(9) == 4);
    for (std::int64_t d = 2; d <= 200; ++d) {
        CHECK(r_max(d) == smallest_prime_factor(d) + 1);
        const bool prime = smallest_prime_factor(d) == d;
        CHECK((r_max(d) == d + 1) == prime);
        CHECK((r_max(d) == 3) == (d % 2 == 0));
    }
}

TEST_CASE("mod_inverse examples and round trip") {
    CHECK(mod_inverse(2, 3) == 2);
    CHECK(mod_inverse(1, 7) == 1);
    // exhaustive-search oracle: 5 * 3 = 15 = 2*7 + 1
    CHECK(mod_inverse(5, 7) == 3);
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 97}) {
        for (std::int64_t m = 1; m < p; ++m) {
            const std::int64_t inv = mod_inverse(m, p);
            CHECK(inv >= 1);
            CHECK(inv <= p - 1);
            CHECK((m * inv) % p == 1);
        }
    }
    CHECK_THROWS_AS(mod_inverse(3, 9), std::domain_error);   // composite modulus
    CHECK_THROWS_AS(mod_inverse(14, 7), std::domain_error);  // m divisible by p
}

TEST_CASE("coprime_with_dimension matches the literal quantifier scan") {
    CHECK_FALSE(coprime_with_dimension(3, 3));
    CHECK(coprime_with_dimension(2, 3));
    CHECK_FALSE(coprime_with_dimension(4, 6));
    for (std::int64_t m = 1; m <= 100; ++m)
        for (std::int64_t d = 2; d <= 50; ++d)
            CHECK(coprime_with_dimension(m, d) == coprime_with_dimension_scan(m, d));
}

namespace {
MultiplierMatrix paper_family() {
    MultiplierMatrix mm = MultiplierMatrix::make(3, 4);
    mm.m[1][0] = 1;
    mm.m[2][0] = 2;
    mm.m[2][1] = 1;
    mm.m[3][0] = 1;
    mm.m[3][1] = 1;
    mm.m[3][2] = 1;
    return mm;
}
}  // namespace

TEST_CASE("consistent_family accepts the experiment values") {
    // m31*m20 - m30*m21 = 1*2 - 1*1 = 1 = m32*m10
    CHECK(consistent_family(paper_family()));
}

TEST_CASE("consistent_family rejects shared factors with d") {
    MultiplierMatrix mm = paper_family();
    mm.m[3][2] = 3;  // gcd(3, 3) != 1
    CHECK_FALSE(consistent_family(mm));

    MultiplierMatrix even = MultiplierMatrix::make(4, 3);
    even.m[2][0] = 2;  // any even entry fails for even d
    CHECK_FALSE(consistent_family(even));
}

TEST_CASE("consistent_family rejects a broken determinant relation") {
    MultiplierMatrix mm = paper_family();
    mm.m[3][2] = 2;  // coprime with 3 but 1*2 - 1*1 != 2*1
    CHECK_FALSE(consistent_family(mm));
}

TEST_CASE("consistent_family is not silently symmetrized") {
    MultiplierMatrix mm = paper_family();
    mm.m.resize(3);  // drop direction 3: still consistent on its own rows
    CHECK(consistent_family(mm));
    mm.m.resize(2);
    CHECK_THROWS_AS(consistent_family(mm), std::domain_error);
}

TEST_CASE("search_max_family attains the bound and never exceeds it") {
    for (std::int64_t d : {2, 3, 4, 5, 6, 9, 10, 12}) {
        const std::int64_t R = search_max_family(d, 8);
        CHECK(R == r_max(d));
        CHECK(R <= r_max(d));
    }
}

TEST_CASE("search_max_family pruned and unpruned paths agree at small d") {
    for (std::int64_t d : {2, 3, 4, 5, 6}) {
        SearchOptions unpruned;
        unpruned.use_congruence_pruning = false;
        CHECK(search_max_family(d, 4) == search_max_family(d, 4, unpruned));
    }
}

TEST_CASE("search_max_family node budget raises a resource error") {
    SearchOptions tiny;
    tiny.node_budget = 10;
    CHECK_THROWS_AS(search_max_family(7, 8, tiny), resource_error);
}
