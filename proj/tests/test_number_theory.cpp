#include <doctest.h>

#include <cmath>

#include "vdw/errors.hpp"
#include "vdw/number_theory.hpp"

using namespace vdw;

namespace {

int brute_mobius(long k) {
    int count = 0;
    for (long p = 2; p <= k; ++p) {
        bool prime = true;
        for (long q = 2; q * q <= p; ++q)
            if (p % q == 0) prime = false;
        if (!prime || k % p != 0) continue;
        if ((k / p) % p == 0) return 0;
        ++count;
    }
    return count % 2 == 0 ? 1 : -1;
}

}  // namespace

TEST_CASE("primes") {
    CHECK(primes_up_to(20) == std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19});
    CHECK(nth_prime(1) == 2);
    CHECK(nth_prime(10) == 29);
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(91));
    CHECK(factorize(360) == std::vector<PrimePower>{{2, 3}, {3, 2}, {5, 1}});
    CHECK(smallest_prime_factor(91) == 7);
    CHECK(largest_prime_factor(91) == 13);
    CHECK(distinct_prime_count(30) == 3);
    CHECK(is_prime_power(27));
    CHECK_FALSE(is_prime_power(12));
}

TEST_CASE("primorial") {
    CHECK(primorial_of_first(1) == 2);
    CHECK(primorial_of_first(2) == 6);
    CHECK(primorial_of_first(3) == 30);
    CHECK(primorial_of_first(0) == 1);
    CHECK(primorial(1) == 1);
    CHECK(primorial(0) == 1);
    CHECK(primorial(10) == 210);
    CHECK(primorial(nth_prime(5)) == primorial_of_first(5));
}

TEST_CASE("r(k)") {
    CHECK(r_of_k(1) == 1);
    CHECK(r_of_k(5) == 2);
    CHECK(r_of_k(6) == 3);
    CHECK(r_of_k(30) == 4);
    CHECK(r_of_k(209) == 4);
    CHECK(r_of_k(210) == 5);
    int prev = 1;
    for (int k = 1; k <= 10000; ++k) {
        const int r = r_of_k(k);
        CHECK(primorial_of_first(r - 1) <= k);
        CHECK(k < primorial_of_first(r));
        CHECK(r >= prev);
        prev = r;
    }
}

TEST_CASE("mobius and radical") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(12) == 0);
    CHECK(mobius(30) == -1);
    CHECK(radical(12) == 6);
    CHECK(radical(7) == 7);
    CHECK(radical(1) == 1);
    for (int k = 1; k <= 10000; ++k) {
        CHECK(mobius(k) == brute_mobius(k));
        CHECK((radical(k) == k) == (mobius(k) != 0));
        CHECK(is_squarefree(k) == (mobius(k) != 0));
    }
}

TEST_CASE("bound certificates") {
    const auto c2 = bound_certificate(2);
    CHECK(c2.lcm == 2);
    CHECK(c2.max_reduced_power == 1);
    CHECK(c2.threshold == 2);

    const auto c4 = bound_certificate(4);
    CHECK(c4.lcm == 12);
    CHECK(c4.max_reduced_power == 2);
    CHECK(c4.threshold == 6);
    CHECK(c4.factorization == std::vector<PrimePower>{{2, 2}, {3, 1}});

    const auto c9 = bound_certificate(9);
    CHECK(c9.lcm == 2520);
    CHECK(c9.max_reduced_power == 4);
    CHECK(c9.threshold == 630);

    CHECK(c4.k_meets_threshold(6));
    CHECK_FALSE(c4.k_meets_threshold(5));
    CHECK(c4.applies_to(30, 6));
    CHECK_FALSE(c4.applies_to(31, 6));
    CHECK_THROWS_AS(bound_certificate(1), domain_error);

    const std::vector<int> thresholds{2, 6, 6, 30, 30, 210, 210, 630};
    for (int a = 2; a <= 9; ++a) CHECK(bound_certificate(a).threshold == thresholds[static_cast<std::size_t>(a - 2)]);
}

TEST_CASE("certificate invariants") {
    for (int a = 2; a <= 100; ++a) {
        const auto c = bound_certificate(a);
        CHECK(c.self_consistent());
        CHECK(c.lcm == lcm_up_to(a));
        CHECK(4 * c.max_reduced_power > a);
        CHECK(2 * c.max_reduced_power <= a);
        CHECK(mpz_divisible_p(c.lcm.get_mpz_t(), c.max_reduced_power.get_mpz_t()) != 0);
        const long m = c.max_reduced_power.get_si();
        CHECK((m == 1 || (is_prime_power(m) && (m % 2 == 0 || m % 3 == 0))));
    }
    CHECK(lcm_up_to(100) > BigInt("18446744073709551615"));
    CHECK(lm_monotone_check(3));
    CHECK(lm_monotone_check(50));
    CHECK(lm_monotone_check(100));
}

TEST_CASE("non prime power step keeps L") {
    for (int a = 3; a <= 100; ++a)
        if (!is_prime_power(a)) CHECK(lcm_up_to(a) == lcm_up_to(a - 1));
}

TEST_CASE("contractible_by_theorem") {
    CHECK(contractible_by_theorem(30, 6) == 4);
    CHECK_FALSE(contractible_by_theorem(25, 5).has_value());
    CHECK_FALSE(contractible_by_theorem(31, 6).has_value());
    for (int k = 2; k <= 20; ++k)
        for (int n = k + 1; n <= 3 * k; ++n) {
            const auto a = contractible_by_theorem(n, k);
            REQUIRE(a.has_value());
            CHECK(*a >= 2);
        }
    // 2 <= n <= k: isolated vertices, never contractible.
    CHECK_FALSE(contractible_by_theorem(3, 5).has_value());
    CHECK_FALSE(contractible_by_theorem(5, 5).has_value());
    CHECK(contractible_by_theorem(1, 2).has_value());
    CHECK_THROWS_AS(contractible_by_theorem(0, 2), domain_error);
}

TEST_CASE("largest witness already absorbs the a+1 sharpening") {
    // If a+1 is not a prime power the thresholds of a and a+1 coincide, so
    // the largest admissible a always has a+1 a prime power.
    for (int k = 2; k <= 5000; ++k) {
        int best = 0;
        for (int a = 2; bound_certificate(a).k_meets_threshold(k); ++a) best = a;
        CHECK(is_prime_power(best + 1));
        CHECK(contractible_by_theorem(static_cast<long>(best + 1) * k, k) == best);
    }
}

TEST_CASE("asymptotic ratio") {
    CHECK(asymptotic_ratio(100) == doctest::Approx(4 * std::log(std::log(100.0)) / std::log(100.0)));
    for (long k = 16; k <= 4096; k *= 2) CHECK(asymptotic_ratio(k) > 0);
    CHECK_THROWS_AS(asymptotic_ratio(2), domain_error);
}
