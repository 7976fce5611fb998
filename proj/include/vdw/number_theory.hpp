#pragma once

// Primes, primorials, the Moebius function, and the lcm-based
// contractibility thresholds L(a), M(a).

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vdw {

using BigInt = mpz_class;
using Rational = mpq_class;

struct PrimePower {
    std::int64_t prime;
    int exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Sieve of Eratosthenes.  Cached; safe for concurrent readers.
std::vector<std::int64_t> primes_up_to(std::int64_t limit);
// The r-th prime, 1-based.
std::int64_t nth_prime(int r);

bool is_prime(std::int64_t m);
std::vector<PrimePower> factorize(std::int64_t k);
std::int64_t smallest_prime_factor(std::int64_t k);
std::int64_t largest_prime_factor(std::int64_t k);
int distinct_prime_count(std::int64_t k);
bool is_squarefree(std::int64_t k);
bool is_prime_power(std::int64_t m);

// Product of the primes <= x; 1 for x < 2.
BigInt primorial(std::int64_t x);
// Product of the first r primes, with the empty product for r = 0.
BigInt primorial_of_first(int r);

// The unique r >= 1 with primorial_of_first(r-1) <= k < primorial_of_first(r).
int r_of_k(std::int64_t k);

int mobius(std::int64_t k);
// Product of the distinct primes dividing k.
std::int64_t radical(std::int64_t k);

BigInt lcm_up_to(int a);

struct BoundCertificate {
    int a = 0;
    BigInt lcm;                            // L(a) = lcm(1..a)
    std::vector<PrimePower> factorization; // of L(a)
    BigInt max_reduced_power;              // M(a) = max p^(alpha-1)
    std::int64_t max_reduced_prime = 0;    // the p attaining M(a), smallest on ties
    Rational threshold;                    // L(a) / M(a)

    bool k_meets_threshold(std::int64_t k) const;
    // k >= L/M and n <= (a+1)k
    bool applies_to(std::int64_t n, std::int64_t k) const;
    // The certificate's own consistency: L matches a folded lcm, M | L,
    // M is a power of 2 or 3, and a/4 < M <= a/2.
    bool self_consistent() const;
};

BoundCertificate bound_certificate(int a);

// Largest a > 1 whose threshold L(a)/M(a) is at most k, provided
// n <= (a+1)k.  Requires n = 1 or n > k: for 2 <= n <= k the complex is
// n isolated points.
std::optional<int> contractible_by_theorem(std::int64_t n, std::int64_t k);

// L(a)/M(a) <= L(a+1)/M(a+1) for every 2 <= a < a_max, exactly.
bool lm_monotone_check(int a_max);

// r(k) * log log k / log k with natural logarithms.
double asymptotic_ratio(std::int64_t k);

}  // namespace vdw
