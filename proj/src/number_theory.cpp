#include "vdw/number_theory.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <shared_mutex>

#include "vdw/errors.hpp"

namespace vdw {

namespace {

class PrimeCache {
  public:
    std::vector<std::int64_t> up_to(std::int64_t limit) {
        {
            std::shared_lock lock(mutex_);
            if (limit <= sieved_) return prefix(limit);
        }
        std::unique_lock lock(mutex_);
        if (limit > sieved_) sieve(std::max(limit, 2 * sieved_));
        return prefix(limit);
    }

    std::int64_t nth(int r) {
        for (std::int64_t limit = 64;; limit *= 2) {
            auto primes = up_to(limit);
            if (static_cast<int>(primes.size()) >= r) return primes[static_cast<std::size_t>(r - 1)];
        }
    }

  private:
    std::vector<std::int64_t> prefix(std::int64_t limit) const {
        auto end = std::upper_bound(primes_.begin(), primes_.end(), limit);
        return {primes_.begin(), end};
    }

    void sieve(std::int64_t limit) {
        std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
        primes_.clear();
        for (std::int64_t i = 2; i <= limit; ++i) {
            if (composite[static_cast<std::size_t>(i)]) continue;
            primes_.push_back(i);
            for (std::int64_t j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = true;
        }
        sieved_ = limit;
    }

    std::shared_mutex mutex_;
    std::vector<std::int64_t> primes_;
    std::int64_t sieved_ = 1;
};

PrimeCache& prime_cache() {
    static PrimeCache cache;
    return cache;
}

void require_positive(std::int64_t k, const char* what) {
    if (k < 1) throw domain_error(std::string(what) + ": argument must be >= 1, got " + std::to_string(k));
}

}  // namespace

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
    if (limit < 2) return {};
    return prime_cache().up_to(limit);
}

std::int64_t nth_prime(int r) {
    if (r < 1) throw domain_error("nth_prime: r must be >= 1");
    return prime_cache().nth(r);
}

bool is_prime(std::int64_t m) {
    if (m < 2) return false;
    for (std::int64_t d = 2; d * d <= m; ++d)
        if (m % d == 0) return false;
    return true;
}

std::vector<PrimePower> factorize(std::int64_t k) {
    require_positive(k, "factorize");
    std::vector<PrimePower> out;
    for (std::int64_t p = 2; p * p <= k; ++p) {
        if (k % p != 0) continue;
        int e = 0;
        while (k % p == 0) {
            k /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (k > 1) out.push_back({k, 1});
    return out;
}

std::int64_t smallest_prime_factor(std::int64_t k) {
    if (k < 2) throw domain_error("smallest_prime_factor: k must be >= 2");
    return factorize(k).front().prime;
}

std::int64_t largest_prime_factor(std::int64_t k) {
    if (k < 2) throw domain_error("largest_prime_factor: k must be >= 2");
    return factorize(k).back().prime;
}

int distinct_prime_count(std::int64_t k) { return static_cast<int>(factorize(k).size()); }

bool is_squarefree(std::int64_t k) {
    const auto f = factorize(k);
    return std::all_of(f.begin(), f.end(), [](const PrimePower& pp) { return pp.exponent == 1; });
}

bool is_prime_power(std::int64_t m) { return m >= 2 && factorize(m).size() == 1; }

BigInt primorial(std::int64_t x) {
    BigInt product = 1;
    for (std::int64_t p : primes_up_to(x)) product *= static_cast<long>(p);
    return product;
}

BigInt primorial_of_first(int r) {
    if (r < 0) throw domain_error("primorial_of_first: r must be >= 0");
    BigInt product = 1;
    for (int i = 1; i <= r; ++i) product *= static_cast<long>(nth_prime(i));
    return product;
}

int r_of_k(std::int64_t k) {
    require_positive(k, "r_of_k");
    const BigInt target = static_cast<long>(k);
    BigInt product = 1;
    int r = 0;
    while (product <= target) {
        ++r;
        product *= static_cast<long>(nth_prime(r));
    }
    return r;
}

int mobius(std::int64_t k) {
    require_positive(k, "mobius");
    const auto f = factorize(k);
    for (const auto& pp : f)
        if (pp.exponent > 1) return 0;
    return f.size() % 2 == 0 ? 1 : -1;
}

std::int64_t radical(std::int64_t k) {
    require_positive(k, "radical");
    std::int64_t s = 1;
    for (const auto& pp : factorize(k)) s *= pp.prime;
    return s;
}

BigInt lcm_up_to(int a) {
    BigInt l = 1;
    for (int i = 2; i <= a; ++i) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), static_cast<unsigned long>(i));
    return l;
}

bool BoundCertificate::k_meets_threshold(std::int64_t k) const {
    return Rational(static_cast<long>(k)) >= threshold;
}

bool BoundCertificate::applies_to(std::int64_t n, std::int64_t k) const {
    return k_meets_threshold(k) && n <= static_cast<std::int64_t>(a + 1) * k;
}

bool BoundCertificate::self_consistent() const {
    if (lcm != lcm_up_to(a)) return false;
    BigInt product = 1;
    for (const auto& pp : factorization) {
        BigInt power;
        mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(pp.prime),
                      static_cast<unsigned long>(pp.exponent));
        product *= power;
    }
    if (product != lcm) return false;
    if (!mpz_divisible_p(lcm.get_mpz_t(), max_reduced_power.get_mpz_t())) return false;
    if (max_reduced_power != 1 && max_reduced_prime != 2 && max_reduced_prime != 3) return false;
    // a/4 < M <= a/2
    return 4 * max_reduced_power > a && 2 * max_reduced_power <= a;
}

BoundCertificate bound_certificate(int a) {
    if (a <= 1) throw domain_error("bound_certificate: a must be > 1");
    BoundCertificate cert;
    cert.a = a;
    cert.lcm = 1;
    cert.max_reduced_power = 0;
    for (std::int64_t p : primes_up_to(a)) {
        int alpha = 0;
        std::int64_t power = 1;
        while (power * p <= a) {
            power *= p;
            ++alpha;
        }
        cert.factorization.push_back({p, alpha});
        cert.lcm *= static_cast<long>(power);
        BigInt reduced = static_cast<long>(power / p);
        if (reduced > cert.max_reduced_power) {
            cert.max_reduced_power = reduced;
            cert.max_reduced_prime = p;
        }
    }
    cert.threshold = Rational(cert.lcm, cert.max_reduced_power);
    cert.threshold.canonicalize();
    return cert;
}

std::optional<int> contractible_by_theorem(std::int64_t n, std::int64_t k) {
    if (n < 1 || k < 1) throw domain_error("contractible_by_theorem: n and k must be >= 1");
    if (n != 1 && n <= k) return std::nullopt;
    // The thresholds are weakly increasing in a, so the admissible a form
    // an initial segment 2..A.
    std::optional<int> best;
    for (int a = 2;; ++a) {
        if (!bound_certificate(a).k_meets_threshold(k)) break;
        best = a;
    }
    if (best && n <= static_cast<std::int64_t>(*best + 1) * k) return best;
    return std::nullopt;
}

bool lm_monotone_check(int a_max) {
    if (a_max < 2) throw domain_error("lm_monotone_check: a_max must be >= 2");
    BoundCertificate prev = bound_certificate(2);
    for (int a = 2; a < a_max; ++a) {
        BoundCertificate next = bound_certificate(a + 1);
        // L/M <= L'/M'  <=>  L * M' <= L' * M
        if (prev.lcm * next.max_reduced_power > next.lcm * prev.max_reduced_power) return false;
        prev = std::move(next);
    }
    return true;
}

double asymptotic_ratio(std::int64_t k) {
    if (k < 3) throw domain_error("asymptotic_ratio: k must be >= 3");
    const double x = static_cast<double>(k);
    return r_of_k(k) * std::log(std::log(x)) / std::log(x);
}

}  // namespace vdw
