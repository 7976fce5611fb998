// Runs every acceptance criterion and prints one PASS/FAIL line per
// criterion.  Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "vdw/complex.hpp"
#include "vdw/gamma.hpp"
#include "vdw/homology.hpp"
#include "vdw/morse.hpp"
#include "vdw/number_theory.hpp"

using namespace vdw;

namespace {

// Cases above this many (facet, subset) pairs rely on the symbolic
// certificate and the strong-collapse oracle instead of enumeration.
constexpr double kEnumerationBudget = 1 << 19;

struct Result {
    bool pass = true;
    std::string detail;
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (failures.size() < 8) failures.push_back(what);
        }
    }
};

std::vector<Face> expanded_facets(int n, int k) {
    std::vector<Face> out;
    for (const ApFacet& f : facets(n, k)) out.push_back(f.expand());
    return out;
}

std::set<Face> as_set(const std::vector<Face>& v) { return {v.begin(), v.end()}; }

Result table_homology() {
    Result r;
    const std::vector<std::pair<int, long>> expected{{1, 6}, {1, 7}, {2, 9}, {2, 22}, {2, 32}};
    for (int k = 1; k <= 5; ++k) {
        const int n = 5 * k;
        const BettiReport b = reduced_homology(enumerate_faces(n, k), {true});
        const auto [dim, count] = expected[static_cast<std::size_t>(k - 1)];
        for (const auto& [i, v] : b.betti)
            r.require(v == (i == dim ? count : 0), "vdW(" + std::to_string(n) + "," + std::to_string(k) + ") b" +
                                                       std::to_string(i) + " = " + std::to_string(v));
        r.require(b.betti_at(dim) == count, "missing dimension " + std::to_string(dim));
        r.require(b.torsion_free(), "torsion in vdW(" + std::to_string(n) + "," + std::to_string(k) + ")");
    }
    r.detail = "b1=6, b1=7, b2=9, b2=22, b2=32, torsion-free";
    return r;
}

Result table_morse() {
    Result r;
    for (int k = 2; k <= 5; ++k) {
        const int n = 5 * k;
        std::vector<Face> expected{Face{n}};
        if (k == 2) {
            for (int x = 1; x <= 7; ++x) expected.push_back(Face{x, x + 3});
        } else {
            for (int x = 1; x + 6 <= n; ++x) expected.push_back(Face{x, x + 3, x + 6});
            if (k >= 4)
                for (int x = 1; x + 12 <= n; ++x) expected.push_back(Face{x, x + 4, x + 12});
        }
        const StrategyReport s = build_example_matching(n, k);
        const std::string tag = "vdW(" + std::to_string(n) + "," + std::to_string(k) + ")";
        r.require(s.acyclic, tag + " not acyclic");
        r.require(as_set(s.critical) == as_set(expected) && s.critical.size() == expected.size(),
                  tag + " critical cells differ");
        r.detail += (r.detail.empty() ? "" : ", ") + tag + ": " + std::to_string(s.critical.size()) + " critical";
    }
    return r;
}

Result dimension_bound() {
    Result r;
    int complexes = 0;
    for (int k = 2; k <= 8; ++k) {
        const int rk = r_of_k(k);
        for (int n = k + 1; n <= 30; ++n) {
            const std::string tag = "vdW(" + std::to_string(n) + "," + std::to_string(k) + ")";
            const StrategyReport s = build_theorem_main_matching(n, k);
            r.require(s.acyclic, tag + " not acyclic");
            for (Face f : s.critical) r.require(f.dimension() <= rk, tag + " critical " + to_set_string(f));
            const BettiReport b = reduced_homology(enumerate_faces(n, k));
            for (const auto& [i, v] : b.betti)
                if (i >= rk + 1) r.require(v == 0, tag + " b" + std::to_string(i) + " != 0");
            r.require(morse_inequalities_check(s.morse_vector, b), tag + " Morse inequalities");
            ++complexes;
        }
    }
    r.detail = std::to_string(complexes) + " complexes, 2<=k<=8, k+1<=n<=30";
    return r;
}

Result contractibility() {
    Result r;
    int enumerated = 0, certified = 0;
    for (int n = 1; n <= 36; ++n)
        for (int k = 1; k <= 36; ++k) {
            const auto a = contractible_by_theorem(n, k);
            if (!a) continue;
            const std::string tag = "vdW(" + std::to_string(n) + "," + std::to_string(k) + ") a=" + std::to_string(*a);
            const auto cert = certify_contractible_matching(n, k, *a);
            r.require(cert.holds, tag + " certificate: " + cert.failure);
            if (face_count_upper_bound(n, k) <= kEnumerationBudget) {
                const StrategyReport s = build_contractible_matching(n, k, *a);
                r.require(s.acyclic, tag + " not acyclic");
                r.require(s.critical == std::vector<Face>{Face{n}}, tag + " critical cells");
                const BettiReport b = reduced_homology(enumerate_faces(n, k));
                for (const auto& [i, v] : b.betti) r.require(v == 0, tag + " b" + std::to_string(i) + " != 0");
                ++enumerated;
            } else {
                const BettiReport b = reduced_homology_of_facets(expanded_facets(n, k));
                for (const auto& [i, v] : b.betti) r.require(v == 0, tag + " b" + std::to_string(i) + " != 0");
                ++certified;
            }
        }
    for (int k : {6, 7}) {
        const auto a = contractible_by_theorem(5 * k, k);
        r.require(a.has_value(), "no witness for vdW(5k,k), k=" + std::to_string(k));
        if (a) {
            const StrategyReport s = build_contractible_matching(5 * k, k, *a);
            r.require(s.acyclic && s.critical == std::vector<Face>{Face{5 * k}},
                      "vdW(" + std::to_string(5 * k) + "," + std::to_string(k) + ") not certified");
        }
    }
    r.detail = std::to_string(enumerated) + " enumerated, " + std::to_string(certified) +
               " by symbolic certificate + strong-collapse oracle; vdW(30,6), vdW(35,7) contractible";
    return r;
}

Result mobius_identity() {
    Result r;
    for (int k = 1; k <= 200; ++k)
        r.require(mobius_via_gamma(k) == mobius(k), "k = " + std::to_string(k));
    r.detail = "1<=k<=200 (enumeration to 28, matching above)";
    return r;
}

Result gamma_matchings() {
    Result r;
    std::uint64_t orbits = 0;
    for (int k = 1; k <= 60; ++k) {
        const std::string tag = "k = " + std::to_string(k);
        const auto o = check_gamma_matching_by_orbits(k);
        orbits += o.orbits;
        r.require(o.check.ok(), tag + ": " + o.check.message);
        if (is_squarefree(k)) {
            r.require(o.critical == 1 && o.critical_cell == squarefree_critical_cell(k), tag + " critical cell");
        } else {
            r.require(o.critical == 0, tag + " has critical cells");
        }
        if (k <= 20) {
            const GammaMatching m = match_gamma(k);
            const MatchingCheck c = check_matching(m);
            r.require(c.ok(), tag + " explicit: " + c.message);
            r.require(m.critical.has_value() == is_squarefree(k), tag + " explicit critical presence");
            if (m.critical) r.require(*m.critical == squarefree_critical_cell(k), tag + " explicit critical cell");
            r.require(2 * m.pairs.size() + (m.critical ? 1 : 0) == gamma(k).members.size(), tag + " coverage");
            r.require(o.members == gamma(k).members.size(), tag + " orbit member count");
        }
    }
    r.detail = "k<=60 by orbit quotient (" + std::to_string(orbits) + " orbits), k<=20 also explicit";
    return r;
}

Result number_theory() {
    Result r;
    for (int a = 2; a <= 100; ++a) {
        const BoundCertificate c = bound_certificate(a);
        const BigInt& m = c.max_reduced_power;
        r.require(4 * m > a && 2 * m <= a, "a/4 < M <= a/2 fails at a = " + std::to_string(a));
        r.require(is_prime_power(m.get_si()) ? (c.max_reduced_prime == 2 || c.max_reduced_prime == 3) : m == 1,
                  "M not a power of 2 or 3 at a = " + std::to_string(a));
        r.require(c.self_consistent(), "certificate inconsistent at a = " + std::to_string(a));
    }
    r.require(lm_monotone_check(100), "L/M not weakly increasing");
    for (int k = 1; k <= 10000; ++k) {
        const int rk = r_of_k(k);
        r.require(primorial_of_first(rk - 1) <= k && k < primorial_of_first(rk), "r(k) at k = " + std::to_string(k));
    }
    r.detail = "a<=100, k<=10^4";
    return r;
}

Result structural_suite() {
    Result r;
    std::mt19937 rng(20240611);
    int done = 0;
    std::vector<std::string> seen;
    while (done < 50) {
        const int which = std::uniform_int_distribution<int>(0, 2)(rng);
        int n = 0, k = 0, a = 0;
        std::string strategy;
        if (which == 0) {
            k = std::uniform_int_distribution<int>(1, 6)(rng);
            n = std::uniform_int_distribution<int>(1, 24)(rng);
            strategy = "theorem-main";
        } else if (which == 1) {
            k = std::uniform_int_distribution<int>(2, 8)(rng);
            n = std::uniform_int_distribution<int>(k + 1, 30)(rng);
            const auto w = contractible_by_theorem(n, k);
            if (!w) continue;
            a = *w;
            strategy = "contractible";
        } else {
            k = std::uniform_int_distribution<int>(2, 5)(rng);
            n = 5 * k;
            strategy = "example";
        }
        const std::string tag = strategy + " vdW(" + std::to_string(n) + "," + std::to_string(k) + ")";
        seen.push_back(tag);
        const FaceSet fs = enumerate_faces(n, k);
        for (Face f : fs.nonempty_faces())
            f.for_each([&](int v) { r.require(fs.contains(f.without(v)), tag + " closure at " + to_set_string(f)); });
        std::size_t fibered = 0;
        std::set<Face> covered;
        for (const auto& [key, members] : decompose(fs)) {
            fibered += members.size();
            covered.insert(members.begin(), members.end());
        }
        r.require(fibered == fs.size() - 1 && covered.size() == fibered, tag + " decompose is not a partition");
        const StrategyReport s = strategy == "theorem-main"   ? build_theorem_main_matching(n, k)
                                 : strategy == "contractible" ? build_contractible_matching(n, k, a)
                                                              : build_example_matching(n, k);
        r.require(s.acyclic, tag + " not acyclic");
        r.require(fs.size() - 1 == 2 * s.matching.pairs.size() + s.critical.size(), tag + " counting identity");
        r.require(s.morse_vector.euler_characteristic() == euler_characteristic(fs), tag + " Euler");
        r.require(morse_inequalities_check(s.morse_vector, reduced_homology(fs)), tag + " Morse inequalities");
        ++done;
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    r.detail = "50 sampled triples (" + std::to_string(seen.size()) + " distinct), seed 20240611";
    return r;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
        {"1 Table homology (oracle)", table_homology},
        {"2 Table critical cells (Morse)", table_morse},
        {"3 critical dimension <= r(k), vanishing above r(k)", dimension_bound},
        {"4 contractibility certification, n <= 36", contractibility},
        {"5 Mobius identity", mobius_identity},
        {"6 Gamma matchings, k <= 60", gamma_matchings},
        {"7 number-theory invariants", number_theory},
        {"8 structural property suite", structural_suite},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Result r;
        try {
            r = run();
        } catch (const std::exception& e) {
            r.pass = false;
            r.failures.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %s: %s [%.1fs] %s\n", name.c_str(), r.pass ? "PASS" : "FAIL", secs, r.detail.c_str());
        for (const auto& f : r.failures) std::printf("    %s\n", f.c_str());
        std::fflush(stdout);
        if (!r.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
