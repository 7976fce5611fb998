#include "vdw/gamma.hpp"

#include <algorithm>
#include <numeric>

#include "vdw/errors.hpp"
#include "vdw/number_theory.hpp"

namespace vdw {

namespace {

void require_list_range(int k, const char* what) {
    if (k < 1 || k > kGammaListLimit)
        throw domain_error(std::string(what) + ": k must lie in 1.." + std::to_string(kGammaListLimit) +
                           ", got " + std::to_string(k));
}

std::int64_t choose_prime(std::int64_t k, PrimeChoice choice) {
    return choice == PrimeChoice::smallest ? smallest_prime_factor(k) : largest_prime_factor(k);
}

// G -> p*G + {k/p}
Face lift(Face g, int p, int cofactor) { return affine_image(g, p, 0).with(cofactor); }

int signed_sum(int k, int next, int g, int size) {
    if (next == k) return g == 1 ? (size % 2 == 0 ? 1 : -1) : 0;
    return signed_sum(k, next + 1, g, size) + signed_sum(k, next + 1, std::gcd(g, next), size + 1);
}

}  // namespace

int set_gcd(Face face) {
    int g = 0;
    face.for_each([&](int e) { g = std::gcd(g, e); });
    return g;
}

bool is_gamma_member(int k, Face face) {
    if (k < 1 || k > kMaxElement) return false;
    if (!face.contains(0) || !face.contains(k) || face.max() != k) return false;
    return set_gcd(face) == 1;
}

GammaFamily gamma(int k) {
    require_list_range(k, "gamma");
    GammaFamily family;
    family.k = k;
    const Face ends{0, k};
    // Interior candidates are the subsets of {1, ..., k-1}.
    const std::uint64_t interior = k > 1 ? ((std::uint64_t{1} << (k - 1)) - 1) << 1 : 0;
    for (std::uint64_t s = interior;; s = (s - 1) & interior) {
        const Face f = Face::from_bits(s) | ends;
        if (set_gcd(f) == 1) family.members.push_back(f);
        if (s == 0) break;
    }
    std::sort(family.members.begin(), family.members.end(), GradedLess{});
    return family;
}

GammaMatching match_gamma(int k, PrimeChoice choice) {
    require_list_range(k, "match_gamma");
    GammaMatching out;
    out.k = k;
    if (k == 1) {
        out.critical = Face{0, 1};
        return out;
    }
    const GammaFamily family = gamma(k);
    if (!is_squarefree(k)) {
        const int s = static_cast<int>(radical(k));
        for (Face f : family.members)
            if (!f.contains(s)) out.pairs.emplace_back(f, f.with(s));
        return out;
    }
    const int p = static_cast<int>(choose_prime(k, choice));
    const int cofactor = k / p;
    // First layer: F with k/p missing (and gcd 1) against F + {k/p}.
    for (Face f : family.members)
        if (!f.contains(cofactor)) out.pairs.emplace_back(f, f.with(cofactor));
    // What is left is the image of Gamma(k/p).
    const GammaMatching inner = match_gamma(cofactor, choice);
    for (const auto& [lower, upper] : inner.pairs) out.pairs.emplace_back(lift(lower, p, cofactor), lift(upper, p, cofactor));
    if (inner.critical) out.critical = lift(*inner.critical, p, cofactor);
    return out;
}

std::optional<Face> gamma_partner(int k, Face face, PrimeChoice choice) {
    if (!is_gamma_member(k, face))
        throw domain_error("gamma_partner: " + to_set_string(face) + " is not in Gamma(" + std::to_string(k) + ")");
    if (k == 1) return std::nullopt;
    if (!is_squarefree(k)) return face.toggled(static_cast<int>(radical(k)));
    const int p = static_cast<int>(choose_prime(k, choice));
    const int cofactor = k / p;
    const Face rest = face.without(cofactor);
    if (set_gcd(rest) == 1) return face.toggled(cofactor);
    // Here gcd(rest) = p and face = p*G + {k/p} for G in Gamma(k/p).
    const auto inner = gamma_partner(cofactor, affine_preimage(rest, p, 0), choice);
    if (!inner) return std::nullopt;
    return lift(*inner, p, cofactor);
}

std::vector<int> gamma_toggle_elements(int k) {
    if (k < 1) throw domain_error("gamma_toggle_elements: k must be >= 1");
    if (k == 1) return {};
    if (!is_squarefree(k)) return {static_cast<int>(radical(k))};
    std::vector<int> out;
    for (const auto& pp : factorize(k)) out.push_back(k / static_cast<int>(pp.prime));
    std::sort(out.begin(), out.end());
    return out;
}

Face squarefree_critical_cell(int k) {
    if (k < 1 || k > kMaxElement) throw domain_error("squarefree_critical_cell: k out of range");
    if (!is_squarefree(k)) throw domain_error("squarefree_critical_cell: " + std::to_string(k) + " is not squarefree");
    Face cell{0, k};
    for (const auto& pp : factorize(k)) cell = cell.with(k / static_cast<int>(pp.prime));
    return cell;
}

std::optional<std::vector<std::int64_t>> gamma_critical_elements(std::int64_t k, PrimeChoice choice) {
    if (k < 1) throw domain_error("gamma_critical_elements: k must be >= 1");
    if (k == 1) return std::vector<std::int64_t>{0, 1};
    if (!is_squarefree(k)) return std::nullopt;
    const std::int64_t p = choose_prime(k, choice);
    auto inner = gamma_critical_elements(k / p, choice);
    if (!inner) return std::nullopt;
    std::vector<std::int64_t> lifted;
    for (std::int64_t e : *inner) lifted.push_back(p * e);
    lifted.push_back(k / p);
    std::sort(lifted.begin(), lifted.end());
    return lifted;
}

int mobius_via_gamma_enumeration(int k) {
    if (k < 1 || k > kGammaEnumerationLimit)
        throw domain_error("mobius_via_gamma_enumeration: k must lie in 1.." +
                           std::to_string(kGammaEnumerationLimit));
    // Elements 0 and k are always present; gcd(0, k) = k.
    return signed_sum(k, 1, k, 2);
}

int mobius_via_gamma_matching(std::int64_t k) {
    const auto critical = gamma_critical_elements(k);
    if (!critical) return 0;
    return critical->size() % 2 == 0 ? 1 : -1;
}

int mobius_via_gamma(std::int64_t k) {
    if (k < 1) throw domain_error("mobius_via_gamma: k must be >= 1");
    if (k <= kGammaEnumerationLimit) return mobius_via_gamma_enumeration(static_cast<int>(k));
    return mobius_via_gamma_matching(k);
}

}  // namespace vdw
