#pragma once

// The family Gamma(k) = { F : {0,k} <= F <= [0,k], gcd(F) = 1 } and its
// acyclic matchings: a perfect one when k has a square factor, and for
// squarefree k a recursive one with a single critical cell.
//
// Gamma(k) is closed upward inside [0,k], so its cover relations are exactly
// the one-element extensions.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "vdw/face.hpp"

namespace vdw {

// Largest k for which Gamma(k) is materialized as a list (2^(k-1) candidates).
inline constexpr int kGammaListLimit = 24;
// Largest k for which mobius_via_gamma sums over Gamma(k) by enumeration.
inline constexpr int kGammaEnumerationLimit = 28;

struct GammaFamily {
    int k = 1;
    std::vector<Face> members;  // graded order
};

struct GammaMatching {
    int k = 1;
    std::vector<std::pair<Face, Face>> pairs;  // (F, F + one element)
    std::optional<Face> critical;
};

// Which prime factor the squarefree recursion peels off at each level.
enum class PrimeChoice { smallest, largest };

// gcd of the elements (0 contributes nothing).
int set_gcd(Face face);

bool is_gamma_member(int k, Face face);

// Requires 1 <= k <= kGammaListLimit.
GammaFamily gamma(int k);

// Requires 1 <= k <= kGammaListLimit.  Built by the recursion on Gamma(k/p)
// through G -> p*G + {k/p}.
GammaMatching match_gamma(int k, PrimeChoice choice = PrimeChoice::smallest);

// The same matching evaluated at a single member, without materializing the
// family.  nullopt for the critical cell.  Requires k <= kMaxElement and
// is_gamma_member(k, face).
std::optional<Face> gamma_partner(int k, Face face, PrimeChoice choice = PrimeChoice::smallest);

// The elements that gamma_partner(k, .) may toggle: {rad(k)} when k has a
// square factor, {k/p : p | k} when k > 1 is squarefree, none for k = 1.
std::vector<int> gamma_toggle_elements(int k);

// {0,k} + {k/q : q prime, q | k}.  Throws domain_error unless k is squarefree
// and k <= kMaxElement.
Face squarefree_critical_cell(int k);

// The critical cell found by running the recursion on the critical cell
// alone; nullopt when k is not squarefree.  Works for any k >= 1.
std::optional<std::vector<std::int64_t>> gamma_critical_elements(std::int64_t k,
                                                                  PrimeChoice choice = PrimeChoice::smallest);

// Sum of (-1)^|F| over Gamma(k).  Enumerates the family for
// k <= kGammaEnumerationLimit; above that, matched pairs cancel and only the
// critical cell contributes.
int mobius_via_gamma(std::int64_t k);
int mobius_via_gamma_enumeration(int k);
int mobius_via_gamma_matching(std::int64_t k);

}  // namespace vdw
