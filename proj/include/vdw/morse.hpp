#pragma once

// Matchings on face posets: verification of the acyclicity condition,
// union over fibers, and the global matchings on vdW(n,k).
//
// All matchings here pair a face with a one-element extension of itself.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "vdw/complex.hpp"
#include "vdw/gamma.hpp"
#include "vdw/homology.hpp"

namespace vdw {

struct MatchedPair {
    Face lower;
    Face upper;

    friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

struct MorseMatching {
    int n = 0;  // scope: the complex vdW(n,k) or FaceSet the pairs live on
    int k = 0;
    std::vector<MatchedPair> pairs;
};

struct MorseVector {
    std::map<int, long> counts;  // dimension -> critical cells

    long at(int dim) const;
    long total() const;
    // Unreduced: sum of (-1)^i c_i.
    long euler_characteristic() const;

    static MorseVector of(const std::vector<Face>& critical);
};

struct MatchingCheck {
    enum class Status { acyclic, face_not_in_complex, empty_face, non_cover, duplicate_face, cycle };

    Status status = Status::acyclic;
    std::string message;
    // Offending faces; for a cycle, the closed path U0, L0, U1, L1, ..., U0.
    std::vector<Face> witness;

    bool ok() const { return status == Status::acyclic; }
};

std::string to_string(MatchingCheck::Status status);

// Structural checks in the order face membership, empty face, cover,
// duplicates; then a cycle search over matched pairs.
MatchingCheck check_matching(const FaceSet& faces, const MorseMatching& matching);
MatchingCheck check_matching(const GammaMatching& matching);

// true iff acyclic.  Throws domain_error for a face outside the complex and
// structural_error for an empty face, a non-cover or a duplicated face.
bool verify_matching(const FaceSet& faces, const MorseMatching& matching);

// Non-empty faces not in any pair, graded order.
std::vector<Face> critical_cells(const FaceSet& faces, const MorseMatching& matching);

// Union of matchings living on distinct fibers.  Every pair must have both
// faces in the fiber it is filed under; throws structural_error otherwise or
// when a face is matched in two fibers.
MorseMatching patchwork(const FaceSet& faces, const std::map<FiberKey, MorseMatching>& fiber_matchings);

// {i} <-> {i,i+1} for 1 <= i < n.
MorseMatching bottom_matching(int n, int k);

// b_i + [i=0] <= c_i for all i, with equal alternating sums.
bool morse_inequalities_check(const MorseVector& vector, const BettiReport& betti);

// "contractible" for a lone 0-cell, "wedge of c spheres of dim i" for one
// 0-cell plus c cells of dimension i > 0, nullopt otherwise.
std::optional<std::string> homotopy_summary(const MorseVector& vector);

struct StrategyReport {
    std::string strategy;
    int n = 0;
    int k = 0;
    int a = 0;     // contractible strategy only
    int band = 0;  // b with b*k < n <= (b+1)*k, contractible strategy only
    MorseMatching matching;
    std::vector<Face> critical;
    MorseVector morse_vector;
    bool acyclic = false;
    std::optional<std::string> homotopy_summary;
};

// Affine images of the Gamma matchings on every (x,y,d) fiber plus the
// bottom matching.  Requires n >= 1, k >= 1 and n <= kMaxVertices.
StrategyReport build_theorem_main_matching(int n, int k);

// F <-> F xor {x + lcm(T)} on each pair fiber (x,y).  Throws
// precondition_error when a <= 1, k < L(a)/M(a), n > (a+1)k, or 2 <= n <= k;
// invariant_violation when lcm(T) < y-x or the partner of a face fails.
StrategyReport build_contractible_matching(int n, int k, int a);

// The same matching checked without enumerating faces: for every fiber, the
// toggled element x + lcm(T) must extend the trace of every facet through
// {x,y} inside some facet.  Usable for n up to kMaxVertices at any k.
struct ContractibilityCertificate {
    int n = 0;
    int k = 0;
    int a = 0;
    int band = 0;
    std::size_t fibers = 0;
    bool holds = false;
    std::string failure;  // first failed check
};
ContractibilityCertificate certify_contractible_matching(int n, int k, int a);

// The hand-built matchings on vdW(10,2), vdW(15,3), vdW(20,4), vdW(25,5).
// Throws domain_error for any other (n,k).
StrategyReport build_example_matching(int n, int k);
bool has_example_matching(int n, int k);

// Acyclicity of the Gamma(k) matching for k up to kMaxElement without
// listing the family.  Membership and the matching only depend on which of
// the primes of k divide each element, once the toggled elements k/p (or
// rad(k)) are held fixed, so the check runs on orbits of subsets.
struct GammaOrbitCheck {
    int k = 0;
    std::uint64_t orbits = 0;
    std::uint64_t members = 0;   // |Gamma(k)|
    std::uint64_t critical = 0;  // members left unmatched
    std::optional<Face> critical_cell;
    MatchingCheck check;
};
GammaOrbitCheck check_gamma_matching_by_orbits(int k, PrimeChoice choice = PrimeChoice::smallest);

// Serialization: "lower<TAB>upper" per pair, faces as comma-separated
// vertices, followed by a "# critical" line and one critical face per line.
void write_matching(std::ostream& out, const MorseMatching& matching, const std::vector<Face>& critical);

struct ParsedMatching {
    std::vector<MatchedPair> pairs;
    std::vector<Face> critical;
};
// Throws parse_error with the offending line number.
ParsedMatching read_matching(std::istream& in);

}  // namespace vdw
