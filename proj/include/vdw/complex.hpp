#pragma once

// Construction of the van der Waerden complex vdW(n,k): facets, explicit face
// enumeration, progression step sets, and the fiber decomposition of the face
// poset by (min, max, gcd after translation).

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "vdw/face.hpp"

namespace vdw {

// Largest n for which faces can be enumerated (vertices 1..n as mask bits).
inline constexpr int kMaxVertices = kMaxElement;

// The progression {start, start+step, ..., start+length*step}.
struct ApFacet {
    int start = 1;
    int step = 1;
    int length = 1;

    int last() const { return start + length * step; }
    Face expand() const { return Face::progression(start, step, last()); }

    friend bool operator==(const ApFacet&, const ApFacet&) = default;
};

// All facets of vdW(n,k), ordered by step then start.  Empty when n < k+1.
std::vector<ApFacet> facets(int n, int k);

// An explicit simplicial complex on vertices 1..n, bucketed by dimension.
// Each bucket is sorted lexicographically.  Immutable once built.
class FaceSet {
  public:
    // The downward closure of `maximal`, plus the empty face and every
    // singleton {1},...,{n}.  `k` is recorded for reporting only; 0 marks a
    // complex that is not a van der Waerden complex.
    static FaceSet from_facets(int n, std::span<const Face> maximal, int k = 0);
    // The downward closure of `maximal` alone, on vertices 1..max vertex.
    static FaceSet downward_closure(std::span<const Face> maximal);

    int n() const { return n_; }
    int k() const { return k_; }
    int max_dimension() const { return static_cast<int>(buckets_.size()) - 2; }

    // Faces of dimension `dim` (dim >= -1); empty span outside the range.
    std::span<const Face> faces_of_dimension(int dim) const;
    std::size_t count_of_dimension(int dim) const { return faces_of_dimension(dim).size(); }
    // Including the empty face.
    std::size_t size() const { return size_; }

    bool contains(Face face) const { return index_.count(face) != 0; }
    // Position of `face` within its dimension bucket; throws if absent.
    std::size_t index_of(Face face) const;

    // Non-empty faces in graded order.
    std::vector<Face> nonempty_faces() const;

  private:
    static FaceSet build(int n, int k, std::span<const Face> maximal, std::unordered_set<std::uint64_t> seen);

    int n_ = 0;
    int k_ = 0;
    std::size_t size_ = 0;
    std::vector<std::vector<Face>> buckets_;  // buckets_[d + 1] holds dimension d
    std::unordered_map<Face, std::size_t> index_;
};

FaceSet enumerate_faces(int n, int k);

// Number of (facet, subset) pairs, an upper bound on the face count that is
// cheap to evaluate before committing to enumeration.
double face_count_upper_bound(int n, int k);

// Membership in vdW(n,k) without enumeration.  Throws domain_error for a
// vertex outside [1,n].
bool is_face(Face face, int n, int k);

// gcd of the differences from the minimum; 0 for a singleton.
int gcdtr(Face face);

// Steps of the facets containing the edge {x,y}.  Throws domain_error when
// {x,y} is not a face.
std::vector<int> step_set(int n, int k, int x, int y);

// Divisors d of y-x such that the progression x, x+d, ..., y is a face.
std::vector<int> d_set(int n, int k, int x, int y);

// {d : d | y-x and (y-x)/d <= k}, which always contains d_set.
std::vector<int> d_set_bound(int k, int x, int y);

// Index of a fiber of the face poset.  Bottom collects singletons and edges
// {i,i+1}.  Triple keys carry (min, max, gcdtr); pair keys drop the step and
// index the coarser poset used for the contractibility matchings.
struct FiberKey {
    enum class Kind { bottom, triple, pair };

    Kind kind = Kind::bottom;
    int x = 0;
    int y = 0;
    int d = 0;

    static FiberKey bottom() { return {}; }
    static FiberKey triple(int x, int y, int d) { return {Kind::triple, x, y, d}; }
    static FiberKey pair(int x, int y) { return {Kind::pair, x, y, 0}; }

    bool is_bottom() const { return kind == Kind::bottom; }

    friend auto operator<=>(const FiberKey&, const FiberKey&) = default;
};

std::string to_string(const FiberKey& key);

enum class FiberGranularity { triple, pair };

// Throws domain_error on the empty face.
FiberKey fiber_key(Face face, FiberGranularity granularity = FiberGranularity::triple);

// The partial order on fiber keys: bottom below everything; (x,y,d) <= (x',y',d')
// iff x' <= x < y <= y' and d' | d.  Pair keys ignore the divisibility part.
// Keys of different granularity are incomparable.
bool fiber_precedes(const FiberKey& lower, const FiberKey& upper);

// Partition of the non-empty faces into fibers; face lists are in graded order.
std::map<FiberKey, std::vector<Face>> decompose(const FaceSet& faces,
                                                FiberGranularity granularity = FiberGranularity::triple);
std::map<FiberKey, std::vector<Face>> decompose(int n, int k);

// Sum over i >= 0 of (-1)^i times the number of i-faces.
long euler_characteristic(const FaceSet& faces);
// Includes the empty face with sign -1.
long reduced_euler_characteristic(const FaceSet& faces);

}  // namespace vdw
