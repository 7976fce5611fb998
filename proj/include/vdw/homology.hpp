#pragma once

// Reduced simplicial homology over the integers, computed from boundary
// matrices by exact elimination.  This is the ground truth every Morse
// matching is checked against; it shares nothing with the matching code.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vdw/complex.hpp"
#include "vdw/number_theory.hpp"

namespace vdw {

// The boundary map C_dim -> C_(dim-1), columns indexed by the dim-faces and
// rows by the (dim-1)-faces, both in the FaceSet's lexicographic order.
// dim = 0 is the augmentation onto the empty face.
struct BoundaryMatrix {
    int dim = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<std::pair<std::size_t, int>>> columns;  // sorted (row, entry)

    int entry(std::size_t row, std::size_t col) const;
};

// Entry for deleting the j-th smallest vertex is (-1)^j.
BoundaryMatrix boundary_matrix(const FaceSet& faces, int dim);

using DenseIntegerMatrix = std::vector<std::vector<BigInt>>;

// Nonzero invariant factors d1 | d2 | ... | dr, r = rank.  Classic
// elimination with the smallest nonzero entry as pivot.
std::vector<BigInt> smith_normal_form(DenseIntegerMatrix m);

std::size_t integer_rank(const BoundaryMatrix& m);
// Nonzero invariant factors of a sparse matrix.
std::vector<BigInt> smith_invariants(const BoundaryMatrix& m);

struct BettiReport {
    std::map<int, long> betti;                  // reduced Betti numbers, i >= 0
    std::map<int, std::vector<BigInt>> torsion; // non-unit invariants, only when computed
    bool torsion_computed = false;

    long betti_at(int i) const;
    bool torsion_free() const;
    long reduced_euler_characteristic() const;
};

struct HomologyOptions {
    bool torsion = false;
};

BettiReport reduced_homology(const FaceSet& faces, HomologyOptions options = {});

// (dimension, count) when the homology is torsion-free and concentrated in a
// single dimension i > 0; (0, 0) when all reduced homology vanishes.
std::optional<std::pair<int, long>> wedge_signature(const BettiReport& report);

// Repeatedly deletes dominated vertices (every maximal face containing v
// also contains some other w).  Preserves the homotopy type.  Returns the
// maximal faces of the core.
std::vector<Face> strong_collapse_core(std::vector<Face> maximal);

// Homology of the complex generated by `maximal`, computed on its strong
// collapse core so that large simplices never get enumerated.
BettiReport reduced_homology_of_facets(std::span<const Face> maximal, HomologyOptions options = {});

}  // namespace vdw
