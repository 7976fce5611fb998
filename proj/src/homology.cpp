#include "vdw/homology.hpp"

#include <algorithm>

#include "vdw/detail/column_reduction.hpp"
#include "vdw/errors.hpp"

namespace vdw {

namespace {

using detail::CheckedInt;
using detail::SparseColumn;

struct Reduction {
    std::size_t rank = 0;
    std::vector<BigInt> invariants;  // all nonzero invariant factors, when requested
};

// SNF of the echelon form: unit-pivot columns split off as invariant 1; the
// rest is handed to the dense algorithm.
template <class Scalar>
std::vector<BigInt> invariants_from_echelon(std::vector<SparseColumn<Scalar>> columns) {
    std::vector<std::size_t> units, others;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].empty()) continue;
        (detail::is_unit(columns[j].back().second) ? units : others).push_back(j);
    }
    std::vector<BigInt> out(units.size(), BigInt(1));
    if (others.empty()) return out;

    // Clear each unit pivot's row from the non-unit columns, largest pivot
    // row first; unit columns with a larger pivot row are gone by then, so
    // afterwards the pivot row and column detach.
    std::sort(units.begin(), units.end(),
              [&](std::size_t a, std::size_t b) { return columns[a].back().first > columns[b].back().first; });
    std::vector<bool> dropped_row;
    for (std::size_t u : units) {
        const std::size_t row = columns[u].back().first;
        const Scalar pivot = columns[u].back().second;
        for (std::size_t q : others) {
            const Scalar* v = detail::find_entry(columns[q], row);
            if (v == nullptr) continue;
            const Scalar factor = Scalar(0) - *v * pivot;  // pivot^-1 == pivot for a unit
            columns[q] = detail::combine<Scalar>(Scalar(1), columns[q], factor, columns[u]);
        }
        if (dropped_row.size() <= row) dropped_row.resize(row + 1, false);
        dropped_row[row] = true;
    }

    std::vector<std::size_t> rows;
    for (std::size_t q : others)
        for (const auto& [row, v] : columns[q])
            if (row >= dropped_row.size() || !dropped_row[row]) rows.push_back(row);
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

    DenseIntegerMatrix dense(rows.size(), std::vector<BigInt>(others.size(), BigInt(0)));
    for (std::size_t c = 0; c < others.size(); ++c)
        for (const auto& [row, v] : columns[others[c]]) {
            auto it = std::lower_bound(rows.begin(), rows.end(), row);
            if (it != rows.end() && *it == row) dense[static_cast<std::size_t>(it - rows.begin())][c] = detail::to_big(v);
        }
    for (BigInt& d : smith_normal_form(std::move(dense))) out.push_back(std::move(d));
    std::sort(out.begin(), out.end());
    return out;
}

template <class Scalar>
Reduction reduce_as(const BoundaryMatrix& m, bool invariants) {
    auto echelon = detail::column_echelon<Scalar>(m.columns, m.rows);
    Reduction r;
    r.rank = echelon.rank;
    if (invariants) r.invariants = invariants_from_echelon<Scalar>(std::move(echelon.columns));
    return r;
}

Reduction reduce(const BoundaryMatrix& m, bool invariants) {
    try {
        return reduce_as<CheckedInt>(m, invariants);
    } catch (const detail::overflow&) {
        return reduce_as<BigInt>(m, invariants);
    }
}

}  // namespace

int BoundaryMatrix::entry(std::size_t row, std::size_t col) const {
    const auto& c = columns.at(col);
    auto it = std::lower_bound(c.begin(), c.end(), row, [](const auto& e, std::size_t r) { return e.first < r; });
    return it != c.end() && it->first == row ? it->second : 0;
}

BoundaryMatrix boundary_matrix(const FaceSet& faces, int dim) {
    if (dim < 0) throw domain_error("boundary_matrix: dimension must be >= 0");
    BoundaryMatrix m;
    m.dim = dim;
    const auto cols = faces.faces_of_dimension(dim);
    m.rows = faces.count_of_dimension(dim - 1);
    m.cols = cols.size();
    m.columns.reserve(cols.size());
    for (Face f : cols) {
        std::vector<std::pair<std::size_t, int>> column;
        int j = 0;
        f.for_each([&](int v) {
            column.emplace_back(faces.index_of(f.without(v)), j % 2 == 0 ? 1 : -1);
            ++j;
        });
        std::sort(column.begin(), column.end());
        m.columns.push_back(std::move(column));
    }
    return m;
}

std::vector<BigInt> smith_normal_form(DenseIntegerMatrix a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a.front().size();
    for (const auto& row : a)
        if (row.size() != cols) throw domain_error("smith_normal_form: ragged matrix");

    std::vector<BigInt> diagonal;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // Smallest nonzero entry of the trailing block goes to (t, t).
        auto bring_min_to_pivot = [&](bool whole_block) {
            std::size_t bi = rows, bj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    if (!whole_block && i != t && j != t) continue;
                    if (sgn(a[i][j]) == 0) continue;
                    if (bi == rows || abs(a[i][j]) < abs(a[bi][bj])) {
                        bi = i;
                        bj = j;
                    }
                }
            if (bi == rows) return false;
            std::swap(a[t], a[bi]);
            for (auto& row : a) std::swap(row[t], row[bj]);
            return true;
        };
        if (!bring_min_to_pivot(true)) break;

        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (sgn(a[i][t]) == 0) continue;
                const BigInt q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (sgn(a[i][t]) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (sgn(a[t][j]) == 0) continue;
                const BigInt q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (sgn(a[t][j]) != 0) clean = false;
            }
            if (!clean) {
                bring_min_to_pivot(false);
                continue;
            }
            // Row and column are clear; the pivot must divide the rest.
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            for (std::size_t j = t; j < cols; ++j) a[t][j] += a[bad][j];
        }
        diagonal.push_back(abs(a[t][t]));
    }
    return diagonal;
}

std::size_t integer_rank(const BoundaryMatrix& m) { return reduce(m, false).rank; }

std::vector<BigInt> smith_invariants(const BoundaryMatrix& m) { return reduce(m, true).invariants; }

long BettiReport::betti_at(int i) const {
    auto it = betti.find(i);
    return it == betti.end() ? 0 : it->second;
}

bool BettiReport::torsion_free() const {
    return std::all_of(torsion.begin(), torsion.end(), [](const auto& kv) { return kv.second.empty(); });
}

long BettiReport::reduced_euler_characteristic() const {
    long chi = 0;
    for (const auto& [i, b] : betti) chi += (i % 2 == 0 ? 1 : -1) * b;
    return chi;
}

BettiReport reduced_homology(const FaceSet& faces, HomologyOptions options) {
    const int top = faces.max_dimension();
    // ranks[i] = rank of the boundary C_i -> C_(i-1)
    std::vector<std::size_t> ranks(static_cast<std::size_t>(top + 2), 0);
    std::vector<std::vector<BigInt>> invariants(static_cast<std::size_t>(top + 2));
    for (int i = 0; i <= top; ++i) {
        const auto r = reduce(boundary_matrix(faces, i), options.torsion);
        ranks[static_cast<std::size_t>(i)] = r.rank;
        invariants[static_cast<std::size_t>(i)] = r.invariants;
    }
    BettiReport report;
    report.torsion_computed = options.torsion;
    for (int i = 0; i <= std::max(top, 0); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const long cycles = static_cast<long>(faces.count_of_dimension(i)) - static_cast<long>(ranks[idx]);
        const long boundaries = idx + 1 < ranks.size() ? static_cast<long>(ranks[idx + 1]) : 0;
        report.betti[i] = cycles - boundaries;
        if (options.torsion) {
            std::vector<BigInt> t;
            if (idx + 1 < invariants.size())
                for (const BigInt& d : invariants[idx + 1])
                    if (d != 1) t.push_back(d);
            report.torsion[i] = std::move(t);
        }
    }
    return report;
}

std::optional<std::pair<int, long>> wedge_signature(const BettiReport& report) {
    if (!report.torsion_free()) return std::nullopt;
    std::optional<std::pair<int, long>> found;
    for (const auto& [i, b] : report.betti) {
        if (b == 0) continue;
        if (found || i == 0) return std::nullopt;
        found = std::make_pair(i, b);
    }
    return found ? found : std::make_optional(std::make_pair(0, 0L));
}

std::vector<Face> strong_collapse_core(std::vector<Face> maximal) {
    auto prune = [](std::vector<Face>& fs) {
        std::sort(fs.begin(), fs.end(), [](Face a, Face b) { return a.size() > b.size() || (a.size() == b.size() && a < b); });
        fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
        std::vector<Face> kept;
        for (Face f : fs) {
            if (f.empty()) continue;
            bool contained = std::any_of(kept.begin(), kept.end(), [&](Face g) { return f.is_subset_of(g); });
            if (!contained) kept.push_back(f);
        }
        fs = std::move(kept);
    };
    prune(maximal);
    bool changed = true;
    while (changed) {
        changed = false;
        std::uint64_t vertices = 0;
        for (Face f : maximal) vertices |= f.bits();
        for (std::uint64_t b = vertices; b != 0; b &= b - 1) {
            const int v = std::countr_zero(b);
            std::uint64_t common = ~std::uint64_t{0};
            for (Face f : maximal)
                if (f.contains(v)) common &= f.bits();
            if ((common & ~(std::uint64_t{1} << v)) == 0) continue;
            for (Face& f : maximal)
                if (f.contains(v)) f = f.without(v);
            prune(maximal);
            changed = true;
            break;
        }
    }
    std::sort(maximal.begin(), maximal.end(), GradedLess{});
    return maximal;
}

BettiReport reduced_homology_of_facets(std::span<const Face> maximal, HomologyOptions options) {
    const auto core = strong_collapse_core({maximal.begin(), maximal.end()});
    return reduced_homology(FaceSet::downward_closure(core), options);
}

}  // namespace vdw
