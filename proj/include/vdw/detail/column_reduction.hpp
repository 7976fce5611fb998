#pragma once

// Exact column echelon reduction of sparse integer matrices by unimodular
// column operations, generic over the entry type.  Entries are tried as
// overflow-checked 64-bit integers first; callers retry with BigInt when
// that throws.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace vdw::detail {

struct overflow : std::overflow_error {
    overflow() : std::overflow_error("64-bit overflow in exact reduction") {}
};

class CheckedInt {
  public:
    CheckedInt(std::int64_t v = 0) : v_(v) {}  // NOLINT: implicit by design of the scalar concept

    std::int64_t value() const { return v_; }

    friend CheckedInt operator+(CheckedInt a, CheckedInt b) {
        std::int64_t r;
        if (__builtin_add_overflow(a.v_, b.v_, &r)) throw overflow();
        return r;
    }
    friend CheckedInt operator-(CheckedInt a, CheckedInt b) {
        std::int64_t r;
        if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw overflow();
        return r;
    }
    friend CheckedInt operator*(CheckedInt a, CheckedInt b) {
        std::int64_t r;
        if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw overflow();
        return r;
    }
    friend CheckedInt operator/(CheckedInt a, CheckedInt b) {
        if (b.v_ == -1) return CheckedInt(0) - a;
        return a.v_ / b.v_;
    }
    friend CheckedInt operator%(CheckedInt a, CheckedInt b) {
        if (b.v_ == -1) return 0;
        return a.v_ % b.v_;
    }
    CheckedInt operator-() const { return CheckedInt(0) - *this; }

    friend bool operator==(CheckedInt a, CheckedInt b) { return a.v_ == b.v_; }
    friend bool operator<(CheckedInt a, CheckedInt b) { return a.v_ < b.v_; }

  private:
    std::int64_t v_;
};

inline mpz_class to_big(CheckedInt v) { return mpz_class(static_cast<long>(v.value())); }
inline mpz_class to_big(const mpz_class& v) { return v; }

inline bool is_zero(CheckedInt v) { return v.value() == 0; }
inline bool is_zero(const mpz_class& v) { return sgn(v) == 0; }
inline bool is_unit(CheckedInt v) { return v.value() == 1 || v.value() == -1; }
inline bool is_unit(const mpz_class& v) { return v == 1 || v == -1; }
inline CheckedInt abs_value(CheckedInt v) { return v.value() < 0 ? -v : v; }
inline mpz_class abs_value(const mpz_class& v) { return abs(v); }

template <class Scalar>
struct ExtendedGcd {
    Scalar g, s, t;  // g = s*a + t*b, g > 0
};

template <class Scalar>
ExtendedGcd<Scalar> extended_gcd(Scalar a, Scalar b) {
    Scalar old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (!is_zero(r)) {
        const Scalar q = old_r / r;
        Scalar tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < Scalar(0)) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

template <class Scalar>
using SparseColumn = std::vector<std::pair<std::size_t, Scalar>>;  // sorted by row

// alpha * a + beta * b, dropping zeros.
template <class Scalar>
SparseColumn<Scalar> combine(const Scalar& alpha, const SparseColumn<Scalar>& a, const Scalar& beta,
                             const SparseColumn<Scalar>& b) {
    SparseColumn<Scalar> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    auto push = [&](std::size_t row, Scalar v) {
        if (!is_zero(v)) out.emplace_back(row, std::move(v));
    };
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            push(a[i].first, alpha * a[i].second);
            ++i;
        } else if (i == a.size() || b[j].first < a[i].first) {
            push(b[j].first, beta * b[j].second);
            ++j;
        } else {
            push(a[i].first, alpha * a[i].second + beta * b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

template <class Scalar>
const Scalar* find_entry(const SparseColumn<Scalar>& col, std::size_t row) {
    auto it = std::lower_bound(col.begin(), col.end(), row,
                               [](const auto& entry, std::size_t r) { return entry.first < r; });
    if (it == col.end() || it->first != row) return nullptr;
    return &it->second;
}

template <class Scalar>
struct ColumnEchelon {
    std::vector<SparseColumn<Scalar>> columns;
    std::size_t rank = 0;
};

// Unimodular column operations until the nonzero columns have pairwise
// distinct lowest rows.  The lowest entries need not be units; when two
// columns collide on a non-divisible pair, a 2x2 Bezout step keeps the gcd in
// the earlier column.
template <class Scalar, class Input>
ColumnEchelon<Scalar> column_echelon(const std::vector<Input>& input, std::size_t rows) {
    ColumnEchelon<Scalar> out;
    out.columns.resize(input.size());
    std::vector<std::ptrdiff_t> owner(rows, -1);
    for (std::size_t j = 0; j < input.size(); ++j) {
        SparseColumn<Scalar> col;
        col.reserve(input[j].size());
        for (const auto& [row, v] : input[j]) col.emplace_back(row, Scalar(v));
        while (!col.empty()) {
            const std::size_t low = col.back().first;
            const std::ptrdiff_t o = owner[low];
            if (o < 0) {
                owner[low] = static_cast<std::ptrdiff_t>(j);
                ++out.rank;
                break;
            }
            auto& pivot = out.columns[static_cast<std::size_t>(o)];
            const Scalar a = pivot.back().second;
            const Scalar b = col.back().second;
            if (is_zero(b % a)) {
                col = combine<Scalar>(Scalar(1), col, Scalar(Scalar(0) - b / a), pivot);
            } else {
                const auto e = extended_gcd(a, b);
                SparseColumn<Scalar> new_pivot = combine<Scalar>(e.s, pivot, e.t, col);
                col = combine<Scalar>(Scalar(a / e.g), col, Scalar(Scalar(0) - b / e.g), pivot);
                pivot = std::move(new_pivot);
            }
        }
        out.columns[j] = std::move(col);
    }
    return out;
}

}  // namespace vdw::detail
