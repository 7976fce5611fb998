#pragma once

// Finite sets of small non-negative integers, stored as a 64-bit mask.
//
// Faces of vdW(n,k) live on vertices 1..n and members of the family Gamma(k)
// live on 0..k, so one representation serves both.  Element i occupies bit i,
// which caps the ground set at 0..63.

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vdw {

inline constexpr int kMaxElement = 63;

class Face {
  public:
    constexpr Face() = default;
    Face(std::initializer_list<int> elements);

    static constexpr Face from_bits(std::uint64_t bits) { return Face(bits, 0); }
    static Face from_elements(std::span<const int> elements);
    // {first, first+step, ..., last}
    static Face progression(int first, int step, int last);

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr int dimension() const { return size() - 1; }

    // Undefined on the empty face.
    constexpr int min() const { return std::countr_zero(bits_); }
    constexpr int max() const { return 63 - std::countl_zero(bits_); }

    bool contains(int e) const;
    Face with(int e) const;
    Face without(int e) const;
    Face toggled(int e) const;

    constexpr bool is_subset_of(Face other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr Face operator|(Face other) const { return from_bits(bits_ | other.bits_); }
    constexpr Face operator&(Face other) const { return from_bits(bits_ & other.bits_); }

    std::vector<int> elements() const;

    // Visits elements in increasing order.
    template <class Fn>
    void for_each(Fn&& fn) const {
        for (std::uint64_t b = bits_; b != 0; b &= b - 1) fn(std::countr_zero(b));
    }

    friend constexpr bool operator==(Face, Face) = default;

    // Lexicographic order of the increasing element sequences; a proper
    // prefix sorts first.
    friend std::strong_ordering operator<=>(Face a, Face b);

  private:
    constexpr Face(std::uint64_t bits, int) : bits_(bits) {}
    std::uint64_t bits_ = 0;
};

// Graded order used for all reports: by dimension, then lexicographic.
struct GradedLess {
    bool operator()(Face a, Face b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

// d * F + x, the affine image used to embed Gamma(j) into a fiber.
Face affine_image(Face face, int scale, int offset);

// Inverse of affine_image; every element of `face` must be congruent to
// `offset` modulo `scale`.
Face affine_preimage(Face face, int scale, int offset);

// "1,4,7"; the empty face prints as "".
std::string to_string(Face face);
// "{1,4,7}"
std::string to_set_string(Face face);
std::ostream& operator<<(std::ostream& os, Face face);

// Parses "1,4,7" (surrounding spaces allowed).  Throws vdw::parse_error.
Face parse_face(std::string_view text);

}  // namespace vdw

template <>
struct std::hash<vdw::Face> {
    std::size_t operator()(vdw::Face f) const noexcept {
        return std::hash<std::uint64_t>{}(f.bits() * 0x9E3779B97F4A7C15ull);
    }
};
