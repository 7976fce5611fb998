#include "vdw/face.hpp"

#include <charconv>
#include <ostream>

#include "vdw/errors.hpp"

namespace vdw {

namespace {

std::uint64_t bit(int e) {
    if (e < 0 || e > kMaxElement)
        throw domain_error("element " + std::to_string(e) + " outside 0.." +
                           std::to_string(kMaxElement));
    return std::uint64_t{1} << e;
}

}  // namespace

Face::Face(std::initializer_list<int> elements) {
    for (int e : elements) bits_ |= bit(e);
}

Face Face::from_elements(std::span<const int> elements) {
    std::uint64_t bits = 0;
    for (int e : elements) bits |= bit(e);
    return from_bits(bits);
}

Face Face::progression(int first, int step, int last) {
    if (step <= 0 || last < first || (last - first) % step != 0)
        throw domain_error("not a progression: " + std::to_string(first) + ".." +
                           std::to_string(last) + " step " + std::to_string(step));
    std::uint64_t bits = 0;
    for (int e = first; e <= last; e += step) bits |= bit(e);
    return from_bits(bits);
}

bool Face::contains(int e) const {
    return e >= 0 && e <= kMaxElement && (bits_ >> e) & 1u;
}

Face Face::with(int e) const { return from_bits(bits_ | bit(e)); }
Face Face::without(int e) const { return from_bits(bits_ & ~bit(e)); }
Face Face::toggled(int e) const { return from_bits(bits_ ^ bit(e)); }

std::vector<int> Face::elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each([&](int e) { out.push_back(e); });
    return out;
}

std::strong_ordering operator<=>(Face a, Face b) {
    const std::uint64_t diff = a.bits_ ^ b.bits_;
    if (diff == 0) return std::strong_ordering::equal;
    // Below the lowest differing element the sequences agree.  The side that
    // owns that element is smaller, unless the other side has run out.
    const std::uint64_t low = diff & (~diff + 1);
    const std::uint64_t above = ~((low << 1) - 1);
    if (a.bits_ & low)
        return (b.bits_ & above) ? std::strong_ordering::less : std::strong_ordering::greater;
    return (a.bits_ & above) ? std::strong_ordering::greater : std::strong_ordering::less;
}

Face affine_image(Face face, int scale, int offset) {
    std::uint64_t bits = 0;
    face.for_each([&](int e) { bits |= bit(scale * e + offset); });
    return Face::from_bits(bits);
}

Face affine_preimage(Face face, int scale, int offset) {
    std::uint64_t bits = 0;
    face.for_each([&](int e) {
        const int shifted = e - offset;
        if (shifted < 0 || shifted % scale != 0)
            throw domain_error("face " + to_set_string(face) + " is not in the image of x -> " +
                               std::to_string(scale) + "x+" + std::to_string(offset));
        bits |= bit(shifted / scale);
    });
    return Face::from_bits(bits);
}

std::string to_string(Face face) {
    std::string out;
    face.for_each([&](int e) {
        if (!out.empty()) out += ',';
        out += std::to_string(e);
    });
    return out;
}

std::string to_set_string(Face face) { return "{" + to_string(face) + "}"; }

std::ostream& operator<<(std::ostream& os, Face face) { return os << to_set_string(face); }

Face parse_face(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
            s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.empty()) throw parse_error(0, "empty face");
    std::uint64_t bits = 0;
    std::size_t count = 0;
    while (true) {
        const auto comma = text.find(',');
        const auto token = trim(text.substr(0, comma));
        int value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
            throw parse_error(0, "bad vertex '" + std::string(token) + "'");
        if (value < 0 || value > kMaxElement)
            throw parse_error(0, "vertex " + std::to_string(value) + " out of range");
        bits |= std::uint64_t{1} << value;
        ++count;
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (static_cast<std::size_t>(std::popcount(bits)) != count)
        throw parse_error(0, "repeated vertex");
    return Face::from_bits(bits);
}

}  // namespace vdw
