#include "vdw/complex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "vdw/errors.hpp"

namespace vdw {

namespace {

void require_vertex_range(int n) {
    if (n < 1) throw domain_error("n must be >= 1");
    if (n > kMaxVertices)
        throw domain_error("n = " + std::to_string(n) + " exceeds the supported maximum " +
                           std::to_string(kMaxVertices));
}

void require_params(int n, int k) {
    require_vertex_range(n);
    if (k < 1) throw domain_error("k must be >= 1");
}

// Is there a facet of step d containing the progression-compatible set with
// minimum lo and maximum hi?  Requires d | hi - lo.
bool step_fits(int n, int k, int lo, int hi, int d) {
    if ((hi - lo) / d > k) return false;
    // start z with z = lo (mod d), max(1, hi - k d) <= z <= min(lo, n - k d)
    const int from = std::max(1, hi - k * d);
    const int to = std::min(lo, n - k * d);
    if (from > to) return false;
    const int z = lo - d * ((lo - from) / d);
    return z <= to;
}

std::vector<int> divisors(int m) {
    std::vector<int> out;
    for (int d = 1; d <= m; ++d)
        if (m % d == 0) out.push_back(d);
    return out;
}

}  // namespace

std::vector<ApFacet> facets(int n, int k) {
    if (n < 1 || k < 1) throw domain_error("facets: n and k must be >= 1");
    std::vector<ApFacet> out;
    for (int d = 1; k * d <= n - 1; ++d)
        for (int x = 1; x + k * d <= n; ++x) out.push_back({x, d, k});
    return out;
}

FaceSet FaceSet::from_facets(int n, std::span<const Face> maximal, int k) {
    require_vertex_range(n);
    std::unordered_set<std::uint64_t> seen;
    for (int v = 1; v <= n; ++v) seen.insert(std::uint64_t{1} << v);
    return build(n, k, maximal, std::move(seen));
}

FaceSet FaceSet::downward_closure(std::span<const Face> maximal) {
    int n = 0;
    for (Face f : maximal)
        if (!f.empty()) n = std::max(n, f.max());
    return build(n, 0, maximal, {});
}

FaceSet FaceSet::build(int n, int k, std::span<const Face> maximal, std::unordered_set<std::uint64_t> seen) {
    const std::uint64_t ground = n == 0 ? 0 : ((std::uint64_t{1} << n) - 1) << 1;
    seen.insert(0);
    for (Face f : maximal) {
        const std::uint64_t m = f.bits();
        if ((m & ~ground) != 0)
            throw domain_error("facet " + to_set_string(f) + " leaves the vertex set 1.." + std::to_string(n));
        for (std::uint64_t s = m;; s = (s - 1) & m) {
            seen.insert(s);
            if (s == 0) break;
        }
    }

    FaceSet fs;
    fs.n_ = n;
    fs.k_ = k;
    int top = -1;
    for (std::uint64_t m : seen) top = std::max(top, std::popcount(m) - 1);
    fs.buckets_.resize(static_cast<std::size_t>(top + 2));
    for (std::uint64_t m : seen) fs.buckets_[static_cast<std::size_t>(std::popcount(m))].push_back(Face::from_bits(m));
    fs.index_.reserve(seen.size());
    for (auto& bucket : fs.buckets_) {
        std::sort(bucket.begin(), bucket.end());
        for (std::size_t i = 0; i < bucket.size(); ++i) fs.index_.emplace(bucket[i], i);
    }
    fs.size_ = seen.size();
    return fs;
}

std::span<const Face> FaceSet::faces_of_dimension(int dim) const {
    const int slot = dim + 1;
    if (slot < 0 || slot >= static_cast<int>(buckets_.size())) return {};
    return buckets_[static_cast<std::size_t>(slot)];
}

std::size_t FaceSet::index_of(Face face) const {
    auto it = index_.find(face);
    if (it == index_.end()) throw domain_error("face " + to_set_string(face) + " is not in the complex");
    return it->second;
}

std::vector<Face> FaceSet::nonempty_faces() const {
    std::vector<Face> out;
    out.reserve(size_ - 1);
    for (std::size_t slot = 1; slot < buckets_.size(); ++slot)
        out.insert(out.end(), buckets_[slot].begin(), buckets_[slot].end());
    return out;
}

FaceSet enumerate_faces(int n, int k) {
    require_params(n, k);
    std::vector<Face> maximal;
    for (const ApFacet& f : facets(n, k)) maximal.push_back(f.expand());
    return FaceSet::from_facets(n, maximal, k);
}

double face_count_upper_bound(int n, int k) {
    require_params(n, k);
    return static_cast<double>(facets(n, k).size()) * std::ldexp(1.0, k + 1) + n + 1;
}

bool is_face(Face face, int n, int k) {
    require_params(n, k);
    if (face.empty()) return true;
    if (face.min() < 1 || face.max() > n)
        throw domain_error("face " + to_set_string(face) + " leaves the vertex set 1.." + std::to_string(n));
    if (face.size() == 1) return true;
    const int lo = face.min();
    const int hi = face.max();
    const int g = gcdtr(face);
    for (int d = 1; d <= g; ++d)
        if (g % d == 0 && step_fits(n, k, lo, hi, d)) return true;
    return false;
}

int gcdtr(Face face) {
    if (face.empty()) throw domain_error("gcdtr of the empty set");
    const int lo = face.min();
    int g = 0;
    face.for_each([&](int e) { g = std::gcd(g, e - lo); });
    return g;
}

std::vector<int> step_set(int n, int k, int x, int y) {
    require_params(n, k);
    if (!(1 <= x && x < y && y <= n))
        throw domain_error("step_set: need 1 <= x < y <= n");
    std::vector<int> out;
    for (int d : divisors(y - x))
        if (step_fits(n, k, x, y, d)) out.push_back(d);
    if (out.empty())
        throw domain_error("step_set: {" + std::to_string(x) + "," + std::to_string(y) + "} is not a face");
    return out;
}

std::vector<int> d_set(int n, int k, int x, int y) {
    require_params(n, k);
    if (!(1 <= x && x < y && y <= n)) throw domain_error("d_set: need 1 <= x < y <= n");
    std::vector<int> out;
    for (int d : divisors(y - x))
        if (is_face(Face::progression(x, d, y), n, k)) out.push_back(d);
    return out;
}

std::vector<int> d_set_bound(int k, int x, int y) {
    if (!(x < y)) throw domain_error("d_set_bound: need x < y");
    std::vector<int> out;
    for (int d : divisors(y - x))
        if ((y - x) / d <= k) out.push_back(d);
    return out;
}

std::string to_string(const FiberKey& key) {
    switch (key.kind) {
        case FiberKey::Kind::bottom: return "bottom";
        case FiberKey::Kind::pair: return "(" + std::to_string(key.x) + "," + std::to_string(key.y) + ")";
        case FiberKey::Kind::triple: break;
    }
    return "(" + std::to_string(key.x) + "," + std::to_string(key.y) + "," + std::to_string(key.d) + ")";
}

FiberKey fiber_key(Face face, FiberGranularity granularity) {
    if (face.empty()) throw domain_error("fiber_key of the empty face");
    const int x = face.min();
    const int y = face.max();
    if (y - x <= 1) return FiberKey::bottom();
    if (granularity == FiberGranularity::pair) return FiberKey::pair(x, y);
    return FiberKey::triple(x, y, gcdtr(face));
}

bool fiber_precedes(const FiberKey& lower, const FiberKey& upper) {
    if (lower.is_bottom()) return true;
    if (upper.is_bottom() || lower.kind != upper.kind) return false;
    if (!(upper.x <= lower.x && lower.y <= upper.y)) return false;
    return lower.kind == FiberKey::Kind::pair || lower.d % upper.d == 0;
}

std::map<FiberKey, std::vector<Face>> decompose(const FaceSet& faces, FiberGranularity granularity) {
    std::map<FiberKey, std::vector<Face>> out;
    for (Face f : faces.nonempty_faces()) out[fiber_key(f, granularity)].push_back(f);
    return out;
}

std::map<FiberKey, std::vector<Face>> decompose(int n, int k) { return decompose(enumerate_faces(n, k)); }

long euler_characteristic(const FaceSet& faces) {
    long chi = 0;
    for (int d = 0; d <= faces.max_dimension(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(faces.count_of_dimension(d));
    return chi;
}

long reduced_euler_characteristic(const FaceSet& faces) {
    return euler_characteristic(faces) - static_cast<long>(faces.count_of_dimension(-1));
}

}  // namespace vdw
