#include "vdw/morse.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "vdw/errors.hpp"
#include "vdw/number_theory.hpp"

namespace vdw {

namespace {

std::uint64_t vertex_mask(int lo, int hi) {
    if (hi < lo) return 0;
    const std::uint64_t upto_hi = hi >= 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << (hi + 1)) - 1;
    return upto_hi & ~((std::uint64_t{1} << lo) - 1);
}

MatchingCheck fail(MatchingCheck::Status status, std::string message, std::vector<Face> witness) {
    return {status, std::move(message), std::move(witness)};
}

// Iterative depth-first search for a directed cycle.  Nodes are 0..count-1;
// `neighbours(i, push)` calls push(j) for every edge i -> j.  Returns the
// node sequence of a cycle, first node repeated at the end, or empty.
template <class Neighbours>
std::vector<std::size_t> find_cycle(std::size_t count, Neighbours&& neighbours,
                                    const std::vector<bool>* active = nullptr) {
    enum : unsigned char { white, grey, black };
    std::vector<unsigned char> colour(count, white);
    struct Frame {
        std::size_t node;
        std::vector<std::size_t> next;
        std::size_t pos;
    };
    std::vector<Frame> stack;
    for (std::size_t root = 0; root < count; ++root) {
        if (colour[root] != white || (active != nullptr && !(*active)[root])) continue;
        auto open = [&](std::size_t node) {
            colour[node] = grey;
            Frame f{node, {}, 0};
            neighbours(node, [&](std::size_t j) { f.next.push_back(j); });
            stack.push_back(std::move(f));
        };
        open(root);
        while (!stack.empty()) {
            Frame& top = stack.back();
            if (top.pos == top.next.size()) {
                colour[top.node] = black;
                stack.pop_back();
                continue;
            }
            const std::size_t j = top.next[top.pos++];
            if (colour[j] == grey) {
                std::vector<std::size_t> cycle;
                auto it = std::find_if(stack.begin(), stack.end(), [&](const Frame& f) { return f.node == j; });
                for (; it != stack.end(); ++it) cycle.push_back(it->node);
                cycle.push_back(j);
                return cycle;
            }
            if (colour[j] == white) open(j);
        }
    }
    return {};
}

// Shared checks for a list of pairs inside a family given by `member`, with
// up-covers taken inside the vertex set `ground`.
template <class Member>
MatchingCheck check_pairs(const std::vector<MatchedPair>& pairs, Member&& member, std::uint64_t ground,
                          const std::string& family) {
    for (const auto& [lower, upper] : pairs)
        for (Face f : {lower, upper})
            if (!f.empty() && !member(f))
                return fail(MatchingCheck::Status::face_not_in_complex,
                            "face " + to_set_string(f) + " is not in " + family, {f});
    for (const auto& [lower, upper] : pairs)
        if (lower.empty())
            return fail(MatchingCheck::Status::empty_face, "the empty face is matched with " + to_set_string(upper),
                        {lower, upper});
    for (const auto& [lower, upper] : pairs)
        if (!lower.is_subset_of(upper) || upper.size() != lower.size() + 1)
            return fail(MatchingCheck::Status::non_cover,
                        "pair " + to_set_string(lower) + " / " + to_set_string(upper) + " is not a cover", {lower, upper});

    std::unordered_map<Face, std::size_t> by_upper;
    std::unordered_set<Face> used;
    by_upper.reserve(pairs.size());
    used.reserve(2 * pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (Face f : {pairs[i].lower, pairs[i].upper})
            if (!used.insert(f).second)
                return fail(MatchingCheck::Status::duplicate_face, "duplicate face " + to_set_string(f), {f});
        by_upper.emplace(pairs[i].upper, i);
    }

    // Pair i points to pair j when upper(j) covers lower(i) and differs from
    // upper(i); a cycle of these is exactly a closed alternating path.
    auto neighbours = [&](std::size_t i, auto&& push) {
        const Face lower = pairs[i].lower;
        for (std::uint64_t free = ground & ~lower.bits(); free != 0; free &= free - 1) {
            const Face up = lower.with(std::countr_zero(free));
            if (up == pairs[i].upper) continue;
            auto it = by_upper.find(up);
            if (it != by_upper.end()) push(it->second);
        }
    };
    const auto cycle = find_cycle(pairs.size(), neighbours);
    if (cycle.empty()) return {};
    std::vector<Face> witness;
    for (std::size_t t = 0; t + 1 < cycle.size(); ++t) {
        witness.push_back(pairs[cycle[t]].upper);
        witness.push_back(pairs[cycle[t]].lower);
    }
    witness.push_back(pairs[cycle.front()].upper);
    std::string message = "cycle:";
    for (Face f : witness) message += " " + to_set_string(f);
    return fail(MatchingCheck::Status::cycle, message, witness);
}

std::vector<MatchedPair> sorted_pairs(std::vector<MatchedPair> pairs) {
    std::sort(pairs.begin(), pairs.end(),
              [](const MatchedPair& a, const MatchedPair& b) { return GradedLess{}(a.lower, b.lower); });
    return pairs;
}

}  // namespace

long MorseVector::at(int dim) const {
    auto it = counts.find(dim);
    return it == counts.end() ? 0 : it->second;
}

long MorseVector::total() const {
    long t = 0;
    for (const auto& [d, c] : counts) t += c;
    return t;
}

long MorseVector::euler_characteristic() const {
    long chi = 0;
    for (const auto& [d, c] : counts) chi += (d % 2 == 0 ? 1 : -1) * c;
    return chi;
}

MorseVector MorseVector::of(const std::vector<Face>& critical) {
    MorseVector v;
    for (Face f : critical) ++v.counts[f.dimension()];
    return v;
}

std::string to_string(MatchingCheck::Status status) {
    switch (status) {
        case MatchingCheck::Status::acyclic: return "acyclic";
        case MatchingCheck::Status::face_not_in_complex: return "face not in complex";
        case MatchingCheck::Status::empty_face: return "empty face";
        case MatchingCheck::Status::non_cover: return "non-cover pair";
        case MatchingCheck::Status::duplicate_face: return "duplicate face";
        case MatchingCheck::Status::cycle: return "cycle";
    }
    return "unknown";
}

MatchingCheck check_matching(const FaceSet& faces, const MorseMatching& matching) {
    return check_pairs(matching.pairs, [&](Face f) { return faces.contains(f); }, vertex_mask(1, faces.n()),
                       "the complex");
}

MatchingCheck check_matching(const GammaMatching& matching) {
    std::vector<MatchedPair> pairs;
    pairs.reserve(matching.pairs.size());
    for (const auto& [lower, upper] : matching.pairs) pairs.push_back({lower, upper});
    const int k = matching.k;
    return check_pairs(pairs, [&](Face f) { return is_gamma_member(k, f); }, vertex_mask(0, k),
                       "Gamma(" + std::to_string(k) + ")");
}

bool verify_matching(const FaceSet& faces, const MorseMatching& matching) {
    const MatchingCheck c = check_matching(faces, matching);
    switch (c.status) {
        case MatchingCheck::Status::acyclic: return true;
        case MatchingCheck::Status::cycle: return false;
        case MatchingCheck::Status::face_not_in_complex: throw domain_error(c.message);
        default: throw structural_error(c.message);
    }
}

std::vector<Face> critical_cells(const FaceSet& faces, const MorseMatching& matching) {
    std::unordered_set<Face> matched;
    matched.reserve(2 * matching.pairs.size());
    for (const auto& [lower, upper] : matching.pairs) {
        matched.insert(lower);
        matched.insert(upper);
    }
    std::vector<Face> out;
    for (Face f : faces.nonempty_faces())
        if (!matched.count(f)) out.push_back(f);
    return out;
}

MorseMatching patchwork(const FaceSet& faces, const std::map<FiberKey, MorseMatching>& fiber_matchings) {
    MorseMatching out;
    out.n = faces.n();
    out.k = faces.k();
    std::unordered_set<Face> used;
    for (const auto& [key, m] : fiber_matchings) {
        const auto granularity = key.kind == FiberKey::Kind::pair ? FiberGranularity::pair : FiberGranularity::triple;
        for (const auto& pair : m.pairs) {
            for (Face f : {pair.lower, pair.upper}) {
                if (f.empty() || !faces.contains(f))
                    throw structural_error("patchwork: " + to_set_string(f) + " is not a non-empty face");
                const FiberKey actual = fiber_key(f, granularity);
                // Bottom keys are shared by both granularities.
                if (!(actual == key || (actual.is_bottom() && key.is_bottom())))
                    throw structural_error("patchwork: " + to_set_string(f) + " lies in fiber " + to_string(actual) +
                                           ", not " + to_string(key));
                if (!used.insert(f).second)
                    throw structural_error("patchwork: " + to_set_string(f) + " is matched twice");
            }
            out.pairs.push_back(pair);
        }
    }
    out.pairs = sorted_pairs(std::move(out.pairs));
    return out;
}

MorseMatching bottom_matching(int n, int k) {
    MorseMatching m;
    m.n = n;
    m.k = k;
    for (int i = 1; i < n; ++i)
        if (is_face(Face{i, i + 1}, n, k)) m.pairs.push_back({Face{i}, Face{i, i + 1}});
    return m;
}

bool morse_inequalities_check(const MorseVector& vector, const BettiReport& betti) {
    int top = 0;
    for (const auto& [d, c] : vector.counts) top = std::max(top, d);
    for (const auto& [d, b] : betti.betti) top = std::max(top, d);
    long lhs = 0, rhs = 0;
    for (int i = 0; i <= top; ++i) {
        const long b = betti.betti_at(i) + (i == 0 ? 1 : 0);
        const long c = vector.at(i);
        if (b > c) return false;
        const long sign = i % 2 == 0 ? 1 : -1;
        lhs += sign * c;
        rhs += sign * b;
    }
    for (const auto& [d, c] : vector.counts)
        if (d < 0 && c != 0) return false;
    return lhs == rhs;
}

std::optional<std::string> homotopy_summary(const MorseVector& vector) {
    if (vector.at(0) != 1) return std::nullopt;
    std::optional<std::pair<int, long>> cells;
    for (const auto& [d, c] : vector.counts) {
        if (d == 0 || c == 0) continue;
        if (cells || d < 0) return std::nullopt;
        cells = std::make_pair(d, c);
    }
    if (!cells) return "contractible";
    return "wedge of " + std::to_string(cells->second) + " spheres of dim " + std::to_string(cells->first);
}

GammaOrbitCheck check_gamma_matching_by_orbits(int k, PrimeChoice choice) {
    if (k < 1 || k > kMaxElement)
        throw domain_error("check_gamma_matching_by_orbits: k must lie in 1.." + std::to_string(kMaxElement));
    GammaOrbitCheck out;
    out.k = k;

    const auto toggles = gamma_toggle_elements(k);
    std::vector<int> primes;
    for (const auto& pp : factorize(k)) primes.push_back(static_cast<int>(pp.prime));

    // Classes of interior elements that are not toggled, by prime type.
    std::vector<int> special;
    for (int t : toggles)
        if (t > 0 && t < k) special.push_back(t);
    std::map<unsigned, std::vector<int>> by_type;
    std::vector<int> class_of(static_cast<std::size_t>(k + 1), -1);
    for (int e = 1; e < k; ++e) {
        if (std::find(special.begin(), special.end(), e) != special.end()) continue;
        unsigned type = 0;
        for (std::size_t i = 0; i < primes.size(); ++i)
            if (e % primes[i] == 0) type |= 1u << i;
        by_type[type].push_back(e);
    }
    std::vector<std::vector<int>> classes;
    for (auto& [type, members] : by_type) {
        for (int e : members) class_of[static_cast<std::size_t>(e)] = static_cast<int>(classes.size());
        classes.push_back(members);
    }
    std::vector<int> special_index(static_cast<std::size_t>(k + 1), -1);
    for (std::size_t i = 0; i < special.size(); ++i) special_index[static_cast<std::size_t>(special[i])] = static_cast<int>(i);

    // Node = (subset of special elements, count taken from each class).
    std::vector<std::uint64_t> radix;
    std::uint64_t total = std::uint64_t{1} << special.size();
    for (const auto& c : classes) {
        radix.push_back(c.size() + 1);
        total *= c.size() + 1;
    }
    out.orbits = total;
    const std::uint64_t special_span = std::uint64_t{1} << special.size();

    auto decode = [&](std::uint64_t node, std::vector<std::uint64_t>& counts) {
        Face f{0, k};
        const std::uint64_t s = node % special_span;
        for (std::size_t i = 0; i < special.size(); ++i)
            if ((s >> i) & 1) f = f.with(special[i]);
        std::uint64_t rest = node / special_span;
        counts.assign(classes.size(), 0);
        for (std::size_t c = 0; c < classes.size(); ++c) {
            counts[c] = rest % radix[c];
            rest /= radix[c];
            for (std::uint64_t j = 0; j < counts[c]; ++j) f = f.with(classes[c][j]);
        }
        return f;
    };
    auto encode = [&](Face f) {
        std::uint64_t s = 0;
        std::vector<std::uint64_t> counts(classes.size(), 0);
        f.for_each([&](int e) {
            if (e == 0 || e == k) return;
            const auto ui = static_cast<std::size_t>(e);
            if (special_index[ui] >= 0)
                s |= std::uint64_t{1} << special_index[ui];
            else
                ++counts[static_cast<std::size_t>(class_of[ui])];
        });
        std::uint64_t node = 0;
        for (std::size_t c = classes.size(); c-- > 0;) node = node * radix[c] + counts[c];
        return node * special_span + s;
    };
    auto binomial = [](std::uint64_t n, std::uint64_t r) {
        BigInt b;
        mpz_bin_uiui(b.get_mpz_t(), n, r);
        return static_cast<std::uint64_t>(b.get_ui());
    };

    std::vector<bool> lower(total, false);
    std::vector<std::uint64_t> counts;
    for (std::uint64_t node = 0; node < total; ++node) {
        const Face f = decode(node, counts);
        if (!is_gamma_member(k, f)) continue;
        std::uint64_t weight = 1;
        for (std::size_t c = 0; c < classes.size(); ++c) weight *= binomial(classes[c].size(), counts[c]);
        out.members += weight;
        const auto partner = gamma_partner(k, f, choice);
        if (!partner) {
            out.critical += weight;
            out.critical_cell = f;
            continue;
        }
        if (!is_gamma_member(k, *partner)) {
            out.check = fail(MatchingCheck::Status::face_not_in_complex,
                             "partner " + to_set_string(*partner) + " of " + to_set_string(f) + " is not in Gamma", {f, *partner});
            return out;
        }
        if (std::popcount(f.bits() ^ partner->bits()) != 1) {
            out.check = fail(MatchingCheck::Status::non_cover,
                             "pair " + to_set_string(f) + " / " + to_set_string(*partner) + " is not a cover", {f, *partner});
            return out;
        }
        if (gamma_partner(k, *partner, choice) != f) {
            out.check = fail(MatchingCheck::Status::duplicate_face,
                             "duplicate face " + to_set_string(*partner) + ": the matching is not an involution", {*partner});
            return out;
        }
        if (f.is_subset_of(*partner)) lower[node] = true;
    }

    auto neighbours = [&](std::size_t node, auto&& push) {
        std::vector<std::uint64_t> cnt;
        const Face f = decode(node, cnt);
        const Face up = *gamma_partner(k, f, choice);
        auto visit = [&](int v) {
            const Face u = f.with(v);
            if (u == up) return;
            const auto q = gamma_partner(k, u, choice);
            if (q && q->is_subset_of(u)) push(static_cast<std::size_t>(encode(*q)));
        };
        for (std::size_t i = 0; i < special.size(); ++i)
            if (!f.contains(special[i])) visit(special[i]);
        for (std::size_t c = 0; c < classes.size(); ++c)
            if (cnt[c] < classes[c].size()) visit(classes[c][cnt[c]]);
    };
    const auto cycle = find_cycle(static_cast<std::size_t>(total), neighbours, &lower);
    if (!cycle.empty()) {
        std::vector<Face> witness;
        std::vector<std::uint64_t> cnt;
        for (std::size_t t = 0; t + 1 < cycle.size(); ++t) {
            const Face l = decode(cycle[t], cnt);
            witness.push_back(*gamma_partner(k, l, choice));
            witness.push_back(l);
        }
        witness.push_back(witness.front());
        std::string message = "cycle:";
        for (Face f : witness) message += " " + to_set_string(f);
        out.check = fail(MatchingCheck::Status::cycle, message, witness);
    }
    return out;
}

}  // namespace vdw
