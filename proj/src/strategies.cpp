#include <algorithm>
#include <numeric>

#include "vdw/errors.hpp"
#include "vdw/morse.hpp"
#include "vdw/number_theory.hpp"

namespace vdw {

namespace {

void finish(StrategyReport& report, const FaceSet& faces) {
    const MatchingCheck check = check_matching(faces, report.matching);
    if (check.status != MatchingCheck::Status::acyclic && check.status != MatchingCheck::Status::cycle)
        throw structural_error(report.strategy + ": " + check.message);
    report.acyclic = check.ok();
    report.critical = critical_cells(faces, report.matching);
    report.morse_vector = MorseVector::of(report.critical);
    report.homotopy_summary = report.acyclic ? homotopy_summary(report.morse_vector) : std::nullopt;
}

void add_bottom(std::map<FiberKey, MorseMatching>& fibers, int n, int k) {
    MorseMatching b = bottom_matching(n, k);
    if (!b.pairs.empty()) fibers[FiberKey::bottom()] = std::move(b);
}

// Steps of the facets through {x,y}, reduced to the divisibility-minimal
// ones; the toggle offset is their lcm.
struct PairToggle {
    std::vector<int> minimal_steps;
    int offset = 0;
};

PairToggle pair_toggle(int n, int k, int x, int y) {
    const auto steps = step_set(n, k, x, y);
    PairToggle t;
    for (int d : steps) {
        const bool dominated = std::any_of(steps.begin(), steps.end(), [&](int e) { return e != d && d % e == 0; });
        if (!dominated) t.minimal_steps.push_back(d);
    }
    t.offset = 1;
    for (int d : t.minimal_steps) t.offset = std::lcm(t.offset, d);
    return t;
}

int band_of(int n, int k) { return (n + k - 1) / k - 1; }

void require_contractible_hypotheses(int n, int k, int a) {
    if (a <= 1) throw precondition_error("contractible: a must be > 1, got " + std::to_string(a));
    if (n < 1 || k < 1) throw precondition_error("contractible: n and k must be >= 1");
    const BoundCertificate cert = bound_certificate(a);
    if (!cert.k_meets_threshold(k))
        throw precondition_error("contractible: k >= L(a)/M(a) fails: k = " + std::to_string(k) +
                                 " < " + cert.threshold.get_str() + " for a = " + std::to_string(a));
    if (static_cast<long>(n) > static_cast<long>(a + 1) * k)
        throw precondition_error("contractible: n <= (a+1)k fails: n = " + std::to_string(n) + " > " +
                                 std::to_string((a + 1) * k));
    if (n != 1 && n <= k)
        throw precondition_error("contractible: n > k fails: n = " + std::to_string(n) + " <= k = " +
                                 std::to_string(k) + " leaves " + std::to_string(n) + " isolated vertices");
}

std::string pair_context(int x, int y) { return "fiber (" + std::to_string(x) + "," + std::to_string(y) + ")"; }

}  // namespace

StrategyReport build_theorem_main_matching(int n, int k) {
    const FaceSet faces = enumerate_faces(n, k);
    std::map<FiberKey, MorseMatching> fibers;
    add_bottom(fibers, n, k);
    for (const auto& [key, members] : decompose(faces, FiberGranularity::triple)) {
        if (key.is_bottom()) continue;
        const int j = (key.y - key.x) / key.d;
        MorseMatching& m = fibers[key];
        m.n = n;
        m.k = k;
        for (Face f : members) {
            const Face g = affine_preimage(f, key.d, key.x);
            const auto partner = gamma_partner(j, g);
            if (partner && g.is_subset_of(*partner)) m.pairs.push_back({f, affine_image(*partner, key.d, key.x)});
        }
    }
    StrategyReport report;
    report.strategy = "theorem-main";
    report.n = n;
    report.k = k;
    report.matching = patchwork(faces, fibers);
    finish(report, faces);
    return report;
}

StrategyReport build_contractible_matching(int n, int k, int a) {
    require_contractible_hypotheses(n, k, a);
    const FaceSet faces = enumerate_faces(n, k);
    std::map<FiberKey, MorseMatching> fibers;
    add_bottom(fibers, n, k);
    for (const auto& [key, members] : decompose(faces, FiberGranularity::pair)) {
        if (key.is_bottom()) continue;
        const PairToggle t = pair_toggle(n, k, key.x, key.y);
        if (t.offset >= key.y - key.x)
            throw invariant_violation("contractible: lcm(T) = " + std::to_string(t.offset) + " >= y - x in " +
                                      pair_context(key.x, key.y));
        const int e = key.x + t.offset;
        MorseMatching& m = fibers[key];
        m.n = n;
        m.k = k;
        for (Face f : members) {
            if (f.contains(e)) continue;
            const Face up = f.with(e);
            if (!faces.contains(up))
                throw invariant_violation("contractible: " + to_set_string(f) + " + {" + std::to_string(e) +
                                          "} is not a face in " + pair_context(key.x, key.y));
            m.pairs.push_back({f, up});
        }
    }
    StrategyReport report;
    report.strategy = "contractible";
    report.n = n;
    report.k = k;
    report.a = a;
    report.band = band_of(n, k);
    report.matching = patchwork(faces, fibers);
    finish(report, faces);
    return report;
}

ContractibilityCertificate certify_contractible_matching(int n, int k, int a) {
    require_contractible_hypotheses(n, k, a);
    if (n > kMaxVertices) throw domain_error("contractible: n exceeds " + std::to_string(kMaxVertices));
    ContractibilityCertificate c;
    c.n = n;
    c.k = k;
    c.a = a;
    c.band = band_of(n, k);
    c.holds = true;
    auto fail = [&](std::string why) {
        c.holds = false;
        c.failure = std::move(why);
        return c;
    };
    // Bottom fiber: {i} <-> {i,i+1} needs every consecutive edge.
    for (int i = 1; i < n; ++i)
        if (!is_face(Face{i, i + 1}, n, k)) return fail("edge {" + std::to_string(i) + "," + std::to_string(i + 1) + "} missing");
    for (int x = 1; x <= n; ++x)
        for (int y = x + 2; y <= n; ++y) {
            if (!is_face(Face{x, y}, n, k)) continue;
            ++c.fibers;
            const PairToggle t = pair_toggle(n, k, x, y);
            if (t.offset >= y - x) return fail("lcm(T) = " + std::to_string(t.offset) + " >= y - x in " + pair_context(x, y));
            if ((y - x) % t.offset != 0) return fail("lcm(T) does not divide y - x in " + pair_context(x, y));
            const int e = x + t.offset;
            // Every face of the fiber lies in the trace {x, x+d, ..., y} of a
            // facet of step d; the toggled element must extend each trace.
            for (int d : step_set(n, k, x, y)) {
                const Face trace = Face::progression(x, d, y);
                if (!is_face(trace.with(e), n, k))
                    return fail(to_set_string(trace) + " + {" + std::to_string(e) + "} is not a face in " + pair_context(x, y));
            }
        }
    return c;
}

bool has_example_matching(int n, int k) { return k >= 2 && k <= 5 && n == 5 * k; }

StrategyReport build_example_matching(int n, int k) {
    if (!has_example_matching(n, k))
        throw domain_error("example: no hand-built matching for vdW(" + std::to_string(n) + "," + std::to_string(k) + ")");

    // Difference max - min of a fiber -> the offset t of F <-> F xor {x+t}.
    std::map<int, int> offsets{{2, 1}, {4, 2}, {6, 3}, {8, 4}};
    if (k >= 3)
        for (int d = 1; d <= 4; ++d) offsets[3 * d] = d;
    if (k >= 4) {
        offsets[4] = 2;
        offsets[8] = 4;
        offsets[12] = 6;
        offsets[16] = 8;
    }
    if (k >= 5)
        for (int d = 1; d <= 4; ++d) offsets[5 * d] = d;

    const FaceSet faces = enumerate_faces(n, k);
    std::map<FiberKey, MorseMatching> fibers;
    add_bottom(fibers, n, k);
    for (const auto& [key, members] : decompose(faces, FiberGranularity::pair)) {
        if (key.is_bottom()) continue;
        const int x = key.x;
        const int diff = key.y - key.x;
        auto it = offsets.find(diff);
        if (it == offsets.end()) continue;
        MorseMatching& m = fibers[key];
        m.n = n;
        m.k = k;
        const int e = x + it->second;
        for (Face f : members) {
            const Face partner = f.toggled(e);
            if (faces.contains(partner)) {
                if (!f.contains(e)) m.pairs.push_back({f, partner});
            } else if (k >= 4 && diff == 12 && f == Face{x, x + 8, x + 12}) {
                m.pairs.push_back({f, Face{x, x + 4, x + 8, x + 12}});
            }
        }
    }
    StrategyReport report;
    report.strategy = "example";
    report.n = n;
    report.k = k;
    report.matching = patchwork(faces, fibers);
    finish(report, faces);
    return report;
}

}  // namespace vdw
