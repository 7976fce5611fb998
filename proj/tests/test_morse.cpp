#include <doctest.h>

#include <set>
#include <sstream>

#include "vdw/errors.hpp"
#include "vdw/morse.hpp"
#include "vdw/number_theory.hpp"

using namespace vdw;

namespace {

MorseMatching matching_of(int n, int k, std::vector<MatchedPair> pairs) { return {n, k, std::move(pairs)}; }

std::set<Face> as_set(const std::vector<Face>& v) { return {v.begin(), v.end()}; }

void check_report(const StrategyReport& s, const FaceSet& fs) {
    CHECK(s.acyclic);
    CHECK(fs.size() - 1 == 2 * s.matching.pairs.size() + s.critical.size());
    CHECK(s.morse_vector.euler_characteristic() == euler_characteristic(fs));
    CHECK(morse_inequalities_check(s.morse_vector, reduced_homology(fs)));
    CHECK(std::is_sorted(s.critical.begin(), s.critical.end(), GradedLess{}));
}

}  // namespace

TEST_CASE("verifier on hand-made matchings") {
    const FaceSet fs = enumerate_faces(6, 2);
    CHECK(verify_matching(fs, matching_of(6, 2, {})));
    CHECK(verify_matching(fs, matching_of(6, 2, {{Face{1}, Face{1, 2}}, {Face{2}, Face{2, 3}}})));

    // A face in two pairs.
    const auto dup = matching_of(6, 2, {{Face{1}, Face{1, 2}}, {Face{2}, Face{1, 2}}});
    CHECK(check_matching(fs, dup).status == MatchingCheck::Status::duplicate_face);
    CHECK_THROWS_AS(verify_matching(fs, dup), structural_error);

    const auto skip = matching_of(6, 2, {{Face{1}, Face{1, 2, 3}}});
    CHECK(check_matching(fs, skip).status == MatchingCheck::Status::non_cover);
    CHECK_THROWS_AS(verify_matching(fs, skip), structural_error);

    const auto outside = matching_of(6, 2, {{Face{1}, Face{1, 6}}});
    CHECK(check_matching(fs, outside).status == MatchingCheck::Status::face_not_in_complex);
    CHECK_THROWS_AS(verify_matching(fs, outside), domain_error);

    const auto empty = matching_of(6, 2, {{Face{}, Face{1}}});
    CHECK(check_matching(fs, empty).status == MatchingCheck::Status::empty_face);
    CHECK_THROWS_AS(verify_matching(fs, empty), structural_error);

    // Around the boundary of the triangle {1,2,3}, across three fibers.
    const auto cyclic = matching_of(6, 2, {{Face{1}, Face{1, 2}}, {Face{2}, Face{2, 3}}, {Face{3}, Face{1, 3}}});
    const MatchingCheck c = check_matching(fs, cyclic);
    CHECK(c.status == MatchingCheck::Status::cycle);
    CHECK_FALSE(verify_matching(fs, cyclic));
    REQUIRE(c.witness.size() == 7);
    CHECK(c.witness.front() == c.witness.back());
    for (std::size_t i = 0; i + 1 < c.witness.size(); ++i)
        CHECK(std::popcount(c.witness[i].bits() ^ c.witness[i + 1].bits()) == 1);
}

TEST_CASE("critical cells") {
    const FaceSet k5 = enumerate_faces(5, 1);
    CHECK(critical_cells(k5, matching_of(5, 1, {})).size() == 15);
    const auto crit = critical_cells(k5, bottom_matching(5, 1));
    CHECK(crit.size() == 7);
    CHECK(crit.front() == Face{5});
}

TEST_CASE("Morse vectors, inequalities and summaries") {
    const MorseVector mv = MorseVector::of({Face{7}, Face{1, 4}, Face{2, 5}});
    CHECK(mv.at(0) == 1);
    CHECK(mv.at(1) == 2);
    CHECK(mv.total() == 3);
    CHECK(mv.euler_characteristic() == -1);
    CHECK(homotopy_summary(mv) == "wedge of 2 spheres of dim 1");
    CHECK(homotopy_summary(MorseVector::of({Face{3}})) == "contractible");
    CHECK_FALSE(homotopy_summary(MorseVector::of({Face{3}, Face{4}})).has_value());
    CHECK_FALSE(homotopy_summary(MorseVector::of({Face{3}, Face{1, 2}, Face{1, 2, 3}})).has_value());

    BettiReport b;
    b.betti = {{0, 0}, {1, 2}};
    CHECK(morse_inequalities_check(mv, b));
    b.betti = {{0, 0}, {1, 3}};
    CHECK_FALSE(morse_inequalities_check(mv, b));
    BettiReport zero;
    zero.betti = {{0, 0}, {1, 0}, {2, 0}};
    CHECK(morse_inequalities_check(MorseVector::of({Face{5}}), zero));
    CHECK_FALSE(morse_inequalities_check(MorseVector::of({Face{5}, Face{1, 2}}), zero));
}

TEST_CASE("patchwork") {
    const FaceSet fs = enumerate_faces(7, 2);
    CHECK(patchwork(fs, {}).pairs.empty());

    // Gamma(6) sits in the fiber (1,7,1) of vdW(7,1); its matching embeds.
    const FaceSet k1 = enumerate_faces(7, 6);
    const GammaMatching g = match_gamma(6);
    MorseMatching embedded{7, 6, {}};
    for (const auto& [lo, up] : g.pairs) embedded.pairs.push_back({affine_image(lo, 1, 1), affine_image(up, 1, 1)});
    const auto m = patchwork(k1, {{FiberKey::triple(1, 7, 1), embedded}});
    CHECK(verify_matching(k1, m));

    MorseMatching crossing{7, 2, {{Face{1, 3}, Face{1, 3, 5}}}};
    CHECK_THROWS_AS(patchwork(fs, {{FiberKey::triple(1, 3, 2), crossing}}), structural_error);
    MorseMatching twice{7, 2, {{Face{1}, Face{1, 2}}}};
    CHECK_THROWS_AS(patchwork(fs, {{FiberKey::bottom(), twice}, {FiberKey::triple(1, 3, 2), twice}}),
                    structural_error);
}

TEST_CASE("theorem-main strategy") {
    const FaceSet fs102 = enumerate_faces(10, 2);
    const StrategyReport s102 = build_theorem_main_matching(10, 2);
    check_report(s102, fs102);
    for (Face f : s102.critical) CHECK(f.dimension() <= 2);

    const StrategyReport s73 = build_theorem_main_matching(7, 3);
    CHECK(std::find(s73.critical.begin(), s73.critical.end(), Face{7}) != s73.critical.end());

    // k = 1 runs through the same pipeline: wedge of (n-1 choose 2) circles.
    for (int n = 2; n <= 9; ++n) {
        const StrategyReport s = build_theorem_main_matching(n, 1);
        CHECK(s.acyclic);
        CHECK(s.morse_vector.at(0) == 1);
        CHECK(s.morse_vector.at(1) == (n - 1) * (n - 2) / 2);
    }

    for (int k = 2; k <= 6; ++k)
        for (int n = 1; n <= 20; ++n) {
            const StrategyReport s = build_theorem_main_matching(n, k);
            const FaceSet fs = enumerate_faces(n, k);
            check_report(s, fs);
            // {n} plus one cell per fiber (x,y,d) with squarefree (y-x)/d.
            std::size_t expected = 1 + (n <= k ? n - 1 : 0);
            for (const auto& [key, members] : decompose(fs))
                if (!key.is_bottom() && is_squarefree((key.y - key.x) / key.d)) ++expected;
            CHECK(s.critical.size() == expected);
            for (Face f : s.critical) CHECK(f.dimension() <= r_of_k(k));
        }
}

TEST_CASE("example strategies") {
    const StrategyReport s102 = build_example_matching(10, 2);
    CHECK(s102.homotopy_summary == "wedge of 7 spheres of dim 1");
    CHECK(s102.critical.size() == 8);

    const StrategyReport s153 = build_example_matching(15, 3);
    std::vector<Face> expected{Face{15}};
    for (int x = 1; x <= 9; ++x) expected.push_back(Face{x, x + 3, x + 6});
    CHECK(as_set(s153.critical) == as_set(expected));
    CHECK(s153.homotopy_summary == "wedge of 9 spheres of dim 2");

    CHECK(build_example_matching(20, 4).morse_vector.at(2) == 22);
    CHECK(build_example_matching(25, 5).morse_vector.at(2) == 32);
    for (int k = 2; k <= 5; ++k) check_report(build_example_matching(5 * k, k), enumerate_faces(5 * k, k));

    CHECK_THROWS_AS(build_example_matching(12, 3), domain_error);
    CHECK_THROWS_AS(build_example_matching(5, 1), domain_error);
    CHECK(has_example_matching(20, 4));
    CHECK_FALSE(has_example_matching(30, 6));
}

TEST_CASE("contractible strategy") {
    const StrategyReport s = build_contractible_matching(30, 6, 4);
    CHECK(s.critical == std::vector<Face>{Face{30}});
    CHECK(s.homotopy_summary == "contractible");
    CHECK(s.band == 4);

    for (int a : {2, 3, 4}) {
        const int threshold = static_cast<int>(bound_certificate(a).threshold.get_num().get_si());
        for (int k = threshold; k <= 9; ++k)
            for (int n = k + 1; n <= std::min((a + 1) * k, 24); ++n) {
                const StrategyReport c = build_contractible_matching(n, k, a);
                CHECK(c.acyclic);
                CHECK(c.critical == std::vector<Face>{Face{n}});
                CHECK(c.band * k < n);
                CHECK(n <= (c.band + 1) * k);
                const auto cert = certify_contractible_matching(n, k, a);
                CHECK(cert.holds);
            }
    }
    CHECK(build_contractible_matching(1, 3, 2).critical == std::vector<Face>{Face{1}});

    CHECK_THROWS_AS(build_contractible_matching(30, 5, 4), precondition_error);
    CHECK_THROWS_AS(build_contractible_matching(31, 6, 4), precondition_error);
    CHECK_THROWS_AS(build_contractible_matching(4, 6, 2), precondition_error);
    CHECK_THROWS_AS(build_contractible_matching(10, 4, 1), precondition_error);
    CHECK_THROWS_AS(certify_contractible_matching(25, 5, 4), precondition_error);

    const auto big = certify_contractible_matching(36, 35, 2);
    CHECK(big.holds);
    CHECK(big.band == 1);
}

TEST_CASE("serialization round trip") {
    const StrategyReport s = build_example_matching(15, 3);
    std::ostringstream out;
    write_matching(out, s.matching, s.critical);
    std::istringstream in(out.str());
    const ParsedMatching parsed = read_matching(in);
    CHECK(parsed.pairs == s.matching.pairs);
    CHECK(parsed.critical == s.critical);
    std::ostringstream again;
    write_matching(again, MorseMatching{15, 3, parsed.pairs}, parsed.critical);
    CHECK(again.str() == out.str());
    CHECK(out.str().find("1\t1,2\n") == 0);
}

TEST_CASE("serialization errors carry line numbers") {
    auto error_line = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            read_matching(in);
        } catch (const parse_error& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(error_line("1\t1,2\n2\t2;3\n") == 2);
    CHECK(error_line("1\t1,2\n\n1,2\n") == 3);
    CHECK(error_line("1\t1,2\t1,2,3\n") == 1);
    CHECK(error_line("# critical\n1\t1,2\n") == 2);
    CHECK(error_line("1\t1,2\n# critical\n5\n") == 0);
    std::istringstream empty_lower("\t1\n");
    CHECK(read_matching(empty_lower).pairs.front().lower.empty());
}
