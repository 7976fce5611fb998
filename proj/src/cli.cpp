#include "vdw/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "vdw/complex.hpp"
#include "vdw/errors.hpp"
#include "vdw/gamma.hpp"
#include "vdw/homology.hpp"
#include "vdw/morse.hpp"
#include "vdw/number_theory.hpp"

namespace vdw {

namespace {

using ordered = nlohmann::ordered_json;

// Above this many (facet, subset) pairs the contractible strategy switches
// to the symbolic certificate and the strong-collapse oracle.
constexpr double kEnumerationBudget = 1 << 22;

struct Outcome {
    ordered report = ordered::object();
    int code = kExitOk;
};

std::string fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string scalar(const ordered& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void write_tsv(std::ostream& out, const std::string& key, const ordered& v) {
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) write_tsv(out, key + "." + it.key(), it.value());
    } else if (v.is_array()) {
        for (const auto& e : v) {
            out << key;
            if (e.is_array())
                for (const auto& c : e) out << '\t' << scalar(c);
            else
                out << '\t' << scalar(e);
            out << '\n';
        }
    } else {
        out << key << '\t' << scalar(v) << '\n';
    }
}

void emit(std::ostream& out, const ordered& report, bool json) {
    if (json) {
        // Round trip into the map-backed type for sorted keys.
        out << nlohmann::json::parse(report.dump()).dump(2) << '\n';
        return;
    }
    for (auto it = report.begin(); it != report.end(); ++it) write_tsv(out, it.key(), it.value());
}

ordered faces_json(const std::vector<Face>& faces) {
    ordered a = ordered::array();
    for (Face f : faces) a.push_back(to_set_string(f));
    return a;
}

std::string morse_vector_string(const MorseVector& mv) {
    int top = 0;
    for (const auto& [d, c] : mv.counts) top = std::max(top, d);
    std::string s;
    for (int i = 0; i <= top; ++i) s += (i ? "," : "") + std::to_string(mv.at(i));
    return s;
}

std::string betti_string(const BettiReport& b) {
    std::string s;
    for (const auto& [i, v] : b.betti) s += (s.empty() ? "" : ",") + std::to_string(v);
    return s;
}

bool homology_vanishes(const BettiReport& b) {
    return std::all_of(b.betti.begin(), b.betti.end(), [](const auto& kv) { return kv.second == 0; }) &&
           b.torsion_free();
}

// Does the homotopy type read off the critical cells agree with the oracle?
bool summary_matches_oracle(const std::optional<std::string>& summary, const BettiReport& b) {
    if (!summary) return true;
    const auto sig = wedge_signature(b);
    if (!sig) return false;
    if (*summary == "contractible") return *sig == std::make_pair(0, 0L);
    return *summary == "wedge of " + std::to_string(sig->second) + " spheres of dim " + std::to_string(sig->first);
}

std::string table_type(const std::optional<std::pair<int, long>>& sig) {
    if (!sig) return "-";
    if (sig->second == 0) return "contractible";
    return "(S^" + std::to_string(sig->first) + ")^v" + std::to_string(sig->second);
}

void require_nk(int n, int k) {
    if (n < 1 || k < 1) throw precondition_error("N and K must be >= 1");
    if (n > kMaxVertices) throw precondition_error("N must be <= " + std::to_string(kMaxVertices));
}

Outcome cmd_build(int n, int k, bool list_faces) {
    require_nk(n, k);
    const FaceSet fs = enumerate_faces(n, k);
    Outcome o;
    auto& r = o.report;
    r["command"] = "build";
    r["n"] = n;
    r["k"] = k;
    r["facets"] = facets(n, k).size();
    r["faces"] = fs.size();
    ordered by_dim = ordered::array();
    for (int d = -1; d <= fs.max_dimension(); ++d) by_dim.push_back(ordered::array({d, fs.count_of_dimension(d)}));
    r["faces_by_dim"] = by_dim;
    r["euler"] = euler_characteristic(fs);
    r["reduced_euler"] = reduced_euler_characteristic(fs);
    if (list_faces) r["face"] = faces_json(fs.nonempty_faces());
    return o;
}

Outcome cmd_betti(int n, int k, bool torsion) {
    require_nk(n, k);
    const FaceSet fs = enumerate_faces(n, k);
    const BettiReport b = reduced_homology(fs, {torsion});
    Outcome o;
    auto& r = o.report;
    r["command"] = "betti";
    r["n"] = n;
    r["k"] = k;
    r["torsion_computed"] = torsion;
    ordered rows = ordered::array();
    for (const auto& [i, v] : b.betti) {
        std::string t = "-";
        if (torsion) {
            t.clear();
            for (const BigInt& d : b.torsion.at(i)) t += (t.empty() ? "" : ",") + d.get_str();
            if (t.empty()) t = "none";
        }
        rows.push_back(ordered::array({i, v, t}));
    }
    r["betti"] = rows;
    r["reduced_euler"] = b.reduced_euler_characteristic();
    return o;
}

StrategyReport run_strategy(const std::string& strategy, int n, int k, int a) {
    if (strategy == "theorem-main") return build_theorem_main_matching(n, k);
    if (strategy == "contractible") return build_contractible_matching(n, k, a);
    return build_example_matching(n, k);
}

Outcome certified_contractible(int n, int k, int a) {
    const auto cert = certify_contractible_matching(n, k, a);
    std::vector<Face> maximal;
    for (const ApFacet& f : facets(n, k)) maximal.push_back(f.expand());
    const BettiReport b = reduced_homology_of_facets(maximal, {true});
    Outcome o;
    auto& r = o.report;
    r["command"] = "morse";
    r["strategy"] = "contractible";
    r["n"] = n;
    r["k"] = k;
    r["a"] = a;
    r["band"] = cert.band;
    r["mode"] = "certificate";
    r["fibers_checked"] = cert.fibers;
    r["certificate"] = cert.holds;
    if (!cert.holds) r["failure"] = cert.failure;
    r["critical"] = faces_json({Face{n}});
    r["homotopy"] = cert.holds ? "contractible" : "-";
    r["oracle_betti"] = betti_string(b);
    r["check.oracle_vanishing"] = homology_vanishes(b);
    o.code = cert.holds && homology_vanishes(b) ? kExitOk : kExitFailed;
    return o;
}

Outcome cmd_morse(int n, int k, const std::string& strategy, std::optional<int> a, const std::string& matching_file,
                  bool skip_oracle) {
    require_nk(n, k);
    if (strategy != "theorem-main" && strategy != "contractible" && strategy != "example")
        throw precondition_error("unknown strategy '" + strategy + "' (theorem-main, contractible, example)");
    if (strategy == "contractible" && !a) throw precondition_error("--a is required for the contractible strategy");
    if (strategy == "example" && !has_example_matching(n, k))
        throw precondition_error("the example strategy supports only (10,2), (15,3), (20,4), (25,5)");
    if (strategy == "contractible" && face_count_upper_bound(n, k) > kEnumerationBudget && matching_file.empty())
        return certified_contractible(n, k, *a);

    const StrategyReport s = run_strategy(strategy, n, k, a.value_or(0));
    const FaceSet fs = enumerate_faces(n, k);
    Outcome o;
    auto& r = o.report;
    r["command"] = "morse";
    r["strategy"] = s.strategy;
    r["n"] = n;
    r["k"] = k;
    if (strategy == "contractible") {
        r["a"] = s.a;
        r["band"] = s.band;
    }
    r["pairs"] = s.matching.pairs.size();
    r["critical_count"] = s.critical.size();
    r["morse_vector"] = morse_vector_string(s.morse_vector);
    r["acyclic"] = s.acyclic;
    r["homotopy"] = s.homotopy_summary.value_or("-");

    bool ok = s.acyclic;
    auto check = [&](const std::string& name, bool value) {
        r["check." + name] = value;
        ok = ok && value;
    };
    check("counting", fs.size() - 1 == 2 * s.matching.pairs.size() + s.critical.size());
    check("euler", s.morse_vector.euler_characteristic() == euler_characteristic(fs));
    if (strategy == "theorem-main") {
        int top = 0;
        for (Face f : s.critical) top = std::max(top, f.dimension());
        check("dimension_bound", top <= r_of_k(k));
    }
    if (strategy == "contractible") check("single_critical", s.critical == std::vector<Face>{Face{n}});
    if (!skip_oracle) {
        const BettiReport b = reduced_homology(fs, {true});
        r["oracle_betti"] = betti_string(b);
        check("morse_inequalities", morse_inequalities_check(s.morse_vector, b));
        check("oracle_agrees", summary_matches_oracle(s.homotopy_summary, b));
    }
    r["critical"] = faces_json(s.critical);
    if (!matching_file.empty()) {
        std::ofstream file(matching_file);
        if (!file) throw precondition_error("cannot write " + matching_file);
        write_matching(file, s.matching, s.critical);
    }
    o.code = ok ? kExitOk : kExitFailed;
    return o;
}

Outcome cmd_verify(int n, int k, const std::string& path) {
    require_nk(n, k);
    std::ifstream in(path);
    if (!in) throw precondition_error("cannot read " + path);
    const ParsedMatching parsed = read_matching(in);
    const FaceSet fs = enumerate_faces(n, k);
    MorseMatching m{n, k, parsed.pairs};
    const MatchingCheck c = check_matching(fs, m);
    Outcome o;
    auto& r = o.report;
    r["command"] = "verify";
    r["n"] = n;
    r["k"] = k;
    r["pairs"] = parsed.pairs.size();
    r["status"] = to_string(c.status);
    if (!c.ok()) {
        r["message"] = c.message;
        r["witness"] = faces_json(c.witness);
    } else {
        const auto critical = critical_cells(fs, m);
        r["critical_count"] = critical.size();
        r["critical_listed_match"] = critical == parsed.critical;
    }
    o.code = c.ok() ? kExitOk : kExitFailed;
    return o;
}

Outcome cmd_mobius(long k) {
    if (k < 1) throw precondition_error("K must be >= 1");
    const int mu = mobius(k);
    const int via = mobius_via_gamma(k);
    Outcome o;
    auto& r = o.report;
    r["command"] = "mobius";
    r["k"] = k;
    r["mobius"] = mu;
    r["via_gamma"] = via;
    r["method"] = k <= kGammaEnumerationLimit ? "enumeration" : "matching";
    r["agree"] = mu == via;
    o.code = mu == via ? kExitOk : kExitFailed;
    return o;
}

Outcome cmd_bounds(const std::vector<int>& as, const std::vector<long>& ks) {
    if (as.empty() && ks.empty()) throw precondition_error("bounds needs --a A or --k K");
    Outcome o;
    auto& r = o.report;
    r["command"] = "bounds";
    ordered arows = ordered::array();
    bool ok = true;
    for (int a : as) {
        if (a <= 1) throw precondition_error("--a must be > 1");
        const BoundCertificate c = bound_certificate(a);
        std::string fact;
        for (const auto& pp : c.factorization)
            fact += (fact.empty() ? "" : "*") + std::to_string(pp.prime) + "^" + std::to_string(pp.exponent);
        const bool consistent = c.self_consistent();
        ok = ok && consistent;
        arows.push_back(ordered::array({a, c.lcm.get_str(), fact, c.max_reduced_power.get_str(),
                                        c.threshold.get_str(), consistent}));
    }
    ordered krows = ordered::array();
    for (long k : ks) {
        if (k < 1) throw precondition_error("--k must be >= 1");
        const int rk = r_of_k(k);
        krows.push_back(ordered::array({k, rk, primorial_of_first(rk - 1).get_str(), primorial_of_first(rk).get_str(),
                                        k >= 3 ? fixed(asymptotic_ratio(k)) : std::string("-")}));
    }
    if (!as.empty()) {
        r["a_columns"] = ordered::array({"a", "L", "factorization", "M", "threshold", "consistent"});
        r["a_row"] = arows;
    }
    if (!ks.empty()) {
        r["k_columns"] = ordered::array({"k", "r", "primorial_r_minus_1", "primorial_r", "ratio"});
        r["k_row"] = krows;
    }
    o.code = ok ? kExitOk : kExitFailed;
    return o;
}

Outcome cmd_table(int max_k, bool force) {
    if (max_k < 1) throw precondition_error("--max-k must be >= 1");
    if (max_k > 8 && !force) throw precondition_error("--max-k above 8 needs --force");
    if (5 * max_k > kMaxVertices) throw precondition_error("--max-k must keep 5k <= " + std::to_string(kMaxVertices));
    Outcome o;
    auto& r = o.report;
    r["command"] = "table";
    r["columns"] = ordered::array({"k", "n", "strategy", "critical", "morse_vector", "homotopy", "oracle_betti",
                                   "oracle_type", "agree"});
    ordered rows = ordered::array();
    bool ok = true;
    for (int k = 1; k <= max_k; ++k) {
        const int n = 5 * k;
        std::vector<Face> maximal;
        for (const ApFacet& f : facets(n, k)) maximal.push_back(f.expand());
        const BettiReport b = reduced_homology_of_facets(maximal, {true});
        const auto sig = wedge_signature(b);
        std::string strategy, homotopy, mv;
        std::size_t critical = 0;
        bool row_ok = true;
        if (k == 1 || k <= 5) {
            const StrategyReport s = k == 1 ? build_theorem_main_matching(n, k) : build_example_matching(n, k);
            strategy = s.strategy;
            critical = s.critical.size();
            mv = morse_vector_string(s.morse_vector);
            homotopy = s.homotopy_summary.value_or("-");
            row_ok = s.acyclic && summary_matches_oracle(s.homotopy_summary, b) && morse_inequalities_check(s.morse_vector, b);
        } else {
            const auto a = contractible_by_theorem(n, k);
            strategy = "contractible";
            if (!a) {
                row_ok = false;
                homotopy = "-";
            } else if (face_count_upper_bound(n, k) > kEnumerationBudget) {
                const auto cert = certify_contractible_matching(n, k, *a);
                strategy += "/certificate";
                critical = 1;
                mv = "1";
                homotopy = cert.holds ? "contractible" : "-";
                row_ok = cert.holds && homology_vanishes(b);
            } else {
                const StrategyReport s = build_contractible_matching(n, k, *a);
                critical = s.critical.size();
                mv = morse_vector_string(s.morse_vector);
                homotopy = s.homotopy_summary.value_or("-");
                row_ok = s.acyclic && summary_matches_oracle(s.homotopy_summary, b);
            }
        }
        ok = ok && row_ok;
        rows.push_back(ordered::array({k, n, strategy, critical, mv, homotopy, betti_string(b), table_type(sig), row_ok}));
    }
    r["row"] = rows;
    o.code = ok ? kExitOk : kExitFailed;
    return o;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Van der Waerden complexes: construction, Morse matchings, homology", "vdw"};
    app.require_subcommand(1);
    bool json = false;
    std::string out_path;
    app.add_flag("--json", json, "JSON output with sorted keys");
    app.add_option("--out", out_path, "Write the report to FILE");

    int n = 0, k = 0;
    auto add_nk = [&](CLI::App* sub) {
        sub->add_option("N", n, "Vertex bound n")->required();
        sub->add_option("K", k, "Progression length k")->required();
    };

    bool list_faces = false, torsion = false, skip_oracle = false, force = false;
    std::string strategy, matching_file, verify_file;
    std::optional<int> a;
    long mobius_k = 0;
    int max_k = 8;
    std::vector<int> bound_as;
    std::vector<long> bound_ks;

    auto* build = app.add_subcommand("build", "Face counts of vdW(N,K)");
    add_nk(build);
    build->add_flag("--faces", list_faces, "List every non-empty face");

    auto* betti = app.add_subcommand("betti", "Reduced integer homology of vdW(N,K)");
    add_nk(betti);
    betti->add_flag("--torsion", torsion, "Also compute torsion coefficients");

    auto* morse = app.add_subcommand("morse", "Build and check a Morse matching on vdW(N,K)");
    add_nk(morse);
    morse->add_option("--strategy", strategy, "theorem-main | contractible | example")->required();
    morse->add_option("--a", a, "Witness a for the contractible strategy");
    morse->add_option("--matching", matching_file, "Write the matching to FILE");
    morse->add_flag("--skip-oracle", skip_oracle, "Skip the homology comparison");

    auto* verify = app.add_subcommand("verify", "Check a serialized matching on vdW(N,K)");
    add_nk(verify);
    verify->add_option("FILE", verify_file, "Matching file")->required();

    auto* mob = app.add_subcommand("mobius", "Compare mu(K) with the signed count over Gamma(K)");
    mob->add_option("K", mobius_k, "k >= 1")->required();

    auto* bounds = app.add_subcommand("bounds", "Contractibility certificates and r(k)");
    bounds->add_option("--a", bound_as, "a > 1 (repeatable)");
    bounds->add_option("--k", bound_ks, "k >= 1 (repeatable)");

    auto* table = app.add_subcommand("table", "Homotopy types of vdW(5k,k)");
    table->add_option("--max-k", max_k, "Largest k (default 8)");
    table->add_flag("--force", force, "Allow --max-k above 8");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    Outcome o;
    try {
        if (*build) o = cmd_build(n, k, list_faces);
        else if (*betti) o = cmd_betti(n, k, torsion);
        else if (*morse) o = cmd_morse(n, k, strategy, a, matching_file, skip_oracle);
        else if (*verify) o = cmd_verify(n, k, verify_file);
        else if (*mob) o = cmd_mobius(mobius_k);
        else if (*bounds) o = cmd_bounds(bound_as, bound_ks);
        else o = cmd_table(max_k, force);
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const precondition_error& e) {
        err << "precondition: " << e.what() << '\n';
        return kExitUsage;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const structural_error& e) {
        err << "structural error: " << e.what() << '\n';
        return kExitFailed;
    } catch (const invariant_violation& e) {
        err << "invariant violation: " << e.what() << '\n';
        return kExitFailed;
    }

    if (out_path.empty()) {
        emit(out, o.report, json);
    } else {
        std::ofstream file(out_path);
        if (!file) {
            err << "error: cannot write " << out_path << '\n';
            return kExitUsage;
        }
        emit(file, o.report, json);
    }
    return o.code;
}

}  // namespace vdw
