#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cs/type.hpp"
#include "cs/verify.hpp"

using namespace cs;

namespace {

// pinned bounds, in seconds
constexpr double scheme_seconds = 30;
constexpr double lemmas_seconds = 60;
constexpr double forcing_seconds = 300;
// least number of Trans tuples meeting the hypotheses
constexpr std::uint64_t trans_tuples = 1000;

struct outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

struct timed_report {
    suite_report rep;
    double seconds = 0;
};

timed_report run(const std::string& suite, const char* type = nullptr, std::uint64_t window = 0, level depth = -1) {
    verify_options o;
    if (type) o.type = *builtin_type(type);
    o.window = window;
    o.depth = depth;
    auto t0 = std::chrono::steady_clock::now();
    timed_report r{run_suite(suite, o), 0};
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// the named checks ran, with at least one case each, and nothing in the report failed
void expect(outcome& out, const suite_report& rep, const std::vector<std::string>& names) {
    for (const auto& n : names) {
        const auto* c = rep.find(n);
        if (!c) {
            out.fail(rep.suite + ": no check " + n);
        } else if (c->cases == 0) {
            out.fail(rep.suite + "/" + n + ": no cases");
        }
    }
    for (const auto& c : rep.checks)
        if (!c.pass())
            out.fail(rep.suite + "[" + rep.type + "]/" + c.name + ": " + std::to_string(c.failures) + " of " +
                     std::to_string(c.cases) + ", first " + c.counterexample);
}

void within(outcome& out, double seconds, double bound, const std::string& what) {
    if (seconds > bound) out.fail(what + " took " + std::to_string(seconds) + " s, bound " + std::to_string(bound) + " s");
}

std::string capture_stdout(const std::string& cmd) {
    std::string text;
    FILE* p = popen((cmd + " 2>&1").c_str(), "r");
    if (!p) return "<popen failed>";
    std::array<char, 4096> buf;
    while (auto n = std::fread(buf.data(), 1, buf.size(), p)) text.append(buf.data(), n);
    int status = pclose(p);
    return text + "\n[status " + std::to_string(status) + "]\n";
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// one full CLI transcript, including a forcing session kept under dir
std::string cli_transcript(const std::string& cli, const std::filesystem::path& dir) {
    std::filesystem::remove_all(dir);
    std::string sess = dir.string();
    std::vector<std::string> cmds{
        "scheme build --type Tstar --level 3",
        "scheme decompose --set 0,1,2,3",
        "metric osc --a 2 --b 8",
        "construct gap --alpha 2 --depth 3",
        "construct polychromatic --window 12 --format csv",
        "capture scan --family [[0],[1],[2],[3],[4],[5]] --n 2 --window 6",
        "verify countryman --window 40",
        "force init --base omega --out " + sess,
        "force demand --session " + sess + " --root w+3 --k 3",
        "force demand --session " + sess + " --contain 5",
        "force snapshot --session " + sess + " --a w+1 --k 2",
    };
    std::string all;
    for (const auto& c : cmds) all += "$ " + c + "\n" + capture_stdout("'" + cli + "' " + c);
    return all + slurp(dir / "log.jsonl");
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";
    std::vector<std::pair<std::string, std::function<outcome()>>> criteria;

    criteria.emplace_back("scheme axioms (1)-(4), T* and T2, k <= 6", [] {
        outcome out;
        for (const char* t : {"Tstar", "T2"}) {
            auto r = run("scheme", t, 0, 6);
            expect(out, r.rep, {"axiom1_cofinal", "axiom2_cardinality", "axiom3_initial_segment", "axiom4_delta_system"});
            within(out, r.seconds, scheme_seconds, std::string("scheme ") + t);
        }
        return out;
    });
    criteria.emplace_back("restriction is the unique scheme, against the independent recursion", [] {
        outcome out;
        for (const char* t : {"Tstar", "T2"})
            expect(out, run("scheme", t, 0, 6).rep,
                   {"restriction", "amalgamation_oracle", "is_member_agrees", "decompose_agrees"});
        return out;
    });
    criteria.emplace_back("ordinal metric (a)-(d) on [0,50), maximal closed round trip k <= 4", [] {
        outcome out;
        auto r = run("metric", "T2", 50);
        expect(out, r.rep,
               {"metric_a_zero_iff_equal", "metric_b_symmetric", "metric_c_triangle", "metric_d_closure_is_ball",
                "maximal_closed_round_trip"});
        const auto* rt = r.rep.find("maximal_closed_round_trip");
        if (rt && rt->cases < 5) out.fail("maximal_closed_round_trip covers fewer than k = 0..4");
        return out;
    });
    criteria.emplace_back("Delta/Xi lemmas on [0,50), k <= 6", [] {
        outcome out;
        auto r = run("lemmas", "T2", 50, 6);
        expect(out, r.rep, {"lemmaxi_a", "lemmaxi_b", "lemmaxi_c", "lemmaxidelta", "corollaryxi"});
        within(out, r.seconds, lemmas_seconds, "lemmas");
        return out;
    });
    criteria.emplace_back("Countryman order total and transitive, chains, countrymanlemma2", [] {
        outcome out;
        expect(out, run("countryman", "T2", 40).rep,
               {"total_antisymmetric", "transitive", "label_classes_are_chains", "countrymanlemma2"});
        return out;
    });
    criteria.emplace_back("Luzin-Jones, gap and coherent certificates, alpha < beta < 25", [] {
        outcome out;
        expect(out, run("luzin", "T2", 25).rep,
               {"lj_level_oracle", "lj_intersection_ge_rho", "separator_covers_below", "separator_misses_above",
                "gap_sides_disjoint", "gap_witness_2rho_plus_1", "coherent_agreement_beyond_rho"});
        return out;
    });
    criteria.emplace_back("Aronszajn antichains and rho_beta coherence, beta < 30", [] {
        outcome out;
        expect(out, run("aronszajn", "T2", 30).rep,
               {"node_is_rho_row", "coherence_beyond_rho", "label_classes_are_antichains"});
        return out;
    });
    criteria.emplace_back("capturing: tuple vs scan within m_4, 2-bounded coloring, captured triple coincidence", [] {
        outcome out;
        expect(out, run("capture").rep, {"tuple_captured_vs_scan", "tuple_captured_vs_table"});
        expect(out, run("coloring", nullptr, 40).rep,  // T2 and T*; triples need n_l >= 3
               {"polychromatic_2_bounded", "captured_triple_color_coincidence", "captured_triple_found"});
        return out;
    });
    criteria.emplace_back("lattice (a)-(d) k <= 3, full Suslin clauses k <= 2, amalgamation is a tree", [] {
        outcome out;
        expect(out, run("lattice", "T2", 0, 3).rep,
               {"a_closed_under_intersection", "b_rank_is_row_plus_one", "c_restriction_and_phi", "d_psi_embedding"});
        expect(out, run("suslin", "Tsuslin", 0, 2).rep,
               {"tree_1_parents", "tree_2_height", "tree_3_level_widths", "tree_4_two_successors",
                "b_restriction", "c_good_sets_move_up", "amalgamation_is_tree"});
        return out;
    });
    criteria.emplace_back("forcing: red/cut round trip, lemmacut, generic build to w2, Trans equivalence", [] {
        outcome out;
        auto r = run("forcing", "T2", 0, 3);
        expect(out, r.rep,
               {"cut_is_condition", "red_cut_round_trip", "is_condition_oracle", "lemmacut",
                "fragment_restriction_to_ground", "fragment_log_replay", "trans_equivalence"});
        if (const auto* t = r.rep.find("trans_equivalence"); t && t->cases < trans_tuples)
            out.fail("Trans equivalence met only " + std::to_string(t->cases) + " tuples");
        auto ih2 = run("ih2");
        expect(out, ih2.rep, {"j_value_oracle", "row_witness_oracle"});
        within(out, r.seconds + ih2.seconds, forcing_seconds, "forcing");
        return out;
    });
    criteria.emplace_back("determinism: repeated suite reports and CLI runs are byte-identical", [&cli] {
        outcome out;
        for (const auto& s : suite_names()) {
            auto a = report_to_json(run(s).rep), b = report_to_json(run(s).rep);
            if (a != b) out.fail("suite " + s + " differs between runs");
        }
        if (cli.empty()) {
            out.fail("no CLI path given");
            return out;
        }
        auto dir = std::filesystem::current_path() / "acceptance_sessions";
        auto a = cli_transcript(cli, dir / "a"), b = cli_transcript(cli, dir / "b");
        // the session directory name is the only thing allowed to differ
        auto scrub = [](std::string s, const std::string& from) {
            for (auto p = s.find(from); p != std::string::npos; p = s.find(from, p)) s.replace(p, from.size(), "SESSION");
            return s;
        };
        if (scrub(a, (dir / "a").string()) != scrub(b, (dir / "b").string())) out.fail("CLI transcripts differ");
        if (a.find("[status 0]") == std::string::npos) out.fail("CLI did not run");
        return out;
    });

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("threw: ") + e.what());
        }
        std::cout << (o.ok ? "PASS" : "FAIL") << ' ' << i + 1 << ": " << criteria[i].first;
        if (!o.ok) std::cout << " -- " << o.detail;
        std::cout << '\n';
        failed += !o.ok;
    }
    return failed ? 1 : 0;
}
