#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cs/capture.hpp"
#include "cs/constructions.hpp"
#include "cs/error.hpp"
#include "cs/forcing.hpp"
#include "cs/ih2.hpp"
#include "cs/io.hpp"
#include "cs/metrics.hpp"
#include "cs/scheme.hpp"
#include "cs/verify.hpp"

namespace fs = std::filesystem;
using namespace cs;

namespace {

// CS_BUDGET overrides every materialization budget
std::uint64_t budget_or(std::uint64_t fallback) {
    const char* env = std::getenv("CS_BUDGET");
    if (!env || !*env) return fallback;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end || v == 0) fail(errc::invalid_argument, std::string("CS_BUDGET must be a positive integer, got '") + env + "'");
    return v;
}

ordinal ord_arg(const std::string& s, const char* what) {
    auto a = parse_ordinal(s);
    if (!a) fail(errc::invalid_argument, std::string("--") + what + ": '" + s + "' is not an ordinal");
    return *a;
}

json point_json(const coded_point& p) { return json(p); }

json truncated_json(const truncated_set& s) {
    json pts = json::array();
    for (const auto& p : s.elements) pts.push_back(point_json(p));
    return json{{"K", s.K}, {"points", pts}};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::invalid_argument, "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json_arg(const std::string& text, const char* what) {
    std::string body = !text.empty() && (text[0] == '[' || text[0] == '{') ? text : slurp(text);
    try {
        return json::parse(body);
    } catch (const json::exception& e) {
        fail(errc::invalid_argument, std::string(what) + ": " + e.what());
    }
}

void print(const json& j) { std::cout << j.dump() << '\n'; }

struct common {
    std::string type;
    std::string format = "json";

    type_spec load(const char* fallback) const { return load_type(type.empty() ? fallback : type); }
    void formats(std::initializer_list<const char*> ok) const {
        for (const char* f : ok)
            if (format == f) return;
        fail(errc::invalid_argument, "format '" + format + "' is not available here");
    }
};

// ---- scheme

struct scheme_args {
    level k = 2;
    std::string set;
    std::uint64_t window = 0;
};

void cmd_scheme(const std::string& sub, const common& c, const scheme_args& a) {
    type_spec t = c.load("Tstar");
    scheme_view v(t, budget_or(default_set_budget));
    if (sub == "build") {
        c.formats({"json", "dot"});
        const auto& tab = v.finite_scheme(a.k);
        if (c.format == "dot")
            std::cout << level_to_dot(tab);
        else
            std::cout << level_to_json(tab, t.m(a.k)) << '\n';
    } else if (sub == "member") {
        print(v.is_member(parse_set_list(a.set)));
    } else if (sub == "decompose") {
        auto f = parse_set_list(a.set);
        auto d = v.decompose(f);
        json pieces = json::array();
        for (const auto& p : d.pieces) pieces.push_back(set_to_json(p));
        print(json{{"rank", v.rank_of(f)}, {"pieces", pieces}, {"root", set_to_json(d.root)}});
    } else if (sub == "list") {
        std::uint64_t n = a.window ? a.window : t.m(a.k);
        json out = json::array();
        v.for_each_of_rank_within(a.k, n, [&](const ord_set& f) { out.push_back(set_to_json(f)); });
        print(out);
    }
}

// ---- metric

struct metric_args {
    std::string a = "0", b = "1";
    level k = 0;
};

void cmd_metric(const std::string& sub, const common& c, const metric_args& m) {
    type_spec t = c.load("Tstar");
    scheme_view v(t, budget_or(default_set_budget));
    ordinal a = ord_arg(m.a, "a");
    if (sub == "closure") {
        print(set_to_json(v.closure(a, m.k)));
    } else if (sub == "xi") {
        print(xi(v, a, m.k));
    } else if (sub == "f") {
        print(f_value(v, a, m.k));
    } else {
        ordinal b = ord_arg(m.b, "b");
        if (sub == "rho") {
            print(rho(v, a, b));
        } else if (sub == "delta") {
            auto d = delta(v, a, b);
            print(d.infinite ? json("omega") : json(d.k));
        } else if (sub == "osc") {
            auto o = osc(v, a, b, m.k);
            print(json{{"count", o.count}, {"witnesses", o.witnesses}});
        }
    }
}

// ---- capture

struct capture_args {
    std::string family;
    std::size_t n = 2;
    std::uint64_t window = 16;
    level k_min = -1;
};

void cmd_capture(const common& c, const capture_args& a) {
    type_spec t = c.load("T2");
    scheme_view v(t, budget_or(default_set_budget));
    capture_query q;
    for (const auto& s : parse_json_arg(a.family, "--family")) q.family.push_back(set_from_json(s));
    q.n = a.n;
    q.window = a.window;
    q.k_min = a.k_min;
    json out = json::array();
    for (const auto& h : scan_captured(v, q))
        out.push_back(json{{"l", h.l}, {"f", set_to_json(h.f)}, {"indices", h.indices}});
    print(out);
}

// ---- construct

struct construct_args {
    std::string name;
    std::string alpha = "0", beta = "1";
    level depth = 3;
    std::uint64_t window = 10;
    std::uint64_t length = 8;
};

using coloring = std::function<std::uint64_t(const universe&, ordinal, ordinal)>;

void print_coloring(const common& c, const universe& u, std::uint64_t n, const coloring& fn) {
    c.formats({"json", "csv"});
    if (c.format == "csv") {
        std::cout << "alpha,beta,color\n";
        for (ordinal a = 0; a < n; ++a)
            for (ordinal b = a + 1; b < n; ++b) std::cout << a << ',' << b << ',' << fn(u, a, b) << '\n';
        return;
    }
    json rows = json::array();
    for (ordinal a = 0; a < n; ++a)
        for (ordinal b = a + 1; b < n; ++b) rows.push_back(json::array({a, b, fn(u, a, b)}));
    print(rows);
}

void print_tree(const common& c, const suslin_tree& tr) {
    c.formats({"json", "dot"});
    if (c.format == "dot") {
        std::cout << "digraph suslin {\n";
        for (std::uint64_t l = 0; l < tr.height; ++l)
            for (std::uint64_t s = 0; s < tr.width(l); ++s) {
                auto id = tr.id(l, s);
                std::cout << "  n" << id << " [label=\"" << l << ',' << s << "\"];\n";
                if (tr.parent[id] >= 0) std::cout << "  n" << tr.parent[id] << " -> n" << id << ";\n";
            }
        std::cout << "}\n";
        return;
    }
    print(json{{"k", tr.k}, {"height", tr.height}, {"level_begin", tr.level_begin}, {"parent", tr.parent}});
}

void cmd_construct(const common& c, const construct_args& a) {
    const std::string& n = a.name;
    if (n == "suslin") {
        type_spec t = c.load("Tsuslin");
        print_tree(c, full_suslin_levels(t, a.depth, budget_or(default_tree_budget)));
        return;
    }
    if (n == "lattice") {
        c.formats({"json"});
        type_spec t = c.load("T2");
        const auto& fam = lattice_level(t, a.depth);
        json sets = json::array();
        for (const auto& s : fam.sets) sets.push_back(s);
        print(json{{"k", fam.k}, {"rows", fam.rows}, {"cols", fam.cols}, {"sets", sets}});
        return;
    }
    const char* fallback = n == "coherent-suslin" ? "Tcs" : n == "entangled" ? "Texp" : n == "indep" ? "Tind" : "T2";
    type_spec t = c.load(fallback);
    scheme_view v(t, budget_or(default_set_budget));
    if (n == "polychromatic") return print_coloring(c, v, a.window, polychromatic_color);
    if (n == "osc-color") return print_coloring(c, v, a.window, osc_color_o);
    if (n == "o-star") return print_coloring(c, v, a.window, o_star);
    if (n == "neg-partition")
        return print_coloring(c, v, a.window, [](const universe& u, ordinal x, ordinal y) -> std::uint64_t {
            return neg_partition_color(u, x, y);
        });

    c.formats({"json"});
    ordinal alpha = ord_arg(a.alpha, "alpha");
    ordinal beta = ord_arg(a.beta, "beta");
    if (n == "gap") {
        auto g = gap_sets(v, alpha, a.depth);
        print(json{{"A", set_to_json(g.a)}, {"B", set_to_json(g.b)}});
    } else if (n == "luzin") {
        print(truncated_json(luzin_jones(v, alpha, a.depth)));
    } else if (n == "separator") {
        print(truncated_json(jones_separator(v, beta, a.depth)));
    } else if (n == "countryman") {
        auto l = countryman_chain_index(v, alpha, beta);
        print(json{{"less", countryman_less(v, alpha, beta)}, {"chain", json{{"x", l.x}, {"y", l.y}, {"z", l.z}}}});
    } else if (n == "aronszajn") {
        auto f = aronszajn_node(v, beta);
        auto l = antichain_index(v, f);
        print(json{{"beta", ordinal_to_json(beta)}, {"values", f.values}, {"antichain", json{{"k", l.k}, {"s", l.s}}}});
    } else if (n == "coherent" || n == "indep") {
        auto f = n == "coherent" ? coherent_family(v, alpha, a.depth) : indep_coherent(v, alpha, a.depth);
        json vals = json::array();
        for (const auto& [p, x] : f.values) vals.push_back(json::array({point_json(p), ordinal_to_json(x)}));
        print(json{{"domain", truncated_json(f.domain)}, {"values", vals}});
    } else if (n == "coherent-suslin") {
        partition_spec part;
        part.k = partition_spec::kind::modulo;
        print(coherent_suslin_row(v, beta, part));
    } else if (n == "entangled") {
        print(entangled_real(v, alpha, a.length));
    } else if (n == "pretower") {
        json out = json::array();
        for (const auto& [x, y] : pretower_set(v, alpha, a.length)) out.push_back(json::array({x, y}));
        print(out);
    } else if (n == "hset") {
        print(set_to_json(hset(v, beta)));
    } else {
        fail(errc::invalid_argument, "unknown construction '" + n + "'");
    }
}

// ---- force

struct force_args {
    std::string base = "omega";
    std::string session = "sess";
    std::string contain, root, ih1_alpha, ih1_set, demands;
    level k = 1;
    std::string a;
    std::uint64_t betas = 15;
    level k2_hi = 4, l_hi = 6;
};

struct session {
    fs::path dir;
    type_spec type;
    std::vector<std::string> lines;  // the demand log, one record per line

    fs::path log_path() const { return dir / "log.jsonl"; }
};

session open_session(const std::string& dir) {
    session s;
    s.dir = dir;
    if (!fs::exists(s.dir / "session.json"))
        fail(errc::invalid_argument, "'" + dir + "' is not a session directory; run force init first");
    json meta = json::parse(slurp((s.dir / "session.json").string()));
    s.type = type_from_json(meta.at("type"));
    std::istringstream in(slurp(s.log_path().string()));
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) s.lines.push_back(line);
    return s;
}

// Re-issues the user demands of the log and insists on the same records.
void replay(const session& s, fragment& f) {
    for (const auto& line : s.lines) {
        json r = json::parse(line);
        if (!r.at("internal").get<bool>()) f.meet(demand_from_json(r));
    }
    auto log = f.log();
    if (log.size() != s.lines.size())
        fail(errc::invariant_violation, "replay produced " + std::to_string(log.size()) + " records, the log has " +
                                            std::to_string(s.lines.size()));
    for (std::size_t i = 0; i < log.size(); ++i)
        if (record_to_json(log[i]).dump() != s.lines[i])
            fail(errc::invariant_violation, "replay diverges at record " + std::to_string(i));
}

json snapshot_json(const fragment& f) {
    return json{{"gamma", ordinal_to_json(f.base().gamma())},
                {"k", f.rank()},
                {"condition", set_to_json(f.condition())},
                {"records", f.log().size()}};
}

void append_new(const session& s, const fragment& f) {
    std::ofstream out(s.log_path(), std::ios::app);
    auto log = f.log();
    for (std::size_t i = s.lines.size(); i < log.size(); ++i) {
        auto line = record_to_json(log[i]).dump();
        out << line << '\n';
        std::cout << line << '\n';
    }
}

void cmd_force(const std::string& sub, const common& c, const force_args& a) {
    if (sub == "init") {
        if (a.base != "omega") fail(errc::invalid_argument, "only --base omega is available");
        type_spec t = c.load("T2");
        fs::create_directories(a.session);
        std::ofstream(fs::path(a.session) / "session.json") << json{{"base", a.base}, {"type", type_to_json(t)}}.dump()
                                                              << '\n';
        std::ofstream(fs::path(a.session) / "log.jsonl", std::ios::trunc);
        omega_ground g(t, budget_or(default_condition_budget));
        fragment f(g, budget_or(default_condition_budget));
        print(snapshot_json(f));
        return;
    }
    session s = open_session(a.session);
    omega_ground g(s.type, budget_or(default_condition_budget));
    fragment f(g, budget_or(default_condition_budget));
    replay(s, f);

    if (sub == "demand" || sub == "meet") {
        std::vector<demand> ds;
        if (sub == "demand") {
            int given = !a.contain.empty() + !a.root.empty() + !a.ih1_alpha.empty();
            if (given != 1) fail(errc::invalid_argument, "give exactly one of --contain, --root, --ih1-alpha");
            demand d;
            if (!a.contain.empty()) {
                d.op = demand::kind::contain;
                d.alpha = ord_arg(a.contain, "contain");
            } else if (!a.root.empty()) {
                d.op = demand::kind::root;
                d.alpha = ord_arg(a.root, "root");
                d.k = a.k;
            } else {
                d.op = demand::kind::ih1;
                d.alpha = ord_arg(a.ih1_alpha, "ih1-alpha");
                d.a = parse_set_list(a.ih1_set);
            }
            ds.push_back(d);
        } else {
            std::istringstream in(slurp(a.demands));
            for (std::string line; std::getline(in, line);)
                if (!line.empty()) ds.push_back(demand_from_json(parse_json_arg(line, "--demands")));
        }
        for (const auto& d : ds) f.meet(d);
        append_new(s, f);
    } else if (sub == "snapshot") {
        json out = snapshot_json(f);
        if (!a.a.empty()) {
            auto cl = f.closure_in_condition(ord_arg(a.a, "a"), a.k);
            out["closure"] = cl ? set_to_json(*cl) : json(nullptr);
        }
        print(out);
    } else if (sub == "verify-trans") {
        ord_set p = f.condition();
        ordinal w = g.gamma();
        std::size_t base = below(p, w).size();
        trans_grid grid;
        for (std::size_t i = base; i < p.size() && i < base + a.betas; ++i) grid.betas.push_back(p[i]);
        grid.xis = p;
        grid.k2_hi = std::min(a.k2_hi, f.rank());
        grid.l_hi = std::min(a.l_hi, f.rank());
        auto rep = verify_trans_equiv(f, grid);
        json cx = json::array();
        for (const auto& e : rep.counterexamples)
            cx.push_back(json{{"alpha", ordinal_to_json(e.alpha)}, {"beta", ordinal_to_json(e.beta)},
                              {"xi", ordinal_to_json(e.xi)}, {"k", e.k}, {"k2", e.k2}, {"l", e.l},
                              {"lhs", e.lhs}, {"rhs", e.rhs}});
        print(json{{"scanned", rep.scanned}, {"tuples", rep.tuples}, {"approved", rep.approved}, {"counterexamples", cx}});
        if (!rep.ok()) fail(errc::invariant_violation, std::to_string(rep.counterexamples.size()) + " counterexamples");
    }
}

// ---- verify

int cmd_verify(const common& c, const std::string& suite, std::uint64_t window, level depth) {
    verify_options o;
    if (!c.type.empty()) o.type = load_type(c.type);
    o.window = window;
    o.depth = depth;
    auto rep = run_suite(suite, o);
    std::cout << report_to_json(rep) << '\n';
    if (!rep.ok()) {
        for (const auto& ch : rep.checks)
            if (!ch.pass()) std::cerr << "FAIL " << ch.name << ": " << ch.counterexample << '\n';
        return exit_code_for(errc::invariant_violation);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"construction schemes: build, query, construct, force, verify"};
    app.require_subcommand(1);
    app.fallthrough();
    common c;
    app.add_option("--type", c.type, "builtin name or JSON type file");
    app.add_option("--format", c.format, "json, csv, dot or text")->check(CLI::IsMember({"json", "csv", "dot", "text"}));

    std::function<int()> run;

    auto* scheme = app.add_subcommand("scheme", "materialize and query F");
    scheme->require_subcommand(1);
    scheme->fallthrough();
    scheme_args sa;
    for (const char* name : {"build", "member", "decompose", "list"}) {
        auto* s = scheme->add_subcommand(name);
        std::string sub = name;
        if (sub == "build" || sub == "list") s->add_option("--level,--rank", sa.k);
        if (sub == "list") s->add_option("--window", sa.window);
        if (sub == "member" || sub == "decompose") s->add_option("--set", sa.set)->required();
        s->callback([&, sub] { run = [&, sub] { return cmd_scheme(sub, c, sa), 0; }; });
    }

    auto* metric = app.add_subcommand("metric", "rho, Delta, Xi, closures, f, osc");
    metric->require_subcommand(1);
    metric->fallthrough();
    metric_args ma;
    for (const char* name : {"rho", "delta", "xi", "closure", "f", "osc"}) {
        auto* s = metric->add_subcommand(name);
        std::string sub = name;
        s->add_option("--a", ma.a);
        if (sub == "rho" || sub == "delta" || sub == "osc") s->add_option("--b", ma.b);
        if (sub != "rho" && sub != "delta") s->add_option("--k,--l", ma.k);
        s->callback([&, sub] { run = [&, sub] { return cmd_metric(sub, c, ma), 0; }; });
    }

    auto* capture = app.add_subcommand("capture", "capturing scans");
    capture->require_subcommand(1);
    capture->fallthrough();
    capture_args ca;
    auto* scan = capture->add_subcommand("scan");
    scan->add_option("--family", ca.family, "JSON list of sets, inline or a file")->required();
    scan->add_option("--n", ca.n);
    scan->add_option("--window", ca.window);
    scan->add_option("--k-min", ca.k_min);
    scan->callback([&] { run = [&] { return cmd_capture(c, ca), 0; }; });

    construct_args xa;
    auto* construct = app.add_subcommand("construct", "evaluate a construction");
    construct->add_option("name", xa.name,
                          "gap luzin separator countryman aronszajn coherent indep coherent-suslin suslin lattice "
                          "entangled polychromatic osc-color o-star neg-partition pretower hset")
        ->required();
    construct->add_option("--alpha", xa.alpha);
    construct->add_option("--beta", xa.beta);
    construct->add_option("--depth", xa.depth);
    construct->add_option("--window", xa.window);
    construct->add_option("--length,--n", xa.length);
    construct->callback([&] { run = [&] { return cmd_construct(c, xa), 0; }; });

    auto* force = app.add_subcommand("force", "the forcing lab");
    force->require_subcommand(1);
    force->fallthrough();
    force_args fa;
    for (const char* name : {"init", "demand", "meet", "snapshot", "verify-trans"}) {
        auto* s = force->add_subcommand(name);
        std::string sub = name;
        if (sub == "init") {
            s->add_option("--base", fa.base);
            s->add_option("--out,--session", fa.session);
        } else {
            s->add_option("--session", fa.session);
        }
        if (sub == "demand") {
            s->add_option("--contain", fa.contain);
            s->add_option("--root", fa.root);
            s->add_option("--ih1-alpha", fa.ih1_alpha);
            s->add_option("--ih1-set", fa.ih1_set);
        }
        if (sub == "demand" || sub == "snapshot") s->add_option("--k", fa.k);
        if (sub == "snapshot") s->add_option("--a", fa.a);
        if (sub == "meet") s->add_option("--demands", fa.demands, "JSON lines of demands")->required();
        if (sub == "verify-trans") {
            s->add_option("--betas", fa.betas);
            s->add_option("--k2-hi", fa.k2_hi);
            s->add_option("--l-hi", fa.l_hi);
        }
        s->callback([&, sub] { run = [&, sub] { return cmd_force(sub, c, fa), 0; }; });
    }

    std::string suite;
    std::uint64_t window = 0;
    level depth = -1;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite)->required();
    verify->add_option("--window", window);
    verify->add_option("--depth", depth);
    verify->callback([&] { run = [&] { return cmd_verify(c, suite, window, depth); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    try {
        return run();
    } catch (const error& e) {
        std::cerr << errc_name(e.code()) << ": " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const json::exception& e) {
        std::cerr << "InvalidArgument: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "InvariantViolation: " << e.what() << '\n';
        return 3;
    }
}
