#include "cs/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>

#include "cs/error.hpp"
#include "verify_suites.hpp"

namespace cs {

bool suite_report::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const check_result& c) { return c.pass(); });
}

check_result& suite_report::add(const std::string& name) {
    checks.push_back({});
    checks.back().name = name;
    return checks.back();
}

const check_result* suite_report::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::string report_to_json(const suite_report& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["type"] = r.type;
    j["pass"] = r.ok();
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["pass"] = c.pass();
        e["cases"] = c.cases;
        e["failures"] = c.failures;
        if (!c.pass()) e["counterexample"] = c.counterexample;
        if (!c.note.empty()) e["note"] = c.note;
        j["checks"].push_back(e);
    }
    return j.dump(2);
}

suite_report report_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(errc::invalid_argument, std::string("report: ") + e.what());
    }
    suite_report r;
    try {
        r.suite = j.at("suite").get<std::string>();
        r.type = j.at("type").get<std::string>();
        for (const auto& e : j.at("checks")) {
            check_result c;
            c.name = e.at("name").get<std::string>();
            c.cases = e.at("cases").get<std::uint64_t>();
            c.failures = e.at("failures").get<std::uint64_t>();
            if (e.contains("counterexample")) c.counterexample = e["counterexample"].get<std::string>();
            if (e.contains("note")) c.note = e["note"].get<std::string>();
            r.checks.push_back(std::move(c));
        }
    } catch (const nlohmann::json::exception& e) {
        fail(errc::invalid_argument, std::string("report: ") + e.what());
    }
    return r;
}

namespace {

using suite_fn = suite_report (*)(const verify_options&);

const std::map<std::string, suite_fn>& registry() {
    static const std::map<std::string, suite_fn> r = {
        {"type", suites::type_suite},
        {"scheme", suites::scheme_suite},
        {"metric", suites::metric_suite},
        {"lemmas", suites::lemmas_suite},
        {"countryman", suites::countryman_suite},
        {"aronszajn", suites::aronszajn_suite},
        {"luzin", suites::luzin_suite},
        {"capture", suites::capture_suite},
        {"coloring", suites::coloring_suite},
        {"lattice", suites::lattice_suite},
        {"suslin", suites::suslin_suite},
        {"oscillation", suites::oscillation_suite},
        {"forcing", suites::forcing_suite},
        {"ih2", suites::ih2_suite},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "type", "scheme", "metric", "lemmas", "countryman", "aronszajn", "luzin",
        "capture", "coloring", "lattice", "suslin", "oscillation", "forcing", "ih2",
    };
    return names;
}

suite_report run_suite(const std::string& name, const verify_options& opt) {
    auto it = registry().find(name);
    if (it == registry().end()) fail(errc::unknown_suite, "unknown suite '" + name + "'");
    return it->second(opt);
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

table_universe::table_universe(type_spec t, level L)
    : type_(std::move(t)), L_(L), m_(type_.m(L)), sets_(build_finite_scheme(type_, L)) {
    std::sort(sets_.begin(), sets_.end());
    holder_.assign(L + 1, std::vector<std::size_t>(m_, sets_.size()));
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        level k = type_.level_containing(sets_[i].size() - 1);
        if (type_.m(k) != sets_[i].size()) fail(errc::invariant_violation, "table: stored set of odd size");
        for (auto x : sets_[i])
            if (holder_[k][x] == sets_.size()) holder_[k][x] = i;
    }
}

const ord_set& table_universe::holder(ordinal b, level k) const {
    if (b >= m_ || k < 0 || k > L_)
        fail(errc::precondition_violation, "table: query outside m_" + std::to_string(L_));
    std::size_t i = holder_[k][b];
    if (i == sets_.size()) fail(errc::invariant_violation, "table: no member holds " + std::to_string(b));
    return sets_[i];
}

ord_set table_universe::closure(ordinal b, level k) const { return below(holder(b, k), b + 1); }

ord_set table_universe::member_containing(ordinal b, level k) const { return holder(b, k); }

bool table_universe::is_member(const ord_set& s) const { return std::binary_search(sets_.begin(), sets_.end(), s); }

level table_universe::rho(ordinal a, ordinal b) const {
    if (a == b) return 0;
    ordinal lo = std::min(a, b), hi = std::max(a, b);
    for (level k = 1; k <= L_; ++k)
        if (contains(holder(hi, k), lo)) return k;
    fail(errc::invariant_violation, "table: m_L holds no common member");
}

std::string table_universe::describe() const { return "table[" + type_.name() + ", m_" + std::to_string(L_) + "]"; }

std::vector<ord_set> table_universe::of_rank(level k) const {
    std::vector<ord_set> out;
    for (const auto& s : sets_)
        if (s.size() == type_.m(k)) out.push_back(s);
    return out;
}

level table_universe::rank_of(const ord_set& s) const {
    level k = type_.level_containing(s.size() - 1);
    return type_.m(k) == s.size() ? k : -1;
}

decomposition table_universe::pieces_of(const ord_set& f) const {
    level k = rank_of(f);
    if (k < 0) fail(errc::invalid_argument, "table: " + to_string(f) + " has no rank");
    if (k == 0) return {{f}, {}};
    decomposition d;
    for (const auto& g : sets_)
        if (g.size() == type_.m(k - 1) && is_subset(g, f)) d.pieces.push_back(g);
    d.root = d.pieces.front();
    for (const auto& p : d.pieces) d.root = set_intersection(d.root, p);
    return d;
}

std::int64_t table_universe::xi(ordinal b, level k) const {
    if (k == 0) return 0;
    auto d = pieces_of(holder(b, k));
    if (contains(d.root, b)) return -1;
    for (std::size_t i = 0; i < d.pieces.size(); ++i)
        if (contains(d.pieces[i], b)) return static_cast<std::int64_t>(i);
    fail(errc::invariant_violation, "table: no piece holds " + std::to_string(b));
}

}  // namespace cs
