#pragma once

#include <map>
#include <set>
#include <sstream>
#include <string>

#include "cs/verify.hpp"

namespace cs::suites {

suite_report type_suite(const verify_options& opt);
suite_report scheme_suite(const verify_options& opt);
suite_report metric_suite(const verify_options& opt);
suite_report lemmas_suite(const verify_options& opt);
suite_report countryman_suite(const verify_options& opt);
suite_report aronszajn_suite(const verify_options& opt);
suite_report luzin_suite(const verify_options& opt);
suite_report capture_suite(const verify_options& opt);
suite_report coloring_suite(const verify_options& opt);
suite_report lattice_suite(const verify_options& opt);
suite_report suslin_suite(const verify_options& opt);
suite_report oscillation_suite(const verify_options& opt);
suite_report forcing_suite(const verify_options& opt);
suite_report ih2_suite(const verify_options& opt);

inline type_spec type_or(const verify_options& o, const char* builtin) {
    return o.type ? *o.type : *builtin_type(builtin);
}
inline std::uint64_t window_or(const verify_options& o, std::uint64_t w) { return o.window ? o.window : w; }
inline level depth_or(const verify_options& o, level d) { return o.depth >= 0 ? o.depth : d; }

inline suite_report start(const std::string& name, const type_spec& t) {
    suite_report r;
    r.suite = name;
    r.type = t.name();
    return r;
}

// least L with n <= m_L
inline level level_covering(const type_spec& t, std::uint64_t n) { return n == 0 ? 0 : t.level_containing(n - 1); }

// every tuple of singletons captured by a stored member, with the ranks of its capturers
std::map<ord_set, std::set<level>> captured_by_table(const table_universe& u);

template <class... Args>
std::string cat(const Args&... args) {
    std::ostringstream os;
    ((os << args), ...);
    return os.str();
}

}  // namespace cs::suites
