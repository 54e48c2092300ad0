#include "cs/type.hpp"

#include <numeric>
#include <set>

#include "cs/error.hpp"

namespace cs {

namespace {

constexpr std::uint64_t m_ceiling = std::uint64_t{1} << 62;

std::uint64_t tri(std::uint64_t c) { return c * (c + 1) / 2; }

}  // namespace

std::uint64_t triangular_stream(std::uint64_t t) {
    // largest c with T(c) <= t
    std::uint64_t lo = 0, hi = 1;
    while (tri(hi) <= t) hi *= 2;
    while (lo + 1 < hi) {
        std::uint64_t mid = (lo + hi) / 2;
        if (tri(mid) <= t)
            lo = mid;
        else
            hi = mid;
    }
    return t - tri(lo);
}

type_spec::type_spec() : type_spec("T2", {}, schedule_rule{schedule_rule::kind::round_robin, 2, {0, 7}, 0}) {}

type_spec::type_spec(std::string name, std::vector<std::pair<std::uint64_t, std::uint64_t>> prefix,
                     schedule_rule rule)
    : name_(std::move(name)), prefix_(std::move(prefix)), rule_(std::move(rule)) {
    if (rule_.k == schedule_rule::kind::round_robin && rule_.lanes.empty())
        fail(errc::invalid_type, "round_robin schedule needs at least one lane");
    derive();
}

std::uint64_t type_spec::n(level k) const {
    if (k < 1) fail(errc::invalid_argument, "n_k is defined for k >= 1");
    auto idx = static_cast<std::size_t>(k - 1);
    if (idx < prefix_.size()) return prefix_[idx].first;
    return rule_.n;
}

std::uint64_t type_spec::r(level k) const {
    if (k < 1) fail(errc::invalid_argument, "r_k is defined for k >= 1");
    auto idx = static_cast<std::size_t>(k - 1);
    if (idx < prefix_.size()) return prefix_[idx].second;
    if (rule_.k == schedule_rule::kind::constant) return rule_.r;
    std::uint64_t p = idx - prefix_.size();
    std::uint64_t lanes = rule_.lanes.size();
    return triangular_stream(rule_.lanes[p % lanes] + p / lanes);
}

void type_spec::derive() {
    m_.assign(1, 1);
    depth_ = 0;
    failure_.reset();
    for (level k = 1; k <= max_levels; ++k) {
        std::uint64_t nk = n(k), rk = r(k), prev = m_.back();
        if (nk < 2) {
            failure_ = clause_failure{k, 'b', "n_" + std::to_string(k) + "=" + std::to_string(nk) + " < 2"};
            return;
        }
        if (rk >= prev) {
            failure_ = clause_failure{k, 'd',
                                      "r_" + std::to_string(k) + "=" + std::to_string(rk) + " >= m_" +
                                          std::to_string(k - 1) + "=" + std::to_string(prev)};
            return;
        }
        unsigned __int128 next = static_cast<unsigned __int128>(prev - rk) * nk + rk;
        if (next > m_ceiling) return;
        m_.push_back(static_cast<std::uint64_t>(next));
        depth_ = k;
    }
}

std::uint64_t type_spec::m(level k) const {
    if (k < 0) fail(errc::invalid_argument, "negative level");
    if (k <= depth_) return m_[static_cast<std::size_t>(k)];
    if (failure_ && failure_->k <= k)
        fail(errc::invalid_type, "clause (" + std::string(1, failure_->clause) + ") fails at k=" +
                                     std::to_string(failure_->k) + ": " + failure_->message);
    fail(errc::level_too_deep, "m_" + std::to_string(k) + " exceeds the representable range");
}

level type_spec::level_containing(std::uint64_t x) const {
    for (level k = 0; k <= depth_; ++k)
        if (x < m_[static_cast<std::size_t>(k)]) return k;
    if (failure_) m(depth_ + 1);
    fail(errc::level_too_deep, "no representable level contains " + std::to_string(x));
}

bool type_spec::binary_through(level K) const {
    for (level k = 1; k <= K; ++k)
        if (n(k) != 2) return false;
    return true;
}

std::vector<std::uint64_t> compute_m(const type_spec& spec, level K) {
    std::vector<std::uint64_t> out;
    out.reserve(static_cast<std::size_t>(K) + 1);
    for (level k = 0; k <= K; ++k) out.push_back(spec.m(k));
    return out;
}

bool validation_report::ok() const {
    for (const auto& e : entries)
        if (!e.pass) return false;
    return true;
}

namespace {

// residues of T(c) mod d; T mod d has period 2d in c
std::set<std::uint64_t> triangular_residues(std::uint64_t d) {
    std::set<std::uint64_t> out;
    for (std::uint64_t c = 0; c < 2 * d; ++c) out.insert(tri(c) % d);
    return out;
}

struct recurrence_class {
    std::uint64_t u0;  // stream position at the first level of the class
    std::uint64_t d;   // stream step between consecutive levels of the class
};

// Levels k = P + 1 + p with p in a fixed class mod M read the stream at
// u0 + d t. A value v recurs along it iff u0 + d t = T(c) + v for infinitely
// many c >= v, iff (u0 - v) mod d is a residue of T mod d.
std::vector<std::uint64_t> missing_residues(const std::vector<recurrence_class>& classes, std::uint64_t d) {
    auto res = triangular_residues(d);
    std::vector<std::uint64_t> missing;
    for (std::uint64_t v = 0; v < d; ++v) {
        bool hit = false;
        for (const auto& c : classes) {
            std::uint64_t diff = ((c.u0 % d) + d - v) % d;
            if (res.count(diff)) {
                hit = true;
                break;
            }
        }
        if (!hit) missing.push_back(v);
    }
    return missing;
}

// classes of schedule levels inside cell j of (k mod c); empty when the cell
// has no schedule levels
std::vector<recurrence_class> classes_in_cell(const type_spec& spec, std::uint64_t c, std::uint64_t j,
                                              std::uint64_t& d_out) {
    const auto& lanes = spec.schedule().lanes;
    std::uint64_t L = lanes.size();
    std::uint64_t M = std::lcm(c, L);
    std::uint64_t d = M / L;
    d_out = d;
    std::uint64_t P = spec.prefix().size();
    std::vector<recurrence_class> out;
    for (std::uint64_t rho = 0; rho < M; ++rho) {
        std::uint64_t k = P + 1 + rho;
        if (k % c != j) continue;
        std::uint64_t l = rho % L;
        out.push_back({lanes[l] + rho / L, d});
    }
    return out;
}

}  // namespace

validation_report validate_type(const type_spec& spec, level K) {
    validation_report rep;
    rep.entries.push_back({'a', 0, true, "m_0=1"});

    auto first_bad = [&](char clause) -> std::optional<clause_failure> {
        const auto& f = spec.first_failure();
        if (f && f->clause == clause && f->k <= K) return f;
        return std::nullopt;
    };
    if (auto f = first_bad('b'))
        rep.entries.push_back({'b', f->k, false, f->message});
    else
        rep.entries.push_back({'b', -1, true, "n_k >= 2 for k <= " + std::to_string(K)});

    const auto& rule = spec.schedule();
    if (rule.k == schedule_rule::kind::constant) {
        rep.entries.push_back({'c', -1, false,
                               "constant schedule r=" + std::to_string(rule.r) + " never attains r=" +
                                   std::to_string(rule.r == 0 ? 1 : 0)});
    } else {
        std::uint64_t d = 0;
        auto classes = classes_in_cell(spec, 1, 0, d);
        auto miss = missing_residues(classes, d);
        if (miss.empty())
            rep.entries.push_back({'c', -1, true, "round_robin over " + std::to_string(rule.lanes.size()) +
                                                      " lane(s) revisits every r"});
        else
            rep.entries.push_back({'c', -1, false, "values congruent to " + std::to_string(miss.front()) +
                                                       " mod " + std::to_string(d) + " are missed"});
    }

    if (auto f = first_bad('d'))
        rep.entries.push_back({'d', f->k, false, f->message});
    else
        rep.entries.push_back({'d', -1, true, "r_{k} < m_{k-1} for k <= " + std::to_string(K)});

    bool e_ok = spec.first_failure() ? spec.first_failure()->k > K : true;
    if (K > spec.depth() && e_ok)
        rep.entries.push_back({'e', spec.depth() + 1, false, "m exceeds the representable range"});
    else if (!e_ok)
        rep.entries.push_back({'e', spec.first_failure()->k, false, "recurrence undefined past an earlier failure"});
    else
        rep.entries.push_back({'e', -1, true, "m_{k} = r_k + (m_{k-1}-r_k) n_k for k <= " + std::to_string(K)});
    return rep;
}

type_spec default_binary_type() {
    return type_spec("T2", {}, schedule_rule{schedule_rule::kind::round_robin, 2, {0, 7}, 0});
}

type_spec mixed_example_type() {
    return type_spec("Tstar", {{2, 0}, {3, 1}, {2, 0}, {2, 2}, {2, 1}, {2, 3}},
                     schedule_rule{schedule_rule::kind::round_robin, 2, {0}, 0});
}

std::optional<type_spec> builtin_type(const std::string& name) {
    if (name == "T2" || name == "binary" || name == "T\xe2\x82\x82") return default_binary_type();
    if (name == "Tstar" || name == "T*" || name == "T\xe2\x98\x85") return mixed_example_type();
    if (name == "Tsuslin") {
        // n_{k+1} >= m_k (k+1) 2^{m_k} for the full Suslin recursion at k <= 2
        return type_spec("Tsuslin", {{2, 0}, {16, 1}}, schedule_rule{schedule_rule::kind::round_robin, 2, {0}, 0});
    }
    if (name == "Texp") {
        // n_{k+1} >= 2^{m_k}+1 through level 2
        return type_spec("Texp", {{3, 0}, {9, 1}},
                         schedule_rule{schedule_rule::kind::round_robin, 2, {0}, 0});
    }
    if (name == "Tcs") {
        // n_{k+1} >= 2^{m_k - r_{k+1}}+1 through level 3
        return type_spec("Tcs", {{3, 0}, {9, 1}, {5, 17}},
                         schedule_rule{schedule_rule::kind::round_robin, 2, {0}, 0});
    }
    if (name == "Tind") {
        // n_k > 2^{r_k^2} through level 3
        return type_spec("Tind", {{3, 0}, {3, 1}, {17, 2}},
                         schedule_rule{schedule_rule::kind::round_robin, 2, {0}, 0});
    }
    return std::nullopt;
}

std::vector<std::string> builtin_type_names() { return {"T2", "Tstar", "Tsuslin", "Texp", "Tcs", "Tind"}; }

std::uint64_t partition_spec::cell_count() const {
    switch (k) {
        case kind::single:
            return 1;
        case kind::modulo:
            return modulus;
        case kind::r_value:
            return 2;
    }
    return 1;
}

std::uint64_t partition_spec::cell_of(level lv, const type_spec& spec) const {
    switch (k) {
        case kind::single:
            return 0;
        case kind::modulo:
            return static_cast<std::uint64_t>(lv) % modulus;
        case kind::r_value:
            return spec.r(lv) == value ? 0 : 1;
    }
    return 0;
}

partition_report validate_partition(const type_spec& spec, const partition_spec& part, level K) {
    partition_report rep;
    auto tv = validate_type(spec, K);
    if (!tv.ok()) {
        rep.lines.push_back("type fails validation");
        return rep;
    }
    if (part.k == partition_spec::kind::modulo && part.modulus == 0) {
        rep.lines.push_back("modulus must be positive");
        return rep;
    }
    if (part.k == partition_spec::kind::r_value) {
        rep.lines.push_back("cell 0 holds only levels with r_k=" + std::to_string(part.value) + ", so r=" +
                            std::to_string(part.value == 0 ? 1 : 0) + " never occurs in it");
        return rep;
    }
    std::uint64_t c = part.k == partition_spec::kind::single ? 1 : part.modulus;
    rep.compatible = true;
    for (std::uint64_t j = 0; j < c; ++j) {
        std::uint64_t d = 0;
        auto classes = classes_in_cell(spec, c, j, d);
        auto miss = missing_residues(classes, d);
        std::string line = "cell " + std::to_string(j) + ": " + std::to_string(classes.size()) +
                           " stream class(es) with step " + std::to_string(d);
        if (miss.empty()) {
            line += ", every r recurs";
        } else {
            line += ", misses r congruent to " + std::to_string(miss.front()) + " mod " + std::to_string(d);
            rep.compatible = false;
        }
        rep.lines.push_back(line);
    }
    return rep;
}

void require_compatible(const type_spec& spec, const partition_spec& part, level K) {
    auto rep = validate_partition(spec, part, K);
    if (!rep.compatible) {
        std::string msg = "incompatible partition";
        for (const auto& l : rep.lines) msg += "; " + l;
        fail(errc::incompatible_partition, msg);
    }
}

}  // namespace cs
