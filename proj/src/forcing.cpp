#include "cs/forcing.hpp"

#include <algorithm>

#include "cs/error.hpp"

namespace cs {

using u64 = std::uint64_t;

namespace {

std::optional<level> rank_of_size(const type_spec& t, u64 size) {
    for (level k = 0; k <= t.depth(); ++k) {
        u64 m = t.m(k);
        if (m == size) return k;
        if (m > size) break;
    }
    return std::nullopt;
}

level member_rank(const type_spec& t, const ord_set& f) {
    auto k = rank_of_size(t, f.size());
    if (!k) fail(errc::rank_mismatch, "|" + to_string(f) + "| is not of the form m_k");
    return *k;
}

ord_set fresh_part(const ord_set& p, ordinal gamma) { return at_or_above(p, gamma); }

// min(red_gamma(p) \ p)
ordinal first_reduced(const ord_set& p, ordinal gamma) {
    auto diff = set_difference(red(p, gamma), p);
    if (diff.empty()) fail(errc::precondition_violation, "condition " + to_string(p) + " has no fresh part");
    return diff.front();
}

std::vector<u64> positions_in(const ord_set& host, const ord_set& s) {
    std::vector<u64> idx;
    idx.reserve(s.size());
    for (ordinal x : s) {
        auto i = index_of(host, x);
        if (i == static_cast<std::size_t>(-1)) fail(errc::not_member, ordinal_to_string(x) + " is not in " + to_string(host));
        idx.push_back(i);
    }
    return idx;
}

ord_set as_ord_set(const std::vector<u64>& idx) { return ord_set(idx.begin(), idx.end()); }

void check_size(const ord_set& s, u64 budget, const char* what) {
    if (s.size() > budget)
        fail(errc::budget_exceeded, std::string(what) + " of size " + std::to_string(s.size()) + " exceeds the budget");
}

void check_ih1(const type_spec& t, const ord_set& f, const ord_set& a, ordinal alpha) {
    level l = member_rank(t, f);
    if (l == 0) fail(errc::invariant_violation, "IH1 witness of rank 0");
    auto d = decompose_by_position(t, f, l);
    if (!is_subset(a, d.pieces[0]) || d.root != below(f, alpha))
        fail(errc::invariant_violation, "IH1 witness " + to_string(f) + " fails for A = " + to_string(a) +
                                            ", alpha = " + ordinal_to_string(alpha));
}

}  // namespace

omega_ground::omega_ground(type_spec t, std::uint64_t budget) : view_(std::move(t)), budget_(budget) {}

ord_set omega_ground::ih1_witness(const ord_set& a, ordinal alpha) const {
    if (block_of(alpha) != 0) fail(errc::invalid_argument, ordinal_to_string(alpha) + " is not a natural number");
    for (ordinal x : a)
        if (block_of(x) != 0) fail(errc::invalid_argument, ordinal_to_string(x) + " is not a natural number");
    const auto& t = type();
    for (level k = 1; k <= t.depth(); ++k) {
        if (t.r(k) != alpha) continue;
        if (!a.empty() && t.m(k - 1) <= a.back()) continue;
        if (t.m(k) > budget_) break;
        return iota_set(0, t.m(k));
    }
    fail(errc::no_witness_in_budget, "no level k within budget with r_k = " + std::to_string(alpha) +
                                         " and m_{k-1} > max " + to_string(a));
}

ord_set omega_ground::member_covering(const ord_set& x, level k) const {
    const auto& t = type();
    level j = std::max<level>(k, x.empty() ? 0 : t.level_containing(x.back()));
    if (j > t.depth() || t.m(j) > budget_)
        fail(errc::no_witness_in_budget, "no member of rank >= " + std::to_string(k) + " within budget covers " + to_string(x));
    return iota_set(0, t.m(j));
}

ord_set red(const ord_set& p, ordinal delta) {
    if (p.empty()) fail(errc::invalid_argument, "red of the empty set");
    if (!is_strictly_sorted(p)) fail(errc::invalid_argument, to_string(p) + " is not increasing");
    auto low = below(p, delta);
    if (low.empty()) return iota_set(0, p.size());
    ordinal a = low.back();
    u64 n = at_or_above(p, a).size();
    return set_union(low, iota_set(a, a + n));
}

ord_set cut(const ground& g, const ord_set& f, ordinal alpha) {
    if (!contains(f, alpha)) fail(errc::not_member, ordinal_to_string(alpha) + " is not in " + to_string(f));
    ordinal gamma = g.gamma();
    if (f.back() >= gamma) fail(errc::invalid_argument, to_string(f) + " is not inside the ground");
    ord_set out = below(f, alpha);
    u64 n = f.size() - out.size();
    auto tail = iota_set(gamma, gamma + n);
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
}

condition_clauses check_condition(const ground& g, const ord_set& p) {
    condition_clauses c;
    if (p.empty() || !is_strictly_sorted(p)) return c;
    ordinal gamma = g.gamma();
    if (block_of(p.back()) > g.blocks()) return c;
    const auto& t = g.type();
    if (auto k = rank_of_size(t, p.size())) {
        c.a = true;
        c.k = *k;
    }
    auto fresh = fresh_part(p, gamma);
    c.c = fresh == iota_set(gamma, gamma + fresh.size());
    auto low = below(p, gamma);
    if (c.a) {
        c.b = low.empty() || g.closure(low.back(), c.k) == low;
        c.red_member = g.is_member(red(p, gamma));
    }
    return c;
}

bool is_condition(const ground& g, const ord_set& p) {
    auto c = check_condition(g, p);
    return c.a && c.c && c.red_member;
}

bool leq(const type_spec& t, const ord_set& p, const ord_set& q) {
    if (!is_strictly_sorted(p) || !is_strictly_sorted(q) || q.empty() || !is_subset(q, p)) return false;
    if (!rank_of_size(t, p.size())) return false;
    scheme_view v(t);
    return v.is_member(as_ord_set(positions_in(p, q)));
}

extension extend_contain(const ground& g, const ord_set& p, ordinal alpha) {
    ordinal gamma = g.gamma();
    if (alpha >= gamma) fail(errc::invalid_argument, ordinal_to_string(alpha) + " is not in the ground");
    const auto& t = g.type();
    auto r = red(p, gamma);
    ordinal xi = first_reduced(p, gamma);
    auto a = set_union(ord_set{alpha}, r);
    auto f = g.ih1_witness(a, xi);
    check_ih1(t, f, a, xi);
    level l = member_rank(t, f);
    auto d = decompose_by_position(t, f, l);
    if (d.pieces.size() < 2) fail(errc::type_too_small, "n_" + std::to_string(l) + " = 1 leaves no F_1");
    ordinal xi1 = set_difference(d.pieces[1], d.root).front();
    extension e{l, cut(g, f, xi1), f};
    if (!contains(e.q, alpha) || !leq(t, e.q, p))
        fail(errc::invariant_violation, "extension " + to_string(e.q) + " of " + to_string(p) + " is not below it");
    return e;
}

extension extend_root(const ground& g, const ord_set& p, ordinal beta, level k) {
    ordinal gamma = g.gamma();
    if (block_of(beta) != g.blocks())
        fail(errc::invalid_argument, ordinal_to_string(beta) + " is not in the fresh block");
    if (k < 0) fail(errc::invalid_argument, "negative level");
    const auto& t = g.type();
    u64 s = offset_of(beta);
    auto r = red(p, gamma);
    ordinal alpha = first_reduced(p, gamma);
    auto a = set_union(r, iota_set(alpha, alpha + s + t.m(k) + 1));
    auto f = g.ih1_witness(a, alpha);
    check_ih1(t, f, a, alpha);
    level l = member_rank(t, f);
    auto f0 = decompose_by_position(t, f, l).pieces[0];
    extension e{l - 1, cut(g, f0, alpha), f};
    if (e.k < k || !contains(e.q, beta) || below(e.q, gamma).size() != t.r(e.k + 1) || !leq(t, e.q, p))
        fail(errc::invariant_violation, "root extension " + to_string(e.q) + " of " + to_string(p) + " is malformed");
    return e;
}

std::string demand_op_name(demand::kind op) {
    switch (op) {
    case demand::kind::contain: return "contain";
    case demand::kind::root: return "root";
    case demand::kind::ih1: return "ih1";
    }
    return "?";
}

fragment::fragment(const ground& base, std::uint64_t budget)
    : base_(base), positions_(base.type()), budget_(budget), p_{base.gamma()} {}

std::string fragment::describe() const {
    std::lock_guard lock(mu_);
    return "fragment[" + base_.describe() + " + omega, |p| = " + std::to_string(p_.size()) +
           ", rank " + std::to_string(k_) + "]";
}

void fragment::check_domain(ordinal b) const {
    if (!in_domain(b)) fail(errc::invalid_argument, ordinal_to_string(b) + " is outside the fragment");
}

ord_set fragment::condition() const {
    std::lock_guard lock(mu_);
    return p_;
}

level fragment::rank() const {
    std::lock_guard lock(mu_);
    return k_;
}

std::vector<demand_record> fragment::log() const {
    std::lock_guard lock(mu_);
    return log_;
}

void fragment::advance(const demand& d, bool internal, const extension& e) const {
    check_size(e.q, budget_, "condition");
    if (!leq(type(), e.q, p_))
        fail(errc::invariant_violation, to_string(e.q) + " is not below the current condition");
    p_ = e.q;
    k_ = e.k;
    log_.push_back({log_.size(), d, internal, e.witness, p_, k_});
}

void fragment::ensure(ordinal b, level k) const {
    check_domain(b);
    if (k < 0) fail(errc::invalid_argument, "negative level");
    ordinal gamma = base_.gamma();
    while (!(contains(p_, b) && k_ >= k)) {
        if (b < gamma && !contains(p_, b)) {
            advance({demand::kind::contain, b, 0, {}}, true, extend_contain(base_, p_, b));
        } else {
            ordinal beta = b < gamma ? gamma : b;
            advance({demand::kind::root, beta, k, {}}, true, extend_root(base_, p_, beta, k));
        }
    }
}

void fragment::ensure_all(const ord_set& x, level k) const {
    for (ordinal b : x) ensure(b, 0);
    if (!x.empty()) ensure(x.back(), k);
}

ord_set fragment::positional_closure(ordinal b, level k) const {
    u64 i = index_of(p_, b);
    const auto idx = positions_.closure(i, k);
    return select(p_, std::vector<u64>(idx.begin(), idx.end()));
}

std::optional<ord_set> fragment::closure_in_condition(ordinal b, level k) const {
    std::lock_guard lock(mu_);
    if (!contains(p_, b) || k > k_ || k < 0) return std::nullopt;
    return positional_closure(b, k);
}

ord_set fragment::closure(ordinal b, level k) const {
    check_domain(b);
    std::lock_guard lock(mu_);
    if (b < base_.gamma() && !(contains(p_, b) && k <= k_)) return base_.closure(b, k);
    ensure(b, k);
    return positional_closure(b, k);
}

ord_set fragment::member_containing(ordinal b, level k) const {
    std::lock_guard lock(mu_);
    ensure(b, k);
    auto idx = positions_.member_containing(index_of(p_, b), k);
    return select(p_, std::vector<u64>(idx.begin(), idx.end()));
}

bool fragment::is_member(const ord_set& s) const {
    if (s.empty() || !is_strictly_sorted(s)) return false;
    for (ordinal b : s)
        if (!in_domain(b)) return false;
    if (s.back() < base_.gamma()) return base_.is_member(s);
    std::lock_guard lock(mu_);
    ensure_all(s, 0);
    return positions_.is_member(as_ord_set(positions_in(p_, s)));
}

level fragment::rho(ordinal a, ordinal b) const {
    ordinal gamma = base_.gamma();
    if (a < gamma && b < gamma) return base_.rho(a, b);
    std::lock_guard lock(mu_);
    ensure(a, 0);
    ensure(b, 0);
    return positions_.rho(index_of(p_, a), index_of(p_, b));
}

ord_set fragment::ih1_witness(const ord_set& a, ordinal alpha) const {
    ordinal gamma = base_.gamma();
    auto all = set_union(a, ord_set{alpha});
    for (ordinal x : all) check_domain(x);
    if (all.back() < gamma) return base_.ih1_witness(a, alpha);
    std::lock_guard lock(mu_);
    ensure_all(all, 0);
    // Work in red_gamma(p), which is a member of the ground, then cut a
    // covering member at the first reduced point.
    const auto& t = type();
    auto q = p_;
    auto r = red(q, gamma);
    ordinal xi = first_reduced(q, gamma);
    auto e = base_.ih1_witness(transport_image(q, r, a), transport_image(q, r, ord_set{alpha}).front());
    auto cover = base_.member_covering(set_union(e, r), k_);
    if (!contains(cover, xi) || !is_subset(r, cover))
        fail(errc::invariant_violation, "covering member " + to_string(cover) + " misses red(p)");
    extension ext{member_rank(t, cover), cut(base_, cover, xi), {}};
    ext.witness = transport_image(cover, ext.q, e);
    check_ih1(t, ext.witness, a, alpha);
    advance({demand::kind::ih1, alpha, 0, a}, true, ext);
    return ext.witness;
}

ord_set fragment::member_covering(const ord_set& x, level k) const {
    std::lock_guard lock(mu_);
    ensure_all(x, k);
    return p_;
}

const demand_record& fragment::meet(const demand& d) {
    std::lock_guard lock(mu_);
    ordinal gamma = base_.gamma();
    auto spec = demand_op_name(d.op) + " " + ordinal_to_string(d.alpha);
    ord_set witness;
    try {
        switch (d.op) {
        case demand::kind::contain:
            ensure(d.alpha, 0);
            break;
        case demand::kind::root: {
            if (d.alpha < gamma || !in_domain(d.alpha))
                fail(errc::demand_unsatisfiable, "root demand " + spec + " needs a fresh ordinal");
            const auto& t = type();
            bool met = contains(p_, d.alpha) && k_ >= d.k && below(p_, gamma).size() == t.r(k_ + 1);
            if (!met) advance(d, true, extend_root(base_, p_, d.alpha, d.k));
            break;
        }
        case demand::kind::ih1:
            witness = ih1_witness(d.a, d.alpha);
            break;
        }
    } catch (const error& e) {
        if (e.code() == errc::invalid_argument)
            fail(errc::demand_unsatisfiable, "dense set for " + spec + ": " + e.what());
        throw;
    }
    log_.push_back({log_.size(), d, false, witness, p_, k_});
    return log_.back();
}

std::unique_ptr<fragment> generic_build(const ground& base, const std::vector<demand>& demands, std::uint64_t budget) {
    auto f = std::make_unique<fragment>(base, budget);
    for (const auto& d : demands) f->meet(d);
    return f;
}

}  // namespace cs
