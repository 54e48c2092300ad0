#include "cs/ih2.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

#include "cs/capture.hpp"
#include "cs/error.hpp"
#include "cs/metrics.hpp"
#include "cs/scheme.hpp"

namespace cs {

using u64 = std::uint64_t;

namespace {

std::string entry_to_string(const good_entry& e) {
    std::string s = "([";
    for (std::size_t i = 0; i < e.blocks.size(); ++i) s += (i ? "," : "") + to_string(e.blocks[i]);
    return s + "], " + std::to_string(e.z) + ")";
}

void require_level(level k, const char* what) {
    if (k < 2) fail(errc::precondition_violation, std::string(what) + " needs a level of at least 2");
}

ordinal at(const ord_set& s, u64 i) {
    if (i >= s.size()) fail(errc::bound_violation, "index " + std::to_string(i) + " outside " + to_string(s));
    return s[i];
}

// every C in [d]^n, lexicographic
void for_each_subset(const ord_set& d, std::size_t n, const std::function<void(const ord_set&)>& fn) {
    if (n > d.size()) return;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    while (true) {
        ord_set c;
        for (auto i : idx) c.push_back(d[i]);
        fn(c);
        std::size_t i = n;
        while (i > 0 && idx[i - 1] == d.size() - n + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::vector<ord_set> singletons(const ord_set& c) {
    std::vector<ord_set> out;
    for (ordinal x : c) out.push_back({x});
    return out;
}

}  // namespace

bool is_interval(const ord_set& s) {
    if (s.empty() || !is_strictly_sorted(s)) return false;
    return s.back() - s.front() + 1 == s.size();
}

bool is_interval_in(const ord_set& s, const ord_set& host) {
    if (s.empty() || !is_strictly_sorted(s)) return false;
    auto i = index_of(host, s.front());
    if (i == static_cast<std::size_t>(-1) || i + s.size() > host.size()) return false;
    return std::equal(s.begin(), s.end(), host.begin() + static_cast<std::ptrdiff_t>(i));
}

bool in_bl(const block_sequence& b, u64 t, u64 m) {
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!is_interval(b[i]) || b[i].front() < t || b[i].back() >= m) return false;
        if (i > 0 && b[i - 1].back() >= b[i].front()) return false;
    }
    return true;
}

bool is_good_entry(const good_entry& e, u64 t, u64 m) {
    if (!in_bl(e.blocks, t, m) || e.z < t || e.z >= m) return false;
    return e.blocks.empty() || e.blocks.back().back() <= e.z;
}

bool is_good(const type_spec& ty, const good_sequence& T, u64 t, level k) {
    if (T.empty() || k < 2) return false;
    u64 m = ty.m(k);
    if (t >= m) return false;
    return std::all_of(T.begin(), T.end(), [&](const good_entry& e) { return is_good_entry(e, t, m); });
}

std::vector<good_entry> good_entries(const type_spec& ty, u64 t, level k, u64 lo, std::size_t max_blocks) {
    require_level(k, "Good(t,k)");
    u64 m = ty.m(k);
    lo = std::max(lo, t);
    std::vector<good_entry> out;
    block_sequence cur;
    std::function<void(u64)> rec = [&](u64 from) {
        u64 top = cur.empty() ? t : cur.back().back();
        for (u64 z = std::max(t, top); z < m; ++z) out.push_back({cur, z});
        if (cur.size() == max_blocks) return;
        for (u64 a = from; a < m; ++a)
            for (u64 b = a; b < m; ++b) {
                cur.push_back(iota_set(a, b + 1));
                rec(b + 1);
                cur.pop_back();
            }
    };
    rec(lo);
    std::sort(out.begin(), out.end());
    return out;
}

projection_result projection(const universe& u, ordinal xi, level k, level l, const good_entry& e) {
    if (k > l) fail(errc::precondition_violation, "projection needs k <= l");
    const auto& ty = u.type();
    if (!is_good_entry(e, 0, ty.m(k))) fail(errc::precondition_violation, entry_to_string(e) + " is not (0,k)-good");
    auto xk = u.closure(xi, k);
    if (e.z > xk.size() - 1)
        fail(errc::bound_violation, "z = " + std::to_string(e.z) + " exceeds |(xi)^-_k| = " + std::to_string(xk.size() - 1));
    projection_result r;
    for (const auto& block : e.blocks) {
        ord_set img;
        for (ordinal i : block) img.push_back(u.closure_position(at(xk, i), l));
        img = normalized(img);
        bool iv = is_interval(img);
        r.interval.push_back(iv);
        r.in_bl0 = r.in_bl0 && iv && (r.sets.empty() || r.sets.back().back() < img.front());
        r.sets.push_back(std::move(img));
    }
    return r;
}

approval checkmark(const universe& u, ordinal beta, ordinal xi, level k, level l, const good_sequence& T) {
    require_level(k, "the approval relation");
    if (k > l) fail(errc::precondition_violation, "approval needs k <= l");
    const auto& ty = u.type();
    if (!is_good(ty, T, u.closure_position(beta, k), k))
        fail(errc::precondition_violation, "T is not in Good(beta, k)");
    approval a;
    u64 bl = u.closure_size(beta, l);
    auto xl = u.closure(xi, l);
    if (bl > xl.size()) return a;  // (0)
    auto xk = u.closure(xi, k);
    if (!contains(xk, xl[bl - 1])) return a;  // (3)
    u64 zx = xk.size() - 1;
    for (std::size_t i = 0; i < T.size(); ++i) {
        if (T[i].z != zx) continue;  // (1)
        if (!projection(u, xi, k, l, T[i]).in_bl0) continue;  // (2)
        a.approved = true;
        a.entry = i;
        return a;
    }
    return a;
}

good_sequence trans(const universe& u, level k, level k2, ordinal alpha, ordinal beta, const good_sequence& T) {
    require_level(k, "Trans");
    if (k >= k2) fail(errc::precondition_violation, "Trans needs k < k'");
    const auto& ty = u.type();
    auto bk2 = u.closure(beta, k2);
    if (alpha >= beta || !contains(bk2, alpha))
        fail(errc::precondition_violation, ordinal_to_string(alpha) + " is not in (beta)^-_k'");
    u64 t = u.closure_position(beta, k);
    if (!is_good(ty, T, t, k)) fail(errc::precondition_violation, "T is not in Good(beta, k)");
    for (const auto& e : T)
        if (!e.blocks.empty() && e.blocks.front().front() <= t)
            fail(errc::precondition_violation, "block of " + entry_to_string(e) + " reaches |(beta)^-_k| = " + std::to_string(t));
    u64 ta = u.closure_position(alpha, k2), tb = bk2.size() - 1;
    scheme_view v(ty);
    const auto& tab = v.finite_scheme(k2);
    good_sequence out;
    for (std::size_t g = tab.rank_begin[static_cast<std::size_t>(k)]; g < tab.rank_begin[static_cast<std::size_t>(k) + 1]; ++g) {
        const auto& G = tab.sets[g];
        if (!contains(G, tb)) continue;
        for (const auto& e : T) {
            good_entry j{{iota_set(ta + 1, tb + 1)}, G[e.z]};
            bool ok = true;
            for (const auto& block : e.blocks) {
                auto img = select(G, std::vector<u64>(block.begin(), block.end()));
                if (!is_interval(img)) {
                    ok = false;
                    break;
                }
                j.blocks.push_back(std::move(img));
            }
            if (ok) out.push_back(std::move(j));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (const auto& e : out)
        if (!is_good_entry(e, ta, ty.m(k2)))
            fail(errc::invariant_violation, "Trans produced " + entry_to_string(e) + ", which is not (alpha,k')-good");
    return out;
}

bool trans_hypotheses(const universe& u, ordinal alpha, ordinal beta, ordinal xi, level k2, level l) {
    if (l < k2 + 1) return false;
    auto bk2 = u.closure(beta, k2);
    if (alpha >= beta || !contains(bk2, alpha)) return false;
    auto bl = u.closure(beta, l);
    auto xl = u.closure(xi, l);
    if (bl.size() > xl.size()) return false;
    if (!contains(u.closure(xi, k2), xl[bl.size() - 1])) return false;
    u64 ta = u.closure_position(alpha, k2), tb = bk2.size() - 1;
    ord_set run(bk2.begin() + static_cast<std::ptrdiff_t>(ta + 1), bk2.begin() + static_cast<std::ptrdiff_t>(tb + 1));
    return is_interval_in(run, bl);
}

trans_report verify_trans_equiv(const universe& u, const trans_grid& g) {
    trans_report rep;
    const auto& ty = u.type();
    for (ordinal beta : g.betas)
        for (level k = std::max<level>(g.k_lo, 2); k <= g.k_hi; ++k) {
            u64 t = u.closure_position(beta, k);
            auto entries = good_entries(ty, t, k, t + 1, g.max_blocks);
            for (level k2 = k + 1; k2 <= g.k2_hi; ++k2)
                for (ordinal alpha : u.closure(beta, k2)) {
                    if (alpha >= beta) break;
                    std::map<std::size_t, good_sequence> images;
                    for (ordinal xi : g.xis)
                        for (level l = k2 + 1; l <= g.l_hi; ++l) {
                            rep.scanned += entries.size();
                            if (!trans_hypotheses(u, alpha, beta, xi, k2, l)) continue;
                            for (std::size_t i = 0; i < entries.size(); ++i) {
                                good_sequence T{entries[i]};
                                auto it = images.find(i);
                                if (it == images.end()) it = images.emplace(i, trans(u, k, k2, alpha, beta, T)).first;
                                bool rhs = checkmark(u, beta, xi, k, l, T).approved;
                                bool lhs = !it->second.empty() && checkmark(u, alpha, xi, k2, l, it->second).approved;
                                ++rep.tuples;
                                if (lhs && rhs) ++rep.approved;
                                if (lhs != rhs) rep.counterexamples.push_back({alpha, beta, xi, k, k2, l, entries[i], lhs, rhs});
                            }
                        }
                }
        }
    return rep;
}

bool accepted(const universe& u, const ord_set& c, const ord_set& g, level k, level l, ordinal beta, ordinal delta,
              const good_sequence& T) {
    if (c.empty() || !is_strictly_sorted(c)) return false;
    if (k >= l) fail(errc::precondition_violation, "acceptance needs k < l");
    const auto& ty = u.type();
    if (g.size() != ty.m(l) || !u.is_member(g)) return false;
    auto d = decompose_by_position(ty, g, l);
    if (!captures_decomposed(ty, l, d, singletons(c))) return false;
    if (below(u.closure(beta, l - 1), delta) != d.root) return false;
    return checkmark(u, beta, c.front(), k, l - 1, T).approved;
}

j_result j_value(const universe& u, level k, level l, ordinal beta, ordinal delta, const ord_set& d,
                 const good_sequence& T, const scan_bounds& b) {
    if (delta != omega_times(1)) fail(errc::precondition_violation, "only delta = omega is enumerated");
    if (beta < delta) fail(errc::precondition_violation, "acceptance needs delta < beta");
    if (k >= l) fail(errc::precondition_violation, "acceptance needs k < l");
    for (ordinal x : d)
        if (x >= delta) fail(errc::precondition_violation, "the guess set must lie below delta");
    j_result res;
    if (d.empty()) return res;
    const auto& ty = u.type();
    auto root = below(u.closure(beta, l - 1), delta);
    if (root.size() != ty.r(l)) return res;
    u64 nl = ty.n(l);
    scheme_view v(ty);
    v.for_each_of_rank_within(l, b.window, [&](const ord_set& G) {
        if (++res.sets_scanned > b.max_sets)
            fail(errc::scan_budget_exceeded, "more than " + std::to_string(b.max_sets) + " members in the window");
        auto dec = decompose_by_position(ty, G, l);
        if (dec.root != root) return;
        for (ordinal c0 : set_intersection(d, set_difference(dec.pieces[0], dec.root))) {
            ord_set c{c0};
            for (u64 i = 1; i < nl; ++i) {
                auto ci = transport_image(dec.pieces[0], dec.pieces[i], {c0}).front();
                if (!contains(d, ci)) break;
                c.push_back(ci);
            }
            if (c.size() <= res.j) continue;
            if (!checkmark(u, beta, c0, k, l - 1, T).approved) continue;
            res.j = c.size();
            res.c = c;
            res.g = G;
        }
    });
    return res;
}

std::vector<ordinal> limits_below(ordinal beta) {
    std::vector<ordinal> out;
    for (u64 i = 1; omega_times(i) < beta; ++i) out.push_back(omega_times(i));
    return out;
}

std::vector<ih2_row> check_ih2_window(const universe& u, ordinal delta, ordinal beta, level k, const good_sequence& T,
                                      level l_lo, level l_hi, const ord_set& d, const scan_bounds& b) {
    if (!is_limit(delta) || delta >= beta) fail(errc::precondition_violation, "delta must be a limit below beta");
    require_level(k, "IH2");
    if (l_lo <= k) fail(errc::precondition_violation, "the window must start above k");
    const auto& ty = u.type();
    std::vector<ih2_row> rows;
    for (level l = l_lo; l <= l_hi; ++l) {
        ih2_row row;
        row.l = l;
        row.clause_a = below(u.closure(beta, l - 1), delta).size() == ty.r(l);
        u64 seen = 0;
        row.clause_b = true;
        for_each_subset(d, ty.n(l), [&](const ord_set& c) {
            if (++seen > b.max_sets) fail(errc::scan_budget_exceeded, "too many candidate tuples");
            if (row.clause_b && ordinal_tuple_captured(u, c) == l) {
                row.clause_b = false;
                row.detail = "fully captured " + to_string(c);
            }
        });
        auto jr = j_value(u, k, l, beta, delta, d, T, b);
        row.j = jr.j;
        auto x = xi(u, beta, l);
        if (jr.j == 0) {
            row.witness = x == 0;
        } else if (x == static_cast<std::int64_t>(jr.j)) {
            auto F = u.member_containing(beta, l);
            auto dec = decompose_by_position(ty, F, l);
            for (ordinal c0 : set_intersection(d, set_difference(dec.pieces[0], dec.root))) {
                ord_set c{c0};
                for (u64 i = 1; i < jr.j; ++i) {
                    auto ci = transport_image(dec.pieces[0], dec.pieces[i], {c0}).front();
                    if (!contains(d, ci)) break;
                    c.push_back(ci);
                }
                if (c.size() == jr.j && accepted(u, c, F, k, l, beta, delta, T)) {
                    row.witness = true;
                    if (row.detail.empty()) row.detail = "accepted " + to_string(c) + " with " + to_string(F);
                    break;
                }
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace cs
