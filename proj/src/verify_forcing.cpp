#include <algorithm>
#include <set>

#include "cs/capture.hpp"
#include "cs/error.hpp"
#include "cs/forcing.hpp"
#include "cs/ih2.hpp"
#include "cs/metrics.hpp"
#include "verify_suites.hpp"

namespace cs::suites {

namespace {

using u64 = std::uint64_t;

// red_delta read off its definition
ord_set red_oracle(const ord_set& p, ordinal delta) {
    ord_set low;
    for (auto x : p)
        if (x < delta) low.push_back(x);
    ord_set out;
    if (low.empty()) {
        for (u64 i = 0; i < p.size(); ++i) out.push_back(i);
        return out;
    }
    ordinal a = low.back();
    u64 n = 0;
    for (auto x : p)
        if (x >= a) ++n;
    out = low;
    for (u64 i = 1; i < n; ++i) out.push_back(a + i);
    return out;
}

std::optional<level> size_rank(const type_spec& t, u64 size) {
    level k = t.level_containing(size - 1);
    if (t.m(k) == size) return k;
    return std::nullopt;
}

// q <= p: the positions of p inside q form a member of the scheme over |q|
bool leq_oracle(const table_universe& u, const ord_set& q, const ord_set& p) {
    if (!is_subset(p, q) || !size_rank(u.type(), q.size())) return false;
    ord_set pos;
    for (auto x : p) pos.push_back(index_of(q, x));
    return u.is_member(pos);
}

ord_set image_in(const ord_set& p, const ord_set& idx) {
    ord_set out;
    for (auto i : idx) out.push_back(p[i]);
    return out;
}

std::vector<demand> default_demands() {
    ordinal w = omega_times(1);
    return {{demand::kind::root, w + 3, 3, {}}, {demand::kind::contain, 5, 0, {}}};
}

}  // namespace

suite_report forcing_suite(const verify_options& opt) {
    type_spec t = type_or(opt, "T2");
    level K = depth_or(opt, 3);
    auto rep = start("forcing", t);
    omega_ground g(t);
    scheme_view view(t);
    ordinal w = g.gamma();
    u64 W = t.m(std::min<level>(K + 2, t.depth()));
    table_universe table(t, level_covering(t, 2 * W + 1));

    auto& cc = rep.add("cut_is_condition");
    auto& ro = rep.add("red_oracle");
    auto& rt = rep.add("red_cut_round_trip");
    auto& ic = rep.add("is_condition_oracle");
    auto& lc = rep.add("lemmacut");
    auto& lq = rep.add("leq_oracle");
    auto& li = rep.add("lemmainterval");
    auto& fc = rep.add("fragment_condition_shape");
    auto& fp = rep.add("fragment_closure_positional");
    auto& fr = rep.add("fragment_restriction_to_ground");
    auto& fh = rep.add("fragment_rho_positional");
    auto& fm = rep.add("fragment_members_positional");
    auto& fl = rep.add("fragment_log_replay");
    auto& ih = rep.add("fragment_ih1_witness");
    auto& tg = rep.add("trans_grid_size");
    auto& te = rep.add("trans_equivalence");

    // conditions generated by Cut from ground members of rank <= K inside m_{K+1}
    u64 Wc = t.m(K + 1);
    std::vector<ord_set> pool;
    for (level k = 0; k <= K; ++k)
        for (const auto& f : view.elements_of_rank_within(k, Wc))
            for (auto a : f) {
                auto p = cut(g, f, a);
                pool.push_back(p);
                auto cl = check_condition(g, p);
                cc.record(is_condition(g, p) && cl.a && cl.b && cl.c && cl.red_member && cl.k == k,
                          [&] { return cat("Cut(", to_string(f), ",", a, ")"); });
                auto r = red(p, w);
                ro.record(r == red_oracle(p, w), [&] { return to_string(p); });
                auto fresh = set_difference(r, p);
                bool back = table.is_member(r) && !fresh.empty() && cut(g, r, fresh.front()) == p;
                rt.record(back, [&] { return to_string(p); });
                // Cut(F, a) <= p for every F of rank >= k holding a
                for (level l = k; l <= K + 1; ++l)
                    for (const auto& big : view.elements_of_rank_within(l, W)) {
                        if (!contains(big, a)) continue;
                        auto q = cut(g, big, a);
                        lc.record(leq(t, q, p) && leq_oracle(table, q, p),
                                  [&] { return cat("Cut(", to_string(big), ",", a, ") vs ", to_string(p)); });
                    }
            }
    for (const auto& q : pool)
        for (const auto& p : pool)
            lq.record(leq(t, q, p) == leq_oracle(table, q, p), [&] { return cat(to_string(q), " <= ", to_string(p)); });

    // every set of size m_k in [0, m_3) u [w, w + m_3)
    {
        u64 h = t.m(std::min<level>(3, K));
        ord_set host;
        for (u64 i = 0; i < h; ++i) host.push_back(i);
        for (u64 i = 0; i < h; ++i) host.push_back(w + i);
        for (u64 mask = 1; mask < (u64{1} << host.size()); ++mask) {
            ord_set p;
            for (u64 i = 0; i < host.size(); ++i)
                if (mask >> i & 1) p.push_back(host[i]);
            auto k = size_rank(t, p.size());
            if (!k) continue;
            ord_set low = below(p, w);
            bool b = low.empty();
            for (const auto& f : table.of_rank(*k)) b = b || is_initial_segment(low, f);
            ord_set fresh = at_or_above(p, w);
            bool c = fresh == iota_set(w, w + fresh.size());
            bool want = b && c && table.is_member(red_oracle(p, w));
            ic.record(is_condition(g, p) == want, [&] { return to_string(p); });
        }
    }

    for (level k = 0; k <= K + 1; ++k)
        for (const auto& G : view.elements_of_rank_within(k, W))
            for (auto a : G) {
                auto s = below(G, a + 1);
                u64 n = at_or_above(G, a).size();
                for (u64 i = 1; i < n; ++i) s.push_back(a + i);
                li.record(table.is_member(s) && view.is_member(s), [&] { return cat(to_string(G), " at ", a); });
            }

    // the fragment over w*2
    auto demands = default_demands();
    auto f = generic_build(g, demands);
    auto p = f->condition();
    level R = f->rank();
    table_universe pos(t, R);
    fc.record(p.size() == t.m(R) && is_condition(g, p), [&] { return to_string(p); });
    for (u64 i = 0; i < p.size(); ++i)
        for (level k = 0; k <= R; ++k) {
            auto got = f->closure(p[i], k);
            fp.record(got == image_in(p, pos.closure(i, k)), [&] { return cat("(", ordinal_to_string(p[i]), ")_", k); });
            if (p[i] < w) fr.record(got == g.closure(p[i], k), [&] { return cat("(", p[i], ")_", k); });
        }
    for (u64 i = 0; i < p.size(); ++i)
        for (u64 j = 0; j < p.size(); ++j)
            fh.record(f->rho(p[i], p[j]) == pos.rho(i, j),
                      [&] { return cat("rho(", ordinal_to_string(p[i]), ",", ordinal_to_string(p[j]), ")"); });
    for (const auto& s : pos.sets())
        fm.record(f->is_member(image_in(p, s)), [&] { return to_string(image_in(p, s)); });
    {
        std::vector<demand> user;
        for (const auto& r : f->log())
            if (!r.internal) user.push_back(r.request);
        auto again = generic_build(g, user);
        fl.record(again->condition() == p && again->log().size() == f->log().size(), [] { return std::string("replay"); });
    }

    // Trans over the fragment: betas on both sides of the block boundary, every xi in the condition
    trans_grid grid;
    u64 base = below(p, w).size();
    for (u64 i = base >= 5 ? base - 5 : 0; i < std::min<u64>(p.size(), base + 10); ++i) grid.betas.push_back(p[i]);
    grid.xis.assign(p.begin(), p.end());
    grid.k_lo = 2;
    grid.k_hi = 2;
    grid.k2_hi = std::min<level>(4, R);
    grid.l_hi = std::min<level>(6, R);
    grid.max_blocks = 2;
    auto tr = verify_trans_equiv(*f, grid);
    tg.record(tr.tuples >= 1000, [&] { return cat(tr.tuples, " tuples"); });
    tg.note = cat(tr.scanned, " scanned, ", tr.tuples, " meeting the hypotheses, ", tr.approved, " approved");
    te.cases = tr.tuples;
    te.failures = tr.counterexamples.size();
    if (!tr.counterexamples.empty()) {
        const auto& c = tr.counterexamples.front();
        te.counterexample = cat("alpha=", ordinal_to_string(c.alpha), " beta=", ordinal_to_string(c.beta), " xi=",
                                ordinal_to_string(c.xi), " k=", c.k, " k'=", c.k2, " l=", c.l, " z=", c.entry.z);
    }

    // IH1 inside the fragment; this extends the chain, so it runs last
    std::vector<std::pair<ord_set, ordinal>> asks = {{{5, w + 2}, w + 1}, {{0, w}, w}, {{1, 2}, 3}};
    for (const auto& [A, alpha] : asks) {
        try {
            auto F = f->ih1_witness(A, alpha);
            auto k = size_rank(t, F.size());
            bool ok = k && *k >= 1 && f->is_member(F);
            if (ok) {
                auto d = decompose_by_position(t, F, *k);
                ok = is_subset(A, d.pieces[0]) && d.root == below(F, alpha);
            }
            ih.record(ok, [&] { return cat(to_string(A), " / ", ordinal_to_string(alpha), " -> ", to_string(F)); });
        } catch (const error& e) {
            if (e.code() != errc::no_witness_in_budget) throw;
            ih.note += cat(ih.note.empty() ? "" : "; ", to_string(A), " / ", ordinal_to_string(alpha), ": ", e.what());
        }
    }
    return rep;
}

suite_report ih2_suite(const verify_options& opt) {
    type_spec t = type_or(opt, "T2");
    std::uint64_t N = window_or(opt, t.m(5));
    auto rep = start("ih2", t);
    omega_ground g(t);
    ordinal w = g.gamma();
    auto& vac = rep.add("vacuous_in_omega");
    auto& lim = rep.add("limits_below");
    auto& ja = rep.add("j_value_oracle");
    auto& ra = rep.add("row_clause_a_oracle");
    auto& rb = rep.add("row_clause_b_oracle");
    auto& rw = rep.add("row_witness_oracle");
    auto& seen = rep.add("clause_a_failure_flagged");

    for (ordinal b = 0; b < 64; ++b) vac.record(limits_below(b).empty(), [&] { return cat(b); });
    lim.record(limits_below(omega_times(2) + 3) == std::vector<ordinal>{w, omega_times(2)}, [] { return std::string("w2+3"); });
    lim.record(limits_below(w).empty() && limits_below(w + 1) == std::vector<ordinal>{w}, [] { return std::string("w+1"); });

    auto f = generic_build(g, default_demands());
    auto p = f->condition();
    level R = f->rank();
    table_universe pos(t, R);
    table_universe ground_table(t, level_covering(t, N));
    auto truth = captured_by_table(ground_table);
    u64 base = below(p, w).size();
    u64 first = below(p, w + 1).size();
    ord_set d;
    for (ordinal x = 0; x < std::min<u64>(N, 8); ++x) d.push_back(x);
    scan_bounds bounds;
    bounds.window = N;

    level k = 2;
    u64 rows = 0, flagged = 0, holding = 0;
    for (u64 bi = first; bi < std::min<u64>(p.size(), first + 8); ++bi) {
        ordinal beta = p[bi];
        u64 tpos = pos.closure(bi, k).size() - 1;
        good_sequence T;
        for (u64 z = tpos; z < t.m(k); ++z) T.push_back({{}, z});
        level l_hi = std::min<level>(R, ground_table.top());
        auto out = check_ih2_window(*f, w, beta, k, T, k + 1, l_hi, d, bounds);
        for (const auto& row : out) {
            level l = row.l;
            ++rows;
            // clause (a): |(beta)_{l-1} cap w| = r_l, from positions
            auto cl = pos.closure(bi, l - 1);
            u64 low = std::count_if(cl.begin(), cl.end(), [&](auto i) { return i < base; });
            bool a = low == t.r(l);
            ra.record(row.clause_a == a, [&] { return cat("beta=", ordinal_to_string(beta), " l=", l); });
            if (!a) ++flagged;
            // clause (b): no n_l-subset of d fully captured at level l
            bool b = true;
            for (const auto& [c, lv] : truth)
                if (lv.count(l) && c.size() == t.n(l) && is_subset(c, d)) b = false;
            rb.record(row.clause_b == b, [&] { return cat("beta=", ordinal_to_string(beta), " l=", l); });
            // j by brute force over members of rank l in the window and tuples of d
            u64 j = 0;
            ord_set jc;
            for (const auto& G : ground_table.of_rank(l))
                if (G.back() < N)
                    for (u64 mask = 1; mask < (u64{1} << d.size()); ++mask) {
                    ord_set c;
                    for (u64 i = 0; i < d.size(); ++i)
                        if (mask >> i & 1) c.push_back(d[i]);
                    if (c.size() <= j || c.size() > t.n(l)) continue;
                    if (accepted(*f, c, G, k, l, beta, w, T)) j = c.size();
                }
            ja.record(row.j == j, [&] { return cat("beta=", ordinal_to_string(beta), " l=", l, " j ", row.j, " vs ", j); });
            bool wit = false;
            auto x = xi(*f, beta, l);
            if (j == 0) {
                wit = x == 0;
            } else if (x == static_cast<std::int64_t>(j)) {
                auto F = f->member_containing(beta, l);
                for (u64 mask = 1; mask < (u64{1} << d.size()) && !wit; ++mask) {
                    ord_set c;
                    for (u64 i = 0; i < d.size(); ++i)
                        if (mask >> i & 1) c.push_back(d[i]);
                    wit = c.size() == j && accepted(*f, c, F, k, l, beta, w, T);
                }
            }
            rw.record(row.witness == wit, [&] { return cat("beta=", ordinal_to_string(beta), " l=", l); });
            if (row.clause_a && row.clause_b && row.witness) ++holding;
        }
    }
    seen.record(flagged > 0, [] { return std::string("no row with clause (a) failing"); });
    seen.note = cat(rows, " rows, ", flagged, " with clause (a) failing, ", holding, " with every displayed clause");
    return rep;
}

}  // namespace cs::suites
