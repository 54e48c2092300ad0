#include <algorithm>
#include <map>
#include <set>

#include "cs/constructions.hpp"
#include "cs/error.hpp"
#include "cs/metrics.hpp"
#include "verify_suites.hpp"

namespace cs::suites {

namespace {

// Delta from stored traces; omega is reported as -1
level delta_of(const table_universe& u, ordinal a, ordinal b) {
    if (a == b) return -1;
    for (level k = 0; k <= u.top(); ++k)
        if (u.closure_size(a, k) != u.closure_size(b, k)) return k;
    fail(errc::invariant_violation, "table: closure sizes agree through the top level");
}

struct window_tables {
    std::uint64_t N;
    std::vector<std::vector<level>> rho;
    std::vector<std::vector<level>> delta;  // -1 on the diagonal
};

window_tables tables_for(const universe& u, std::uint64_t N) {
    window_tables w{N, {}, {}};
    w.rho.assign(N, std::vector<level>(N, 0));
    w.delta.assign(N, std::vector<level>(N, -1));
    for (ordinal a = 0; a < N; ++a)
        for (ordinal b = 0; b < N; ++b) {
            w.rho[a][b] = rho(u, a, b);
            auto d = delta(u, a, b);
            w.delta[a][b] = d.infinite ? -1 : d.k;
        }
    return w;
}

// the recursion for <_F, evaluated over stored traces only
bool countryman_oracle(const table_universe& u, ordinal a, ordinal b) {
    level d = delta_of(u, a, b);
    auto ca = u.closure(a, d), cb = u.closure(b, d);
    auto common = set_intersection(ca, cb);
    if (common.size() >= u.type().r(d)) return ca.size() < cb.size();
    return countryman_oracle(u, set_difference(ca, cb).front(), set_difference(cb, ca).front());
}

}  // namespace

suite_report metric_suite(const verify_options& opt) {
    type_spec t = type_or(opt, "T2");
    std::uint64_t N = window_or(opt, 50);
    level K = depth_or(opt, 6);
    auto rep = start("metric", t);
    scheme_view view(t);
    level L = std::max(K, level_covering(t, N));
    table_universe oracle(t, L);

    auto& ma = rep.add("metric_a_zero_iff_equal");
    auto& mb = rep.add("metric_b_symmetric");
    auto& mc = rep.add("metric_c_triangle");
    auto& md = rep.add("metric_d_closure_is_ball");
    auto& cl = rep.add("closure_oracle");
    auto& ci = rep.add("closure_independence");
    auto& ro = rep.add("rho_oracle");
    auto& rt = rep.add("maximal_closed_round_trip");
    auto& dl = rep.add("delta_le_rho");
    auto& dorc = rep.add("delta_oracle");
    auto& xp = rep.add("xi_is_piece_index");
    auto& os = rep.add("osc_witnesses_below_rho");
    auto& ft = rep.add("f_strict_from_rho");

    auto w = tables_for(view, N);
    for (ordinal a = 0; a < N; ++a)
        for (ordinal b = 0; b < N; ++b) {
            level r = w.rho[a][b];
            ma.record((r == 0) == (a == b), [&] { return cat(a, ",", b); });
            mb.record(r == w.rho[b][a], [&] { return cat(a, ",", b); });
            ro.record(r == oracle.rho(a, b), [&] { return cat(a, ",", b, " ", r, " vs ", oracle.rho(a, b)); });
            if (a != b) {
                dl.record(w.delta[a][b] >= 0 && w.delta[a][b] <= r, [&] { return cat(a, ",", b); });
                dorc.record(w.delta[a][b] == delta_of(oracle, a, b), [&] { return cat(a, ",", b); });
            }
            if (a < b) {
                for (ordinal c = a + 1; c < N; ++c)
                    mc.record(r <= std::max(w.rho[a][c], w.rho[b][c]), [&] { return cat(a, ",", b, ",", c); });
                auto o = osc(view, a, b, 0);
                std::uint64_t brute = 0;
                bool inside = true;
                for (level s = 0; s < L; ++s) {
                    auto fa = oracle.closure_size(a, s), fb = oracle.closure_size(b, s);
                    auto fa1 = oracle.closure_size(a, s + 1), fb1 = oracle.closure_size(b, s + 1);
                    if (fa <= fb && fa1 > fb1) ++brute;
                }
                for (auto s : o.witnesses) inside = inside && s >= 0 && s < r;
                os.record(inside && o.count == brute && o.witnesses.size() == o.count,
                          [&] { return cat(a, ",", b, " count ", o.count, " brute ", brute); });
                bool strict = true;
                for (level j = r; j <= L; ++j) strict = strict && oracle.closure_size(a, j) < oracle.closure_size(b, j);
                ft.record(strict, [&] { return cat(a, ",", b); });
            }
        }

    for (ordinal b = 0; b < N; ++b)
        for (level k = 0; k <= K; ++k) {
            auto c = view.closure(b, k);
            cl.record(c == oracle.closure(b, k), [&] { return cat("(", b, ")_", k); });
            ord_set ball;
            for (ordinal a = 0; a <= b; ++a)
                if (w.rho[a][b] <= k) ball.push_back(a);
            md.record(c == ball && c.back() == b, [&] { return cat("(", b, ")_", k, " = ", to_string(c)); });
            if (k >= 1) {
                // Xi_b(k) against the piece of the stored member holding b
                const auto& f = oracle.member_containing(b, k);
                std::int64_t piece = -1;
                std::vector<ord_set> pieces;
                for (const auto& g : oracle.sets())
                    if (g.size() == t.m(k - 1) && is_subset(g, f)) pieces.push_back(g);
                ord_set root = pieces.front();
                for (const auto& p : pieces) root = set_intersection(root, p);
                if (!contains(root, b))
                    for (std::size_t i = 0; i < pieces.size(); ++i)
                        if (contains(pieces[i], b)) piece = static_cast<std::int64_t>(i);
                xp.record(xi(view, b, k) == piece, [&] { return cat("Xi_", b, "(", k, ")"); });
            }
        }

    // every stored member of rank k <= K and every b in it below N
    for (const auto& f : oracle.sets()) {
        level k = oracle.rank_of(f);
        if (k > K) continue;
        for (auto b : f)
            if (b < N) ci.record(below(f, b + 1) == view.closure(b, k), [&] { return cat(to_string(f), " at ", b); });
    }

    // maximal closed sets of diameter k, from rho alone, inside m_W
    level W = level_covering(t, N);
    std::uint64_t M = t.m(W);
    for (level k = 0; k <= std::min<level>(K, 4); ++k) {
        std::vector<ord_set> closed;
        for (ordinal g = 0; g < M; ++g) {
            ord_set c;
            for (ordinal a = 0; a <= g; ++a)
                if (view.rho(a, g) <= k) c.push_back(a);
            if (rho_diameter(view, c) == k) closed.push_back(c);
        }
        std::vector<ord_set> maximal;
        for (const auto& c : closed) {
            bool top = std::none_of(closed.begin(), closed.end(),
                                    [&](const ord_set& d) { return d.size() > c.size() && is_subset(c, d); });
            if (top) maximal.push_back(c);
        }
        std::sort(maximal.begin(), maximal.end());
        maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());
        auto stored = view.elements_of_rank_within(k, M);
        std::sort(stored.begin(), stored.end());
        rt.record(maximal == stored, [&] { return cat("k=", k, " ", maximal.size(), " vs ", stored.size()); });
    }
    return rep;
}

suite_report lemmas_suite(const verify_options& opt) {
    type_spec t = type_or(opt, "T2");
    std::uint64_t N = window_or(opt, 50);
    level K = depth_or(opt, 6);
    auto rep = start("lemmas", t);
    scheme_view view(t);
    auto w = tables_for(view, N);

    auto& xa = rep.add("lemmaxi_a");
    auto& xb = rep.add("lemmaxi_b");
    auto& xc = rep.add("lemmaxi_c");
    auto& xd = rep.add("lemmaxidelta");
    auto& c1a = rep.add("countrymanlemma1_a");
    auto& c1b = rep.add("countrymanlemma1_b");
    auto& c1c = rep.add("countrymanlemma1_c");
    auto& c1d = rep.add("countrymanlemma1_d");
    auto& c3 = rep.add("countrymanlemma3");
    auto& c5 = rep.add("countrymanlemma5");
    auto& cx = rep.add("corollaryxi");

    auto D = [&](ordinal a, ordinal b) -> level {
        if (a < N && b < N) return w.delta[a][b];
        auto d = delta(view, a, b);
        return d.infinite ? -1 : d.k;
    };

    for (ordinal a = 0; a < N; ++a)
        for (ordinal b = a + 1; b < N; ++b) {
            level r = w.rho[a][b], d = w.delta[a][b];
            for (level k = 1; k <= K; ++k) {
                auto xa_ = xi(view, a, k), xb_ = xi(view, b, k);
                if (k < d) xa.record(xa_ == xb_, [&] { return cat(a, ",", b, " k=", k); });
                if (k == r) xb.record(0 <= xa_ && xa_ < xb_, [&] { return cat(a, ",", b, " k=", k); });
                if (k > r) xc.record(xa_ == -1 || xa_ == xb_, [&] { return cat(a, ",", b, " k=", k); });
            }
            auto xad = xi(view, a, d), xbd = xi(view, b, d);
            xd.record(xad >= 0 && xbd >= 0 && xad != xbd, [&] { return cat(a, ",", b, " Delta=", d); });
        }

    for (ordinal a = 0; a < N; ++a)
        for (ordinal b = 0; b < N; ++b) {
            if (a == b) continue;
            level d = w.delta[a][b];
            // phi: (a)_{d-1} -> (b)_{d-1}
            auto ca = view.closure(a, d - 1), cb = view.closure(b, d - 1);
            if (ca.size() != cb.size()) {
                c1a.record(false, [&] { return cat(a, ",", b, " closures differ below Delta"); });
                continue;
            }
            for (std::size_t gi = 0; gi < ca.size(); ++gi) {
                ordinal g = ca[gi], pg = cb[gi];
                if (g == pg) continue;
                level dg = D(g, pg);
                c1d.record(dg >= d, [&] { return cat(a, ",", b, " gamma=", g); });
                auto xg = xi(view, g, d);
                c5.record((dg > d) == (xg == -1) &&
                              (xg < 0 || (xg == xi(view, a, d) && xi(view, pg, d) == xi(view, b, d))),
                          [&] { return cat(a, ",", b, " gamma=", g); });
            }
            for (std::size_t di = 0; di < ca.size(); ++di) {
                ordinal dl = ca[di], pd = cb[di];
                if (dl == pd) continue;
                level dd = D(dl, pd);
                c1b.record(w.rho[a][b] >= dd, [&] { return cat(a, ",", b, " delta=", dl); });
                for (std::size_t gi = di + 1; gi < ca.size(); ++gi) {
                    ordinal g = ca[gi], pg = cb[gi];
                    c1a.record(g != pg, [&] { return cat(a, ",", b, " delta=", dl, " gamma=", g); });
                    if (g != pg) c1c.record(dd >= D(g, pg), [&] { return cat(a, ",", b, " delta=", dl, " gamma=", g); });
                }
            }
        }

    for (ordinal a = 0; a < N; ++a)
        for (ordinal b = 0; b < N; ++b)
            for (ordinal c = 0; c < N; ++c) {
                if (a == b || b == c || a == c) continue;
                if (w.delta[a][b] < w.delta[b][c])
                    c3.record(w.delta[a][c] == w.delta[a][b], [&] { return cat(a, ",", b, ",", c); });
                if (a < b && b < c && w.rho[a][c] < w.rho[b][c])
                    cx.record(w.rho[a][b] < w.rho[b][c], [&] { return cat(a, ",", b, ",", c); });
            }
    return rep;
}

suite_report countryman_suite(const verify_options& opt) {
    type_spec t = type_or(opt, "T2");
    std::uint64_t N = window_or(opt, 40);
    std::uint64_t Nc = std::min<std::uint64_t>(N, 30);
    auto rep = start("countryman", t);
    scheme_view view(t);
    table_universe oracle(t, level_covering(t, N));

    auto& tot = rep.add("total_antisymmetric");
    auto& tr = rep.add("transitive");
    auto& orc = rep.add("recursion_oracle");
    auto& lab = rep.add("label_oracle");
    auto& ch = rep.add("label_classes_are_chains");
    auto& l2 = rep.add("countrymanlemma2");
    auto& fa = rep.add("case_a_size_vs_xi");

    std::vector<std::vector<bool>> lt(N, std::vector<bool>(N, false));
    for (ordinal a = 0; a < N; ++a)
        for (ordinal b = 0; b < N; ++b)
            if (a != b) {
                lt[a][b] = countryman_less(view, a, b);
                orc.record(lt[a][b] == countryman_oracle(oracle, a, b), [&] { return cat(a, ",", b); });
            }
    for (ordinal a = 0; a < N; ++a) {
        tot.record(!countryman_less(view, a, a), [&] { return cat(a, " < ", a); });
        for (ordinal b = a + 1; b < N; ++b)
            tot.record(lt[a][b] != lt[b][a], [&] { return cat(a, ",", b); });
    }
    for (ordinal a = 0; a < N; ++a)
        for (ordinal b = 0; b < N; ++b)
            for (ordinal c = 0; c < N; ++c)
                if (a != b && b != c && a != c && lt[a][b] && lt[b][c])
                    tr.record(lt[a][c], [&] { return cat(a, "<", b, "<", c); });

    auto le = [&](ordinal x, ordinal y) { return x == y || lt[x][y]; };
    std::map<chain_label, std::vector<std::pair<ordinal, ordinal>>> classes;
    for (ordinal a = 0; a < Nc; ++a)
        for (ordinal b = a + 1; b < Nc; ++b) {
            auto l = countryman_chain_index(view, a, b);
            level z = oracle.rho(a, b);
            lab.record(l.z == z && l.x == oracle.closure_size(a, z) && l.y == oracle.closure_size(b, z),
                       [&] { return cat(a, ",", b); });
            classes[l].push_back({a, b});
        }
    for (const auto& [l, members] : classes)
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                auto [a, b] = members[i];
                auto [c, d] = members[j];
                bool comparable = (le(a, c) && le(b, d)) || (le(c, a) && le(d, b));
                ch.record(comparable, [&] { return cat("(", a, ",", b, ") (", c, ",", d, ")"); });
            }

    for (ordinal a = 0; a < N; ++a)
        for (ordinal b = 0; b < N; ++b) {
            if (a == b) continue;
            auto d = delta(view, a, b).k;
            auto ca = view.closure(a, d - 1), cb = view.closure(b, d - 1);
            for (std::size_t i = 0; i < ca.size(); ++i)
                if (ca[i] != cb[i])
                    l2.record(lt[a][b] == countryman_less(view, ca[i], cb[i]),
                              [&] { return cat(a, ",", b, " gamma=", ca[i]); });
            auto da = view.closure(a, d), db = view.closure(b, d);
            if (set_intersection(da, db).size() >= t.r(d))
                fa.record((da.size() < db.size()) == (xi(view, a, d) < xi(view, b, d)), [&] { return cat(a, ",", b); });
        }
    return rep;
}

suite_report aronszajn_suite(const verify_options& opt) {
    type_spec t = type_or(opt, "T2");
    std::uint64_t N = window_or(opt, 30);
    auto rep = start("aronszajn", t);
    scheme_view view(t);
    level top = level_covering(t, N);

    auto& tab = rep.add("node_is_rho_row");
    auto& coh = rep.add("coherence_beyond_rho");
    auto& kmin = rep.add("k_f_minimal");
    auto& anti = rep.add("label_classes_are_antichains");

    std::vector<aronszajn_function> nodes;
    for (ordinal b = 0; b < N; ++b) {
        auto f = aronszajn_node(view, b);
        bool ok = f.values.size() == b + 1;
        for (ordinal x = 0; ok && x <= b; ++x) ok = f.values[x] == view.rho(x, b);
        tab.record(ok, [&] { return cat("beta=", b); });
        nodes.push_back(f);
        for (ordinal x = 0; x <= b; ++x)
            for (level v = 0; v <= top; ++v)
                if (v != f.values[x]) nodes.push_back(with_overrides(view, b, {{x, v}}));
    }
    for (ordinal a = 0; a < N; ++a)
        for (ordinal b = a + 1; b < N; ++b) {
            auto cl = view.closure(a, view.rho(a, b));
            for (ordinal x = 0; x <= a; ++x)
                if (!contains(cl, x))
                    coh.record(view.rho(x, a) == view.rho(x, b), [&] { return cat(a, ",", b, " xi=", x); });
        }

    auto clauses_hold = [&](const aronszajn_function& f, level k) {
        for (ordinal x = 0; x <= f.beta; ++x) {
            bool inside = view.rho(x, f.beta) <= k;
            if (inside ? f.values[x] > k : f.values[x] != view.rho(x, f.beta)) return false;
        }
        return true;
    };
    std::map<antichain_label, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& f = nodes[i];
        auto l = antichain_index(view, f);
        bool ok = clauses_hold(f, l.k) && (l.k == 0 || !clauses_hold(f, l.k - 1)) &&
                  l.s == view.closure_size(f.beta, l.k);
        kmin.record(ok, [&] { return cat("beta=", f.beta, " k=", l.k); });
        classes[l].push_back(i);
    }
    for (const auto& [l, idx] : classes)
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = i + 1; j < idx.size(); ++j) {
                const auto* f = &nodes[idx[i]];
                const auto* g = &nodes[idx[j]];
                if (f->beta == g->beta) {
                    anti.record(f->values != g->values, [&] { return cat("duplicate node at ", f->beta); });
                    continue;
                }
                if (f->beta > g->beta) std::swap(f, g);
                bool below = std::equal(f->values.begin(), f->values.end(), g->values.begin());
                auto fb = f->values[f->beta], gb = g->values[f->beta];
                anti.record(!below && fb <= l.k && l.k < gb,
                            [&] { return cat("beta_f=", f->beta, " beta_g=", g->beta, " k=", l.k); });
            }
    return rep;
}

}  // namespace cs::suites
