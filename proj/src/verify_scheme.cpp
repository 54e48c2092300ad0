#include <algorithm>
#include <set>

#include "cs/error.hpp"
#include "cs/io.hpp"
#include "cs/metrics.hpp"
#include "verify_suites.hpp"

namespace cs::suites {

namespace {

// the members of fam of rank j contained in f
std::vector<ord_set> members_inside(const std::vector<ord_set>& fam, std::uint64_t size, const ord_set& f) {
    std::vector<ord_set> out;
    for (const auto& g : fam)
        if (g.size() == size && is_subset(g, f)) out.push_back(g);
    return out;
}

ord_set subset_of_mask(std::uint64_t mask, std::uint64_t m) {
    ord_set s;
    for (std::uint64_t i = 0; i < m; ++i)
        if (mask >> i & 1) s.push_back(i);
    return s;
}

}  // namespace

suite_report type_suite(const verify_options& opt) {
    suite_report rep;
    rep.suite = "type";
    rep.type = opt.type ? opt.type->name() : "builtins";
    std::vector<type_spec> types;
    if (opt.type)
        types.push_back(*opt.type);
    else
        for (const auto& n : builtin_type_names()) types.push_back(*builtin_type(n));
    level K = depth_or(opt, 20);

    auto& valid = rep.add("validate_type");
    auto& fold = rep.add("m_fold_oracle");
    auto& growth = rep.add("m_increasing_r_below");
    auto& round = rep.add("json_round_trip");
    for (const auto& t : types) {
        level k_top = std::min(K, t.depth());
        auto v = validate_type(t, k_top);
        valid.record(v.ok(), [&] {
            for (const auto& e : v.entries)
                if (!e.pass) return cat(t.name(), " clause ", e.clause, ": ", e.message);
            return t.name();
        });
        auto m = compute_m(t, k_top);
        std::uint64_t acc = 1;
        for (level k = 0; k <= k_top; ++k) {
            if (k > 0) acc = t.r(k) + (acc - t.r(k)) * t.n(k);
            fold.record(m.at(k) == acc && t.m(k) == acc,
                        [&] { return cat(t.name(), " k=", k, " m=", m.at(k), " fold=", acc); });
            if (k < k_top)
                growth.record(t.m(k + 1) > t.m(k) && t.r(k + 1) < t.m(k), [&] { return cat(t.name(), " k=", k); });
        }
        auto back = type_from_json(json::parse(type_to_json(t).dump()));
        round.record(back == t && back.name() == t.name(), [&] { return t.name(); });
    }
    return rep;
}

suite_report scheme_suite(const verify_options& opt) {
    type_spec t = type_or(opt, "T2");
    level K = depth_or(opt, 6);
    auto rep = start("scheme", t);
    scheme_view view(t);
    table_universe oracle(t, K);
    const auto& top = oracle.sets();

    auto& c1 = rep.add("axiom1_cofinal");
    auto& c2 = rep.add("axiom2_cardinality");
    auto& c3 = rep.add("axiom3_initial_segment");
    auto& c4 = rep.add("axiom4_delta_system");
    auto& restr = rep.add("restriction");
    auto& indep = rep.add("amalgamation_oracle");
    auto& cover = rep.add("cover_by_rank_k");
    auto& mixed = rep.add("mixed_rank_intersection");
    auto& member = rep.add("is_member_agrees");
    auto& decomp = rep.add("decompose_agrees");
    auto& trans = rep.add("transport_preserves");
    auto& morass = rep.add("morass_properties");
    auto& json_rt = rep.add("json_round_trip");

    for (level k = 0; k <= K; ++k) {
        const auto& tab = view.finite_scheme(k);
        std::uint64_t m = t.m(k);
        auto fam = tab.sets;

        // (2): every member has size m_j for its rank j
        for (level j = 0; j <= k; ++j)
            for (std::size_t i = tab.rank_begin[j]; i < tab.rank_begin[j + 1]; ++i)
                c2.record(tab.sets[i].size() == t.m(j), [&] { return cat("k=", k, " ", to_string(tab.sets[i])); });

        // (3): same-rank intersections are initial segments of both
        for (level j = 0; j <= k; ++j)
            for (std::size_t a = tab.rank_begin[j]; a < tab.rank_begin[j + 1]; ++a)
                for (std::size_t b = a + 1; b < tab.rank_begin[j + 1]; ++b) {
                    auto x = set_intersection(tab.sets[a], tab.sets[b]);
                    c3.record(is_initial_segment(x, tab.sets[a]) && is_initial_segment(x, tab.sets[b]),
                              [&] { return cat(to_string(tab.sets[a]), " ", to_string(tab.sets[b])); });
                }

        // (4): the rank-(j-1) members inside F are exactly n_j pieces of a Delta-system
        for (level j = 1; j <= k; ++j)
            for (std::size_t a = tab.rank_begin[j]; a < tab.rank_begin[j + 1]; ++a) {
                const auto& f = tab.sets[a];
                auto pieces = members_inside(fam, t.m(j - 1), f);
                bool ok = pieces.size() == t.n(j);
                ord_set root, uni;
                if (ok) {
                    root = pieces[0];
                    for (const auto& p : pieces) {
                        root = set_intersection(root, p);
                        uni = set_union(uni, p);
                    }
                    ok = uni == f && root.size() == t.r(j);
                    for (std::size_t i = 0; ok && i < pieces.size(); ++i)
                        for (std::size_t i2 = i + 1; ok && i2 < pieces.size(); ++i2)
                            ok = set_intersection(pieces[i], pieces[i2]) == root;
                    ord_set prev = root;
                    for (std::size_t i = 0; ok && i < pieces.size(); ++i) {
                        auto tail = set_difference(pieces[i], root);
                        ok = !tail.empty() && precedes(prev, tail);
                        prev = tail;
                    }
                }
                c4.record(ok, [&] { return cat("rank ", j, " member ", to_string(f), " pieces ", pieces.size()); });
            }

        // (1): every A inside m_k lies in a member of rank rho^A, found through stored traces
        auto covered = [&](const ord_set& s) {
            level d = rho_diameter(oracle, s);
            if (d > K) return false;
            const auto& g = oracle.member_containing(s.back(), d);
            if (!is_subset(s, g)) return false;
            for (level j = 0; j < d; ++j)
                if (is_subset(s, oracle.member_containing(s.back(), j))) return false;
            return true;
        };
        if (m <= 16) {
            for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
                auto s = subset_of_mask(mask, m);
                c1.record(covered(s), [&] { return cat("k=", k, " ", to_string(s)); });
            }
        } else {
            for (std::uint64_t i = 0; i < 10000; ++i) {
                std::uint64_t h = mix64(i + 1000003ULL * static_cast<std::uint64_t>(k));
                std::uint64_t size = 1 + h % std::min<std::uint64_t>(m, 12);
                ord_set s;
                for (std::uint64_t j = 0; s.size() < size; ++j) {
                    ordinal x = mix64(h + j) % m;
                    if (!contains(s, x)) s.insert(std::upper_bound(s.begin(), s.end(), x), x);
                }
                c1.record(covered(s), [&] { return cat("k=", k, " ", to_string(s)); });
            }
        }

        // restriction to m_j for j <= k
        for (level j = 0; j <= k; ++j) {
            std::vector<ord_set> inside;
            for (const auto& g : fam)
                if (g.back() < t.m(j)) inside.push_back(g);
            auto small = view.finite_scheme(j).sets;
            std::sort(inside.begin(), inside.end());
            std::sort(small.begin(), small.end());
            restr.record(inside == small, [&] { return cat("F(m_", j, ") vs F(m_", k, ") cap m_", j); });
        }

        auto rebuilt = build_finite_scheme(t, k);
        std::sort(rebuilt.begin(), rebuilt.end());
        auto sorted_fam = fam;
        std::sort(sorted_fam.begin(), sorted_fam.end());
        indep.record(rebuilt == sorted_fam, [&] { return cat("k=", k, " sizes ", rebuilt.size(), " ", fam.size()); });

        // the stored family is also exactly the table oracle restricted to m_k
        std::vector<ord_set> from_top;
        for (const auto& g : top)
            if (g.back() < m) from_top.push_back(g);
        indep.record(from_top == sorted_fam, [&] { return cat("k=", k, " vs m_", K, " restriction"); });

        if (m <= 16) {
            for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
                auto s = subset_of_mask(mask, m);
                bool stored = std::binary_search(sorted_fam.begin(), sorted_fam.end(), s);
                member.record(stored == view.is_member(s), [&] { return cat("k=", k, " ", to_string(s)); });
            }
        } else {
            for (const auto& g : fam) member.record(view.is_member(g), [&] { return to_string(g); });
        }

        auto back = level_from_json(level_to_json(tab, m));
        json_rt.record(back.k == tab.k && back.sets == tab.sets && back.rank_begin == tab.rank_begin,
                       [&] { return cat("k=", k); });
    }

    const auto& tabK = view.finite_scheme(K);
    const auto& famK = tabK.sets;
    for (level l = 1; l <= K; ++l)
        for (std::size_t a = tabK.rank_begin[l]; a < tabK.rank_begin[l + 1]; ++a) {
            const auto& f = famK[a];
            for (level j = 0; j <= l; ++j) {
                ord_set uni;
                for (const auto& g : members_inside(famK, t.m(j), f)) uni = set_union(uni, g);
                cover.record(uni == f, [&] { return cat(to_string(f), " by rank ", j); });
            }
            auto d = view.decompose(f);
            auto pieces = members_inside(famK, t.m(l - 1), f);
            ord_set root = pieces.empty() ? ord_set{} : pieces[0];
            for (const auto& p : pieces) root = set_intersection(root, p);
            decomp.record(d.pieces == pieces && d.root == root && view.rank_of(f) == l,
                          [&] { return to_string(f); });
        }

    // mixed ranks, within m_4
    level Km = std::min<level>(K, 4);
    const auto& tab4 = view.finite_scheme(Km);
    for (level k = 0; k <= Km; ++k)
        for (level l = k; l <= Km; ++l)
            for (std::size_t a = tab4.rank_begin[k]; a < tab4.rank_begin[k + 1]; ++a)
                for (std::size_t b = tab4.rank_begin[l]; b < tab4.rank_begin[l + 1]; ++b) {
                    const auto& e = tab4.sets[a];
                    const auto& f = tab4.sets[b];
                    bool ok = is_initial_segment(set_intersection(e, f), e);
                    if (ok && k < l && is_subset(e, f)) {
                        auto d = view.decompose(f);
                        int count = 0;
                        for (const auto& p : d.pieces) count += is_subset(e, p);
                        ok = is_subset(e, d.root) ? count == static_cast<int>(d.pieces.size()) : count == 1;
                    }
                    mixed.record(ok, [&] { return cat(to_string(e), " ", to_string(f)); });
                }

    // transport between equal-rank members, rank <= 2, within m_4
    for (level j = 0; j <= std::min<level>(Km, 2); ++j)
        for (std::size_t a = tab4.rank_begin[j]; a < tab4.rank_begin[j + 1]; ++a)
            for (std::size_t b = tab4.rank_begin[j]; b < tab4.rank_begin[j + 1]; ++b) {
                const auto& f = tab4.sets[a];
                const auto& g = tab4.sets[b];
                for (level i = 0; i <= j; ++i)
                    for (const auto& s : members_inside(tab4.sets, t.m(i), f)) {
                        auto img = view.transport(f, g, s);
                        bool ok = view.is_member(img) && view.rank_of(img) == i;
                        if (ok && i > 0) {
                            auto ds = view.decompose(s);
                            auto di = view.decompose(img);
                            for (std::size_t p = 0; ok && p < ds.pieces.size(); ++p)
                                ok = view.transport(f, g, ds.pieces[p]) == di.pieces[p];
                            ok = ok && transport_image(f, g, ds.root) == di.root;
                        }
                        trans.record(ok, [&] { return cat(to_string(f), "->", to_string(g), " ", to_string(s)); });
                    }
            }

    bool binary = t.binary_through(Km);
    if (binary) {
        for (level k = 1; k <= Km; ++k) {
            const auto& fam = view.finite_scheme(k).sets;
            morass.record(is_homogeneous(fam) && is_directed(fam) && is_locally_almost_directed(fam),
                          [&] { return cat("k=", k); });
        }
    } else {
        morass.note = "type is not binary; morass properties apply to binary types";
    }
    return rep;
}

}  // namespace cs::suites
