#include "cs/capture.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "cs/error.hpp"
#include "cs/metrics.hpp"

namespace cs {

std::uint64_t branching_at(const type_spec& t, level l) { return l == 0 ? 1 : t.n(l); }

namespace {

decomposition decomposition_any_rank(const type_spec& t, const ord_set& f, level l) {
    if (l == 0) return decomposition{{f}, {}};
    return decompose_by_position(t, f, l);
}

}  // namespace

bool captures_decomposed(const type_spec& t, level l, const decomposition& d, const std::vector<ord_set>& c) {
    if (c.empty() || c.size() > branching_at(t, l)) return false;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].empty() || !is_strictly_sorted(c[i])) return false;
        if (!is_subset(c[i], d.pieces[i])) return false;
        if (set_difference(c[i], d.root).empty()) return false;
        if (transport_image(d.pieces[0], d.pieces[i], c[0]) != c[i]) return false;
    }
    return true;
}

bool captures(const scheme_view& v, const ord_set& f, const std::vector<ord_set>& c) {
    level l = v.rank_of(f);
    return captures_decomposed(v.type(), l, decomposition_any_rank(v.type(), f, l), c);
}

bool fully_captures(const scheme_view& v, const ord_set& f, const std::vector<ord_set>& c) {
    level l = v.rank_of(f);
    return c.size() == branching_at(v.type(), l) && captures(v, f, c);
}

std::optional<level> ordinal_tuple_captured(const universe& u, const ord_set& c) {
    if (c.empty()) fail(errc::invalid_argument, "empty tuple");
    level l = rho_diameter(u, c);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (xi(u, c[i], l) != static_cast<std::int64_t>(i)) return std::nullopt;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            auto d = delta(u, c[i], c[j]);
            if (d.infinite || d.k != l || u.rho(c[i], c[j]) != l) return std::nullopt;
        }
    return l;
}

std::vector<capture_hit> scan_captured(const scheme_view& v, const capture_query& q) {
    std::vector<capture_hit> hits;
    if (q.window == 0 || q.n == 0 || q.family.size() < q.n) return hits;
    for (const auto& s : q.family)
        if (s.empty() || s.back() >= q.window) fail(errc::invalid_argument, "family member outside the window");
    const auto& t = v.type();
    std::map<ord_set, std::vector<std::size_t>> where;
    for (std::size_t i = 0; i < q.family.size(); ++i) where[q.family[i]].push_back(i);

    level top = t.level_containing(q.window - 1);
    for (level l = std::max<level>(q.k_min + 1, 0); l <= top; ++l) {
        if (q.partition && (l == 0 || q.partition->cell_of(l, t) != q.cell)) continue;
        if (q.n > branching_at(t, l)) continue;
        std::vector<capture_hit> level_hits;
        v.for_each_of_rank_within(l, q.window, [&](const ord_set& f) {
            auto d = decomposition_any_rank(t, f, l);
            for (std::size_t a = 0; a < q.family.size(); ++a) {
                const auto& c0 = q.family[a];
                if (!is_subset(c0, d.pieces[0]) || set_difference(c0, d.root).empty()) continue;
                // images of c_0 in the later pieces, each matched against the family
                std::vector<const std::vector<std::size_t>*> options;
                bool ok = true;
                for (std::size_t i = 1; i < q.n && ok; ++i) {
                    auto it = where.find(transport_image(d.pieces[0], d.pieces[i], c0));
                    if (it == where.end())
                        ok = false;
                    else
                        options.push_back(&it->second);
                }
                if (!ok) continue;
                std::vector<std::size_t> pick(q.n, 0);
                pick[0] = a;
                std::function<void(std::size_t)> choose = [&](std::size_t i) {
                    if (i == options.size()) {
                        level_hits.push_back({l, f, pick});
                        return;
                    }
                    for (auto idx : *options[i]) {
                        pick[i + 1] = idx;
                        choose(i + 1);
                    }
                };
                choose(0);
            }
        });
        std::sort(level_hits.begin(), level_hits.end(), [](const capture_hit& x, const capture_hit& y) {
            if (x.f != y.f) return x.f < y.f;
            return x.indices < y.indices;
        });
        hits.insert(hits.end(), level_hits.begin(), level_hits.end());
    }
    return hits;
}

}  // namespace cs
