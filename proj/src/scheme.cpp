#include "cs/scheme.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>
#include <unordered_set>

#include "cs/error.hpp"

namespace cs {

namespace {

struct block_geometry {
    std::uint64_t r;
    std::uint64_t w;  // m_{j-1} - r_j
};

block_geometry geometry(const type_spec& t, level j) { return {t.r(j), t.m(j - 1) - t.r(j)}; }

// piece index of x in m_j, or -1 inside the root
std::int64_t piece_of(const block_geometry& g, std::uint64_t x) {
    if (x < g.r) return -1;
    return static_cast<std::int64_t>((x - g.r) / g.w);
}

std::uint64_t lower(const block_geometry& g, std::uint64_t x, std::uint64_t piece) {
    return x < g.r ? x : x - g.w * piece;
}

std::uint64_t lift(const block_geometry& g, std::uint64_t y, std::uint64_t piece) {
    return y < g.r ? y : y + g.w * piece;
}

void require_omega(ordinal b) {
    if (block_of(b) != 0) fail(errc::invalid_argument, ordinal_to_string(b) + " is not below omega");
}

}  // namespace

scheme_view::scheme_view(type_spec t, std::size_t set_budget) : type_(std::move(t)), budget_(set_budget) {}

level scheme_view::level_of(ordinal b) const {
    require_omega(b);
    return type_.level_containing(b);
}

std::uint64_t scheme_view::position(ordinal b, level k) const {
    if (k < 0) fail(errc::invalid_argument, "negative level");
    level L = level_of(b);
    std::uint64_t x = b;
    for (level j = L; j > k; --j) {
        auto g = geometry(type_, j);
        if (x >= g.r) x = g.r + (x - g.r) % g.w;
    }
    return x;
}

ord_set scheme_view::embed_prefix(ordinal b, level k, std::uint64_t count) const {
    level L = level_of(b);
    std::vector<std::pair<block_geometry, std::uint64_t>> path;
    std::uint64_t x = b;
    for (level j = L; j > k; --j) {
        auto g = geometry(type_, j);
        auto p = piece_of(g, x);
        std::uint64_t piece = p < 0 ? 0 : static_cast<std::uint64_t>(p);
        x = lower(g, x, piece);
        path.emplace_back(g, piece);
    }
    ord_set out;
    out.reserve(count);
    for (std::uint64_t y = 0; y < count; ++y) {
        std::uint64_t z = y;
        for (auto it = path.rbegin(); it != path.rend(); ++it) z = lift(it->first, z, it->second);
        out.push_back(z);
    }
    return out;
}

ord_set scheme_view::closure(ordinal b, level k) const { return embed_prefix(b, k, position(b, k) + 1); }

std::uint64_t scheme_view::closure_size(ordinal b, level k) const { return position(b, k) + 1; }

ord_set scheme_view::member_containing(ordinal b, level k) const {
    if (k < 0) fail(errc::invalid_argument, "negative level");
    level L = level_of(b);
    if (k >= L) return iota_set(0, type_.m(k));
    return embed_prefix(b, k, type_.m(k));
}

level scheme_view::rho(ordinal a, ordinal b) const {
    if (a == b) return 0;
    level L = level_of(std::max(a, b));
    std::uint64_t x = a, y = b;
    for (level j = L; j >= 1; --j) {
        auto g = geometry(type_, j);
        auto px = piece_of(g, x), py = piece_of(g, y);
        if (px >= 0 && py >= 0 && px != py) return j;
        std::uint64_t piece = static_cast<std::uint64_t>(std::max<std::int64_t>({px, py, 0}));
        x = lower(g, x, piece);
        y = lower(g, y, piece);
    }
    fail(errc::non_integer_quotient, "rho descent reached level 0 with distinct points");
}

bool scheme_view::is_member(const ord_set& s) const {
    if (s.empty() || !is_strictly_sorted(s)) return false;
    if (block_of(s.back()) != 0) return false;
    level k = -1;
    for (level j = 0; j <= type_.depth(); ++j) {
        if (type_.m(j) == s.size()) {
            k = j;
            break;
        }
        if (type_.m(j) > s.size()) break;
    }
    if (k < 0) return false;
    level L = level_of(s.back());
    if (k > L) return false;
    std::vector<std::uint64_t> cur(s.begin(), s.end());
    for (level j = L; j > k; --j) {
        auto g = geometry(type_, j);
        std::int64_t piece = -1;
        for (auto x : cur) {
            auto p = piece_of(g, x);
            if (p < 0) continue;
            if (piece >= 0 && p != piece) return false;
            piece = p;
        }
        std::uint64_t pc = piece < 0 ? 0 : static_cast<std::uint64_t>(piece);
        for (auto& x : cur) x = lower(g, x, pc);
    }
    return cur.back() + 1 == cur.size();
}

level scheme_view::rank_of(const ord_set& s) const {
    if (!is_member(s)) fail(errc::not_member, to_string(s) + " is not in F(omega)");
    for (level j = 0;; ++j)
        if (type_.m(j) == s.size()) return j;
}

decomposition decompose_by_position(const type_spec& t, const ord_set& f, level k) {
    if (k == 0) fail(errc::rank_zero, "rank-0 sets have no decomposition");
    if (f.size() != t.m(k)) fail(errc::rank_mismatch, "set size does not match m_k");
    auto g = geometry(t, k);
    decomposition d;
    d.root.assign(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(g.r));
    std::uint64_t n = t.n(k);
    for (std::uint64_t i = 0; i < n; ++i) {
        ord_set piece = d.root;
        auto from = f.begin() + static_cast<std::ptrdiff_t>(g.r + g.w * i);
        piece.insert(piece.end(), from, from + static_cast<std::ptrdiff_t>(g.w));
        d.pieces.push_back(std::move(piece));
    }
    return d;
}

decomposition scheme_view::decompose(const ord_set& f) const {
    level k = rank_of(f);
    return decompose_by_position(type_, f, k);
}

ord_set scheme_view::transport(const ord_set& from, const ord_set& to, const ord_set& s) const {
    level a = rank_of(from), b = rank_of(to);
    if (a != b) fail(errc::rank_mismatch, "transport between ranks " + std::to_string(a) + " and " + std::to_string(b));
    if (!is_member(s) || !is_subset(s, from))
        fail(errc::not_subscheme, to_string(s) + " is not a member of F(" + to_string(from) + ")");
    return transport_image(from, to, s);
}

namespace {

std::shared_ptr<level_table> make_table(level k, std::vector<ord_set> sets) {
    std::sort(sets.begin(), sets.end(), [](const ord_set& a, const ord_set& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    auto tab = std::make_shared<level_table>();
    tab->k = k;
    tab->rank_begin.push_back(0);
    for (std::size_t i = 1; i < sets.size(); ++i)
        if (sets[i].size() != sets[i - 1].size()) tab->rank_begin.push_back(i);
    tab->rank_begin.push_back(sets.size());
    tab->sets = std::move(sets);
    return tab;
}

}  // namespace

const level_table& scheme_view::finite_scheme(level k) const {
    if (k < 0) fail(errc::invalid_argument, "negative level");
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = tables_.find(k);
        if (it != tables_.end()) return *it->second;
    }
    std::shared_ptr<level_table> tab;
    if (k == 0) {
        tab = make_table(0, {ord_set{0}});
    } else {
        const level_table& prev = finite_scheme(k - 1);
        auto g = geometry(type_, k);
        std::uint64_t n = type_.n(k);
        if (prev.sets.size() > budget_ / std::max<std::uint64_t>(n, 1))
            fail(errc::level_too_deep, "F(m_" + std::to_string(k) + ") exceeds the set budget of " + std::to_string(budget_));
        std::unordered_set<ord_set, ord_set_hash> seen;
        std::vector<ord_set> sets;
        for (std::uint64_t i = 0; i < n; ++i) {
            for (const auto& s : prev.sets) {
                ord_set img;
                img.reserve(s.size());
                for (auto x : s) img.push_back(lift(g, x, i));
                if (seen.insert(img).second) sets.push_back(std::move(img));
            }
        }
        sets.push_back(iota_set(0, type_.m(k)));
        if (sets.size() > budget_)
            fail(errc::level_too_deep, "F(m_" + std::to_string(k) + ") exceeds the set budget of " + std::to_string(budget_));
        tab = make_table(k, std::move(sets));
    }
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = tables_.emplace(k, tab);
    return *it->second;
}

void scheme_view::for_each_of_rank_within(level k, std::uint64_t N, const std::function<void(const ord_set&)>& fn) const {
    if (N == 0 || k < 0) return;
    level l = type_.level_containing(N - 1);
    if (k > l) return;
    const auto& tab = finite_scheme(l);
    for (std::size_t i = tab.rank_begin[static_cast<std::size_t>(k)]; i < tab.rank_begin[static_cast<std::size_t>(k) + 1]; ++i)
        if (tab.sets[i].back() < N) fn(tab.sets[i]);
}

std::vector<ord_set> scheme_view::elements_of_rank_within(level k, std::uint64_t N) const {
    std::vector<ord_set> out;
    for_each_of_rank_within(k, N, [&](const ord_set& s) { out.push_back(s); });
    return out;
}

namespace {

void build_over(const type_spec& t, const ord_set& x, level k, std::unordered_set<ord_set, ord_set_hash>& out,
                std::size_t budget) {
    if (!out.insert(x).second) return;
    if (out.size() > budget) fail(errc::level_too_deep, "scheme exceeds the set budget");
    if (k == 0) return;
    for (const auto& piece : decompose_by_position(t, x, k).pieces) build_over(t, piece, k - 1, out, budget);
}

}  // namespace

std::vector<ord_set> build_finite_scheme(const type_spec& t, level k, std::size_t budget) {
    std::unordered_set<ord_set, ord_set_hash> acc;
    build_over(t, iota_set(0, t.m(k)), k, acc, budget);
    std::vector<ord_set> out(acc.begin(), acc.end());
    std::sort(out.begin(), out.end(), [](const ord_set& a, const ord_set& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

std::string level_to_json(const level_table& tab, std::uint64_t m) {
    nlohmann::json j;
    j["k"] = tab.k;
    j["m"] = m;
    j["sets"] = nlohmann::json::array();
    for (const auto& s : tab.sets) j["sets"].push_back(s);
    return j.dump();
}

level_table level_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(errc::invalid_argument, std::string("level JSON: ") + e.what());
    }
    if (!j.contains("k") || !j.contains("sets")) fail(errc::invalid_argument, "level JSON needs k and sets");
    std::vector<ord_set> sets;
    for (const auto& s : j["sets"]) sets.push_back(s.get<ord_set>());
    auto tab = make_table(j["k"].get<level>(), std::move(sets));
    return *tab;
}

std::string level_to_dot(const level_table& tab) {
    const auto& sets = tab.sets;
    std::ostringstream os;
    os << "digraph F {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < sets.size(); ++i) os << "  n" << i << " [label=\"" << to_string(sets[i]) << "\"];\n";
    auto proper = [&](std::size_t a, std::size_t b) {
        return sets[a].size() < sets[b].size() && is_subset(sets[a], sets[b]);
    };
    for (std::size_t a = 0; a < sets.size(); ++a) {
        for (std::size_t b = 0; b < sets.size(); ++b) {
            if (!proper(a, b)) continue;
            bool cover = true;
            for (std::size_t c = 0; c < sets.size() && cover; ++c)
                if (proper(a, c) && proper(c, b)) cover = false;
            if (cover) os << "  n" << a << " -> n" << b << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

bool is_homogeneous(const std::vector<ord_set>& fam) {
    std::unordered_set<ord_set, ord_set_hash> all(fam.begin(), fam.end());
    auto below_of = [&](const ord_set& x) {
        std::vector<ord_set> out;
        for (const auto& z : fam)
            if (z.size() <= x.size() && is_subset(z, x)) out.push_back(z);
        std::sort(out.begin(), out.end());
        return out;
    };
    for (const auto& x : fam) {
        auto bx = below_of(x);
        for (const auto& y : fam) {
            if (y.size() != x.size() || y <= x) continue;
            auto by = below_of(y);
            std::vector<ord_set> img;
            for (const auto& z : bx) img.push_back(transport_image(x, y, z));
            std::sort(img.begin(), img.end());
            if (img != by) return false;
        }
    }
    return true;
}

bool is_directed(const std::vector<ord_set>& fam) {
    for (const auto& x : fam)
        for (const auto& y : fam) {
            auto u = set_union(x, y);
            bool found = false;
            for (const auto& z : fam)
                if (z.size() >= u.size() && is_subset(u, z)) {
                    found = true;
                    break;
                }
            if (!found) return false;
        }
    return true;
}

bool is_locally_almost_directed(const std::vector<ord_set>& fam) {
    for (const auto& x : fam) {
        std::vector<ord_set> sub;
        for (const auto& z : fam)
            if (z.size() < x.size() && is_subset(z, x)) sub.push_back(z);
        if (is_directed(sub)) continue;
        bool split = false;
        for (std::size_t a = 0; a < sub.size() && !split; ++a)
            for (std::size_t b = 0; b < sub.size() && !split; ++b) {
                if (a == b || set_union(sub[a], sub[b]) != x) continue;
                auto meet = set_intersection(sub[a], sub[b]);
                if (!is_initial_segment(meet, sub[a]) || !is_initial_segment(meet, sub[b])) continue;
                if (precedes(set_difference(sub[a], sub[b]), set_difference(sub[b], sub[a]))) split = true;
            }
        if (!split) return false;
    }
    return true;
}

}  // namespace cs
