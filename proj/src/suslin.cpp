#include <algorithm>
#include <memory>
#include <set>

#include "cs/constructions.hpp"
#include "cs/error.hpp"

namespace cs {

using u64 = std::uint64_t;

std::uint64_t suslin_tree::height_of(u64 node) const {
    auto it = std::upper_bound(level_begin.begin(), level_begin.end(), node);
    return static_cast<u64>(it - level_begin.begin()) - 1;
}

bool suslin_tree::less(u64 a, u64 b) const {
    u64 ha = height_of(a), hb = height_of(b);
    if (ha >= hb) return false;
    while (hb > ha) {
        b = static_cast<u64>(parent[b]);
        --hb;
    }
    return a == b;
}

std::vector<u64> suslin_tree::children(u64 node) const {
    std::vector<u64> out;
    u64 h = height_of(node);
    if (h + 1 >= height) return out;
    for (u64 c = level_begin[h + 1]; c < level_begin[h + 2]; ++c)
        if (parent[c] == static_cast<std::int64_t>(node)) out.push_back(c);
    return out;
}

namespace {

u64 saturating_mul(u64 a, u64 b) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    return p > ~u64{0} ? ~u64{0} : static_cast<u64>(p);
}

u64 pow2_sat(u64 e) { return e >= 64 ? ~u64{0} : u64{1} << e; }

void require_suslin_bound(const type_spec& t, level k) {
    // step k -> k+1 needs n_{k+1} >= m_k (k+1) 2^{m_k}
    u64 mk = t.m(k);
    u64 need = saturating_mul(saturating_mul(mk, static_cast<u64>(k) + 1), pow2_sat(mk));
    if (t.n(k + 1) < need)
        fail(errc::type_too_small, "full Suslin tree: n_" + std::to_string(k + 1) + " = " +
                                       std::to_string(t.n(k + 1)) + " is below " + std::to_string(need));
}

std::unique_ptr<suslin_tree> rank_zero_tree() {
    auto t = std::make_unique<suslin_tree>();
    t->k = 0;
    t->height = 1;
    t->level_begin = {0, 1};
    t->parent = {-1};
    return t;
}

class tree_builder {
public:
    tree_builder(const type_spec& t, const suslin_tree& prev, u64 budget) : prev_(prev) {
        level k = prev.k;
        k_ = static_cast<u64>(k);
        r_ = t.r(k + 1);
        mk_ = prev.height;
        w_ = mk_ - r_;
        n_ = t.n(k + 1);
        height_ = t.m(k + 1);
        if (height_ >= 60) fail(errc::budget_exceeded, "full Suslin tree of height " + std::to_string(height_));
        u64 total = saturating_mul(k_ + 2, pow2_sat(height_) - 1);
        if (total > budget)
            fail(errc::budget_exceeded, "full Suslin tree needs " + std::to_string(total) + " nodes, budget " +
                                            std::to_string(budget));
        out_ = std::make_unique<suslin_tree>();
        out_->k = k + 1;
        out_->height = height_;
        out_->level_begin.assign(height_ + 1, 0);
        for (u64 l = 0; l < height_; ++l) out_->level_begin[l + 1] = out_->level_begin[l] + (k_ + 2) * (u64{1} << l);
        out_->parent.assign(total, -2);
        first_child_.assign(total, -1);
    }

    std::unique_ptr<suslin_tree> run() {
        copy_first_component();
        for (u64 i = 0; i + 1 < n_; ++i) amalgamate_next(i);
        add_new_root();
        return std::move(out_);
    }

private:
    // nodes of the rank k tree T^{F_0} have width (k+1) 2^l
    u64 old_width(u64 l) const { return (k_ + 1) * (u64{1} << l); }

    u64 id(u64 l, u64 s) const { return out_->id(l, s); }

    void set_parent(u64 l, u64 s, std::int64_t p) {
        u64 c = id(l, s);
        out_->parent[c] = p;
        if (p >= 0 && (first_child_[p] < 0 || static_cast<std::int64_t>(c) < first_child_[p]))
            first_child_[p] = static_cast<std::int64_t>(c);
    }

    u64 prev_parent_s(u64 l, u64 s) const {
        auto p = static_cast<u64>(prev_.parent[prev_.id(l, s)]);
        return p - prev_.level_begin[l - 1];
    }

    void copy_first_component() {
        for (u64 l = 0; l < mk_; ++l)
            for (u64 s = 0; s < old_width(l); ++s)
                set_parent(l, s, l == 0 ? -1 : static_cast<std::int64_t>(id(l - 1, prev_parent_s(l, s))));
    }

    // least child climb to height top
    u64 climb(u64 node, u64 top) const {
        while (out_->height_of(node) < top) node = static_cast<u64>(first_child_[node]);
        return node;
    }

    // position (height, s) of the ancestor-or-self at height r of a node of T^{F_0}
    u64 ancestor_at_r(u64 prev_node) const {
        u64 h = prev_.height_of(prev_node);
        while (h > r_) {
            prev_node = static_cast<u64>(prev_.parent[prev_node]);
            --h;
        }
        return prev_node - prev_.level_begin[r_];
    }

    void amalgamate_next(u64 i) {
        u64 H = i * w_ + mk_;
        u64 count = (k_ + 1) * (u64{1} << r_);  // nodes of T^{F_0} at height r
        // c_x for each x at height r, as a node of T^i
        std::vector<u64> c(count);
        for (u64 s = 0; s < count; ++s) c[s] = id(r_, s);
        u64 seed_code = i + 1;
        std::vector<u64> seed;
        for (u64 j = 0; j < prev_.size() && j < 64; ++j)
            if ((seed_code >> j) & 1) seed.push_back(j);
        bool good = true;
        std::vector<char> covered(count, 0);
        std::vector<std::pair<u64, u64>> chosen;
        for (u64 node : seed) {
            if (prev_.height_of(node) < r_) {
                good = false;
                break;
            }
            u64 a = ancestor_at_r(node);
            if (covered[a]) {
                good = false;
                break;
            }
            covered[a] = 1;
            chosen.emplace_back(a, node);
        }
        if (good)
            for (auto [a, node] : chosen) {
                u64 h = prev_.height_of(node);
                c[a] = id(h, node - prev_.level_begin[h]);
            }
        std::vector<u64> top(count);
        std::set<u64> tops;
        for (u64 s = 0; s < count; ++s) {
            top[s] = climb(c[s], H - 1);
            tops.insert(top[s]);
        }
        // first block level: the roots of the copy hang from the branch tops
        for (u64 s = 0; s < count; ++s) set_parent(H, s, static_cast<std::int64_t>(top[s]));
        u64 next = count;
        u64 below_width = (k_ + 1) * (u64{1} << (H - 1));
        for (u64 s = 0; s < below_width; ++s) {
            u64 p = id(H - 1, s);
            int kids = tops.count(p) ? 1 : 2;
            for (int j = 0; j < kids; ++j) set_parent(H, next++, static_cast<std::int64_t>(p));
        }
        // remaining block levels
        for (u64 L = H + 1; L < H + w_; ++L) {
            u64 l = L - (i + 1) * w_;
            u64 copies = old_width(l);
            for (u64 s = 0; s < copies; ++s)
                set_parent(L, s, static_cast<std::int64_t>(id(L - 1, prev_parent_s(l, s))));
            u64 nxt = copies;
            for (u64 s = old_width(l - 1); s < (k_ + 1) * (u64{1} << (L - 1)); ++s)
                for (int j = 0; j < 2; ++j) set_parent(L, nxt++, static_cast<std::int64_t>(id(L - 1, s)));
        }
    }

    void add_new_root() {
        set_parent(0, k_ + 1, -1);
        for (u64 L = 1; L < height_; ++L) {
            u64 nxt = (k_ + 1) * (u64{1} << L);
            for (u64 s = (k_ + 1) * (u64{1} << (L - 1)); s < (k_ + 2) * (u64{1} << (L - 1)); ++s)
                for (int j = 0; j < 2; ++j) set_parent(L, nxt++, static_cast<std::int64_t>(id(L - 1, s)));
        }
        for (auto p : out_->parent)
            if (p == -2) fail(errc::precondition_violation, "full Suslin build left a node unplaced");
    }

    const suslin_tree& prev_;
    u64 k_ = 0, r_ = 0, mk_ = 0, w_ = 0, n_ = 0, height_ = 0;
    std::unique_ptr<suslin_tree> out_;
    std::vector<std::int64_t> first_child_;
};

struct tree_cache_entry {
    type_spec type;
    level k;
    std::shared_ptr<const suslin_tree> tree;
};

std::mutex tree_cache_mu;
std::vector<tree_cache_entry> tree_cache;

std::shared_ptr<const suslin_tree> cached_tree(const type_spec& t, level k) {
    std::lock_guard lock(tree_cache_mu);
    for (const auto& e : tree_cache)
        if (e.k == k && e.type == t) return e.tree;
    return nullptr;
}

}  // namespace

const suslin_tree& full_suslin_levels(const type_spec& t, level k, u64 budget) {
    if (k < 0) fail(errc::invalid_argument, "negative rank");
    if (auto hit = cached_tree(t, k)) return *hit;
    std::shared_ptr<const suslin_tree> built;
    if (k == 0) {
        built = rank_zero_tree();
    } else {
        require_suslin_bound(t, k - 1);
        const auto& prev = full_suslin_levels(t, k - 1, budget);
        built = tree_builder(t, prev, budget).run();
    }
    std::lock_guard lock(tree_cache_mu);
    for (const auto& e : tree_cache)
        if (e.k == k && e.type == t) return *e.tree;
    tree_cache.push_back({t, k, built});
    return *built;
}

namespace {

// position of the node (l, s) of T^{F_i} inside T^F
u64 component_node(const suslin_tree& big, const suslin_tree& small, u64 node, u64 i, u64 r, u64 w) {
    u64 l = small.height_of(node), s = node - small.level_begin[l];
    return big.id(l < r ? l : l + i * w, s);
}

bool good_in(const suslin_tree& t, const std::vector<u64>& nodes, u64 r) {
    std::set<u64> anc;
    for (u64 x : nodes) {
        u64 h = t.height_of(x);
        if (h < r) return false;
        while (h > r) {
            x = static_cast<u64>(t.parent[x]);
            --h;
        }
        if (!anc.insert(x).second) return false;
    }
    return true;
}

}  // namespace

full_suslin_report check_full_suslin_clause_c(const type_spec& t, level k) {
    if (k < 1) fail(errc::invalid_argument, "clause (c) starts at rank 1");
    const auto& big = full_suslin_levels(t, k);
    const auto& small = full_suslin_levels(t, k - 1);
    u64 r = t.r(k), w = small.height - r, n = t.n(k);
    auto moves_up = [&](const std::vector<u64>& c, u64 i) {
        for (u64 x : c)
            if (!big.less(component_node(big, small, x, 0, r, w), component_node(big, small, x, i, r, w)))
                return false;
        return true;
    };
    full_suslin_report rep;
    for (u64 i = 1; i < n; ++i) {
        std::vector<u64> seed;
        for (u64 j = 0; j < small.size() && j < 64; ++j)
            if ((i >> j) & 1) seed.push_back(j);
        if (!good_in(small, seed, r)) continue;
        ++rep.seeds_checked;
        if (moves_up(seed, i)) ++rep.seeds_ok;
    }
    if (small.size() <= 20) {
        rep.exhaustive = true;
        for (u64 mask = 0; mask < (u64{1} << small.size()); ++mask) {
            std::vector<u64> c;
            for (u64 j = 0; j < small.size(); ++j)
                if ((mask >> j) & 1) c.push_back(j);
            if (!good_in(small, c, r)) continue;
            ++rep.good_sets;
            for (u64 i = 1; i < n; ++i)
                if (moves_up(c, i)) {
                    ++rep.good_sets_ok;
                    break;
                }
        }
    }
    return rep;
}

bool full_suslin_restriction_ok(const type_spec& t, level k) {
    if (k < 1) fail(errc::invalid_argument, "restriction starts at rank 1");
    const auto& big = full_suslin_levels(t, k);
    const auto& small = full_suslin_levels(t, k - 1);
    u64 r = t.r(k), w = small.height - r, n = t.n(k);
    for (u64 i = 0; i < n; ++i)
        for (u64 x = 0; x < small.size(); ++x)
            for (u64 y = 0; y < small.size(); ++y) {
                bool a = small.less(x, y);
                bool b = big.less(component_node(big, small, x, i, r, w), component_node(big, small, y, i, r, w));
                if (a != b) return false;
            }
    return true;
}

bool finite_tree::lt(u64 a, u64 b) const {
    return std::binary_search(less.begin(), less.end(), std::make_pair(a, b));
}

std::vector<u64> finite_tree::below(u64 x) const {
    std::vector<u64> out;
    for (auto [a, b] : less)
        if (b == x) out.push_back(a);
    std::sort(out.begin(), out.end());
    return out;
}

finite_tree tree_from_parents(const suslin_tree& t, u64 max_height) {
    finite_tree out;
    u64 end = t.level_begin[std::min<u64>(max_height, t.height)];
    for (u64 x = 0; x < end; ++x) {
        out.nodes.push_back(x);
        for (auto p = t.parent[x]; p >= 0; p = t.parent[static_cast<u64>(p)])
            out.less.emplace_back(static_cast<u64>(p), x);
    }
    std::sort(out.less.begin(), out.less.end());
    return out;
}

bool is_tree(const finite_tree& t) {
    auto in = [&](u64 x) { return std::binary_search(t.nodes.begin(), t.nodes.end(), x); };
    for (auto [a, b] : t.less) {
        if (a == b || !in(a) || !in(b)) return false;
        if (t.lt(b, a)) return false;
    }
    for (auto [a, b] : t.less)
        for (auto [c, d] : t.less)
            if (b == c && !t.lt(a, d)) return false;
    for (u64 x : t.nodes) {
        auto d = t.below(x);
        for (std::size_t i = 0; i < d.size(); ++i)
            for (std::size_t j = i + 1; j < d.size(); ++j)
                if (!t.lt(d[i], d[j]) && !t.lt(d[j], d[i])) return false;
    }
    return true;
}

finite_tree amalgamate(const finite_tree& t, const finite_tree& l, u64 level_l,
                       const std::map<u64, std::vector<u64>>& branches) {
    finite_tree out;
    std::set_union(t.nodes.begin(), t.nodes.end(), l.nodes.begin(), l.nodes.end(), std::back_inserter(out.nodes));
    std::set<std::pair<u64, u64>> rel(t.less.begin(), t.less.end());
    rel.insert(l.less.begin(), l.less.end());
    for (const auto& [top, branch] : branches) {
        if (t.rank(top) != level_l) fail(errc::invalid_argument, "branch index is not at the amalgamation level");
        for (u64 y : t.nodes) {
            if (y != top && !t.lt(top, y)) continue;
            for (u64 x : branch)
                if (x != y) rel.emplace(x, y);
        }
    }
    out.less.assign(rel.begin(), rel.end());
    return out;
}

bool l_good(const finite_tree& t, const std::vector<u64>& c, u64 l) {
    std::vector<std::vector<u64>> closed;
    for (u64 y : c) {
        if (t.rank(y) < l) return false;
        auto d = t.below(y);
        d.insert(std::upper_bound(d.begin(), d.end(), y), y);
        closed.push_back(std::move(d));
    }
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            std::vector<u64> both;
            std::set_intersection(closed[i].begin(), closed[i].end(), closed[j].begin(), closed[j].end(),
                                  std::back_inserter(both));
            for (u64 x : both)
                if (t.rank(x) >= l) return false;
        }
    return true;
}

// Suslin lower semilattice

std::pair<u64, u64> lattice_phi(const type_spec& t, level k, u64 a, u64 b) {
    u64 r = t.r(k + 1);
    if (a < r) return {a, b};
    return {a + t.m(k) - r, b};
}

namespace {

struct lattice_cache_entry {
    type_spec type;
    level k;
    std::shared_ptr<const lattice_family> family;
};

std::mutex lattice_mu;
std::vector<lattice_cache_entry> lattice_cache;

std::shared_ptr<const lattice_family> cached_lattice(const type_spec& t, level k) {
    std::lock_guard lock(lattice_mu);
    for (const auto& e : lattice_cache)
        if (e.k == k && e.type == t) return e.family;
    return nullptr;
}

bool sorted_subset(const std::vector<coded_point>& a, const std::vector<coded_point>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::shared_ptr<lattice_family> next_lattice(const type_spec& t, const lattice_family& prev) {
    level k = prev.k;
    u64 mk = t.m(k), mk1 = t.m(k + 1), r = t.r(k + 1), half = prev.cols;
    auto out = std::make_shared<lattice_family>();
    out->k = k + 1;
    out->rows = mk1;
    out->cols = 2 * half;
    out->sets.resize(mk1 * out->cols);
    u64 kk = static_cast<u64>(k) + 1;
    for (u64 a = 0; a < mk1; ++a)
        for (u64 b = 0; b < out->cols; ++b) {
            std::vector<coded_point> s;
            if (b >= half) {
                for (u64 j = 0; j <= a; ++j) s.push_back({kk, j, b - half});
            } else if (a < mk) {
                s = prev.at(a, b);
            } else {
                u64 za = a - mk + r;
                s = prev.at(za, b);
                for (u64 d = 0; d < half; ++d) {
                    if (!sorted_subset(prev.at(r, d), prev.at(za, b))) continue;
                    for (u64 j = 0; j < mk; ++j) s.push_back({kk, j, d});
                }
            }
            std::sort(s.begin(), s.end());
            out->sets[a * out->cols + b] = std::move(s);
        }
    return out;
}

}  // namespace

const lattice_family& lattice_level(const type_spec& t, level k) {
    if (k < 0) fail(errc::invalid_argument, "negative level");
    require_binary(t, k);
    if (k > 20) fail(errc::budget_exceeded, "lattice level " + std::to_string(k) + " is too large to tabulate");
    if (auto hit = cached_lattice(t, k)) return *hit;
    std::shared_ptr<const lattice_family> built;
    if (k == 0) {
        auto f = std::make_shared<lattice_family>();
        f->k = 0;
        f->rows = 1;
        f->cols = 1;
        f->sets = {{{0, 0, 0}}};
        built = f;
    } else {
        built = next_lattice(t, lattice_level(t, k - 1));
    }
    std::lock_guard lock(lattice_mu);
    for (const auto& e : lattice_cache)
        if (e.k == k && e.type == t) return *e.family;
    lattice_cache.push_back({t, k, built});
    return *built;
}

std::vector<coded_point> lattice_point(const universe& u, ordinal alpha, u64 b, level K) {
    std::set<coded_point> acc;
    for (level k = 0; k <= K; ++k) {
        if (k < 64 && b >= (u64{1} << k)) continue;
        const auto& fam = lattice_level(u.type(), k);
        const auto& s = fam.at(u.closure_position(alpha, k), b);
        acc.insert(s.begin(), s.end());
    }
    return {acc.begin(), acc.end()};
}

}  // namespace cs
