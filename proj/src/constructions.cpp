#include "cs/constructions.hpp"

#include <algorithm>

#include "cs/error.hpp"
#include "cs/metrics.hpp"

namespace cs {

bool truncated_set::contains(const coded_point& p) const {
    return std::binary_search(elements.begin(), elements.end(), p);
}

std::vector<coded_point> truncated_set::at_level(level k) const {
    std::vector<coded_point> out;
    for (const auto& p : elements)
        if (p[0] == static_cast<std::uint64_t>(k)) out.push_back(p);
    return out;
}

std::optional<level> truncated_set::max_level() const {
    if (elements.empty()) return std::nullopt;
    std::uint64_t best = 0;
    for (const auto& p : elements) best = std::max(best, p[0]);
    return static_cast<level>(best);
}

truncated_set intersect(const truncated_set& a, const truncated_set& b) {
    truncated_set out;
    out.K = std::min(a.K, b.K);
    std::set_intersection(a.elements.begin(), a.elements.end(), b.elements.begin(), b.elements.end(),
                          std::back_inserter(out.elements));
    return out;
}

truncated_set difference(const truncated_set& a, const truncated_set& b) {
    truncated_set out;
    out.K = std::min(a.K, b.K);
    std::set_difference(a.elements.begin(), a.elements.end(), b.elements.begin(), b.elements.end(),
                        std::back_inserter(out.elements));
    return out;
}

void require_binary(const type_spec& t, level K) {
    for (level k = 1; k <= K; ++k)
        if (t.n(k) != 2)
            fail(errc::non_binary_type, "n_" + std::to_string(k) + " = " + std::to_string(t.n(k)) + " in " + t.name());
}

namespace {

void finish(truncated_set& s) {
    std::sort(s.elements.begin(), s.elements.end());
    s.elements.erase(std::unique(s.elements.begin(), s.elements.end()), s.elements.end());
}

using u64 = std::uint64_t;

void append_lj_level(const universe& u, ordinal alpha, level k, truncated_set& out) {
    const auto& t = u.type();
    u64 mk1 = t.m(k - 1), r = t.r(k), w = mk1 - r;
    u64 p = u.closure_position(alpha, k);
    auto x = xi(u, alpha, k);
    u64 kk = static_cast<u64>(k);
    if (x <= 0) {
        for (u64 c = 0; c < w * kk; ++c) out.elements.push_back({kk, p, c});
    } else {
        u64 lo = (p - mk1) * kk;
        for (u64 a = r; a < mk1; ++a)
            for (u64 c = lo; c < lo + kk; ++c) out.elements.push_back({kk, a, c});
    }
}

}  // namespace

truncated_set luzin_jones_level(const universe& u, ordinal alpha, level k) {
    require_binary(u.type(), k);
    truncated_set out;
    out.K = k;
    if (k >= 1) append_lj_level(u, alpha, k, out);
    finish(out);
    return out;
}

truncated_set luzin_jones(const universe& u, ordinal alpha, level K) {
    require_binary(u.type(), K);
    truncated_set out;
    out.K = K;
    for (level k = 1; k <= K; ++k) append_lj_level(u, alpha, k, out);
    finish(out);
    return out;
}

truncated_set jones_separator(const universe& u, ordinal beta, level K) {
    require_binary(u.type(), K);
    truncated_set out;
    out.K = K;
    for (level k = 1; k <= K; ++k)
        for (ordinal a : u.closure(beta, k)) append_lj_level(u, a, k, out);
    finish(out);
    return out;
}

bool countryman_less(const universe& u, ordinal alpha, ordinal beta) {
    while (true) {
        if (alpha == beta) return false;
        auto d = delta(u, alpha, beta);
        level D = d.k;
        auto ca = u.closure(alpha, D), cb = u.closure(beta, D);
        auto shared = set_intersection(ca, cb);
        if (shared.size() >= u.type().r(D)) return ca.size() < cb.size();
        alpha = set_difference(ca, cb).front();
        beta = set_difference(cb, ca).front();
    }
}

chain_label countryman_chain_index(const universe& u, ordinal alpha, ordinal beta) {
    if (!(alpha < beta)) fail(errc::invalid_argument, "chain index expects alpha < beta");
    level z = u.rho(alpha, beta);
    return {u.closure_size(alpha, z), u.closure_size(beta, z), z};
}

aronszajn_function aronszajn_node(const universe& u, ordinal beta) {
    aronszajn_function f;
    f.beta = beta;
    f.values.reserve(beta + 1);
    for (ordinal xi = 0; xi <= beta; ++xi) f.values.push_back(u.rho(xi, beta));
    return f;
}

aronszajn_function with_overrides(const universe& u, ordinal beta, const std::map<ordinal, level>& changes) {
    auto f = aronszajn_node(u, beta);
    for (auto [xi, v] : changes) {
        if (xi > beta) fail(errc::invalid_argument, "override outside beta+1");
        if (v < 0) fail(errc::invalid_argument, "negative value");
        f.values[xi] = v;
    }
    return f;
}

antichain_label antichain_index(const universe& u, const aronszajn_function& f) {
    if (f.values.size() != f.beta + 1) fail(errc::invalid_argument, "function table does not have domain beta+1");
    auto base = aronszajn_node(u, f.beta);
    level top = 0;
    for (ordinal xi = 0; xi <= f.beta; ++xi) top = std::max({top, f.values[xi], base.values[xi]});
    for (level k = 0; k <= top; ++k) {
        bool ok = true;
        u64 s = 0;
        for (ordinal xi = 0; xi <= f.beta && ok; ++xi) {
            bool inside = base.values[xi] <= k;  // xi in (beta)_k
            if (inside) {
                ++s;
                ok = f.values[xi] <= k;
            } else {
                ok = f.values[xi] == base.values[xi];
            }
        }
        if (ok) return {k, s};
    }
    fail(errc::precondition_violation, "no level bounds the function");
}

gap_pair gap_sets(const universe& u, ordinal alpha, level K) {
    require_binary(u.type(), K);
    gap_pair g;
    for (level k = 1; k <= K; ++k) {
        auto x = xi(u, alpha, k);
        if (x < 0) continue;
        u64 kk = static_cast<u64>(k);
        g.a.push_back(2 * kk + static_cast<u64>(x));
        g.b.push_back(2 * kk + 1 - static_cast<u64>(x));
    }
    g.a = normalized(g.a);
    g.b = normalized(g.b);
    return g;
}

coherent_function coherent_family(const universe& u, ordinal alpha, level K) {
    require_binary(u.type(), K);
    coherent_function out;
    out.domain.K = K;
    for (level k = 1; k <= K; ++k) {
        auto x = xi(u, alpha, k);
        if (x < 0) continue;
        u64 r = u.type().r(k), kk = static_cast<u64>(k);
        auto c = u.closure(alpha, k);
        for (u64 i = 0; i < r; ++i)
            for (u64 j = 0; j < r; ++j)
                for (u64 s = 0; s < kk; ++s) {
                    coded_point p{kk, i, j, s};
                    out.domain.elements.push_back(p);
                    out.values[p] = x == 0 ? c[i] : c[j];
                }
    }
    finish(out.domain);
    return out;
}

namespace {

// bit j - r of the counter i - 1; the counter wraps past 2^width
int counter_bit(u64 i, u64 j, u64 r, u64 width) {
    if (i == 0 || j < r || j - r >= width) return 0;
    u64 c = i - 1;
    if (width < 64) c %= (u64{1} << width);
    u64 b = j - r;
    return b < 64 ? static_cast<int>((c >> b) & 1) : 0;
}

void require_exponential(const type_spec& t, level k, u64 exponent, const char* what) {
    u64 need_minus_one = exponent >= 63 ? ~u64{0} : (u64{1} << exponent);
    if (t.n(k) < 1 || t.n(k) - 1 < need_minus_one)
        fail(errc::type_too_small, std::string(what) + ": n_" + std::to_string(k) + " = " + std::to_string(t.n(k)) +
                                       " is below 2^" + std::to_string(exponent) + "+1");
}

}  // namespace

int coherent_suslin_bit(const universe& u, ordinal beta, ordinal xi_, const partition_spec& part) {
    if (!(xi_ < beta)) fail(errc::invalid_argument, "coherent Suslin bit expects xi < beta");
    const auto& t = u.type();
    level rho_ = u.rho(xi_, beta);
    u64 r = t.r(rho_), w = t.m(rho_ - 1) - r;
    require_exponential(t, rho_, w, "coherent Suslin enumeration");
    auto xs = xi(u, xi_, rho_), xb = xi(u, beta, rho_);
    if (xs != 0 || xb < 1) return 0;
    u64 cell = part.cell_of(rho_, t);
    if (xb == 1 && cell == 0) return 1;
    if (cell == 1) return counter_bit(static_cast<u64>(xb), u.closure_position(xi_, rho_), r, w);
    return 0;
}

std::vector<int> coherent_suslin_row(const universe& u, ordinal beta, const partition_spec& part) {
    std::vector<int> row;
    row.reserve(beta);
    for (ordinal x = 0; x < beta; ++x) row.push_back(coherent_suslin_bit(u, beta, x, part));
    return row;
}

ord_set entangled_subset(const type_spec& t, level k, u64 i) {
    u64 r = t.r(k + 1), m = t.m(k), w = m - r;
    ord_set out;
    for (u64 j = r; j < m; ++j)
        if (counter_bit(i, j, r, w)) out.push_back(j);
    return out;
}

std::vector<std::int64_t> entangled_real(const universe& u, ordinal alpha, u64 length) {
    const auto& t = u.type();
    std::vector<std::int64_t> f;
    for (u64 k = 0; k < length; ++k) {
        if (k == 0) {
            f.push_back(0);
            continue;
        }
        level kk = static_cast<level>(k);
        require_exponential(t, kk, t.m(kk - 1), "entangled enumeration");
        auto x = xi(u, alpha, kk);
        if (x <= 0) {
            f.push_back(0);
            continue;
        }
        auto c = entangled_subset(t, kk - 1, static_cast<u64>(x));
        bool in = contains(c, u.closure_position(alpha, kk - 1));
        f.push_back(in ? x : -x);
    }
    return f;
}

std::optional<bool> lex_less(const std::vector<std::int64_t>& f, const std::vector<std::int64_t>& g) {
    std::size_t n = std::min(f.size(), g.size());
    for (std::size_t i = 0; i < n; ++i)
        if (f[i] != g[i]) return f[i] < g[i];
    return std::nullopt;
}

std::string realizes_pattern(const std::vector<std::vector<std::int64_t>>& a,
                             const std::vector<std::vector<std::int64_t>>& b) {
    if (a.size() != b.size()) fail(errc::invalid_argument, "tuples of different sizes");
    auto cmp = [](const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
        auto c = lex_less(x, y);
        if (!c && x != y) fail(errc::invalid_argument, "prefixes too short to compare");
        return c.value_or(false);
    };
    auto sa = a, sb = b;
    std::sort(sa.begin(), sa.end(), cmp);
    std::sort(sb.begin(), sb.end(), cmp);
    std::string t;
    for (std::size_t i = 0; i < sa.size(); ++i) {
        for (const auto& y : sb)
            if (sa[i] == y) fail(errc::invalid_argument, "tuples are not disjoint");
        t.push_back(cmp(sa[i], sb[i]) ? '<' : '>');
    }
    return t;
}

u64 cantor_pair(u64 a, u64 b) {
    unsigned __int128 s = static_cast<unsigned __int128>(a) + b;
    unsigned __int128 z = s * (s + 1) / 2 + b;
    if (z > ~u64{0}) fail(errc::budget_exceeded, "pairing overflows 64 bits");
    return static_cast<u64>(z);
}

std::pair<u64, u64> cantor_unpair(u64 z) {
    // largest s with s(s+1)/2 <= z
    u64 s = 0, lo = 0, hi = u64{1} << 33;
    while (lo <= hi) {
        u64 mid = lo + (hi - lo) / 2;
        unsigned __int128 tri = static_cast<unsigned __int128>(mid) * (mid + 1) / 2;
        if (tri <= z) {
            s = mid;
            lo = mid + 1;
        } else {
            if (mid == 0) break;
            hi = mid - 1;
        }
    }
    u64 tri = static_cast<u64>(static_cast<unsigned __int128>(s) * (s + 1) / 2);
    u64 b = z - tri;
    return {s - b, b};
}

u64 polychromatic_color(const universe& u, ordinal alpha, ordinal beta) {
    if (alpha == beta) fail(errc::invalid_argument, "the coloring is defined on pairs");
    if (alpha > beta) std::swap(alpha, beta);
    level k = u.rho(alpha, beta);
    u64 c = xi(u, beta, k) >= 3 ? u.closure_size(alpha, k) : u.closure_size(alpha, k - 1);
    return cantor_pair(beta, cantor_pair(static_cast<u64>(k), c));
}

std::vector<std::pair<u64, u64>> indep_subset(const type_spec& t, level k, u64 i) {
    u64 r = t.r(k);
    std::vector<std::pair<u64, u64>> all;
    for (u64 a = 0; a < r; ++a)
        for (u64 b = a + 1; b < r; ++b) all.emplace_back(a, b);
    if (i <= 1) return all;
    std::vector<std::pair<u64, u64>> out;
    for (u64 j = 0; j < all.size(); ++j)
        if (counter_bit(i - 1, j, 0, all.size())) out.push_back(all[j]);
    return out;
}

coherent_function indep_coherent(const universe& u, ordinal alpha, level K) {
    const auto& t = u.type();
    coherent_function out;
    out.domain.K = K;
    for (level k = 1; k <= K; ++k) {
        u64 r = t.r(k);
        require_exponential(t, k, r * r, "independent coherent enumeration");
        auto x = xi(u, alpha, k);
        if (x < 0) continue;
        auto c = u.closure(alpha, k);
        u64 p = c.size() - 1, kk = static_cast<u64>(k);
        for (auto [a, b] : indep_subset(t, k, static_cast<u64>(x))) {
            coded_point pt{kk, 0, a, b};
            out.domain.elements.push_back(pt);
            out.values[pt] = x == 0 ? c[a] : c[b];
        }
        for (u64 j = 0; j + r < p; ++j) {
            coded_point pt{kk, 1, j, 0};
            out.domain.elements.push_back(pt);
            out.values[pt] = c[r + j];
        }
    }
    finish(out.domain);
    return out;
}

namespace {

truncated_set fiber(const coherent_function& f, ordinal target) {
    truncated_set s;
    s.K = f.domain.K;
    for (const auto& [p, v] : f.values)
        if (v == target) s.elements.push_back(p);
    return s;
}

}  // namespace

chi_report chi_compatible(const universe& u, const ord_set& sigma, ordinal c0, ordinal c1, int which, level K) {
    if (!(c0 < c1)) fail(errc::invalid_argument, "chi expects c0 < c1");
    if (which != 0 && which != 1) fail(errc::invalid_argument, "chi index is 0 or 1");
    std::vector<truncated_set> A, B;
    for (ordinal a : sigma) {
        if (a <= c1) fail(errc::invalid_argument, "sigma must lie above the pair");
        auto f = indep_coherent(u, a, K);
        A.push_back(fiber(f, c0));
        B.push_back(fiber(f, c1));
    }
    chi_report rep;
    rep.K = K;
    if (which == 0) {
        truncated_set ua, ub;
        for (auto& s : A) ua.elements.insert(ua.elements.end(), s.elements.begin(), s.elements.end());
        for (auto& s : B) ub.elements.insert(ub.elements.end(), s.elements.begin(), s.elements.end());
        finish(ua);
        finish(ub);
        rep.compatible = intersect(ua, ub).elements.empty();
    } else {
        rep.compatible = true;
        for (std::size_t i = 0; i < sigma.size() && rep.compatible; ++i)
            for (std::size_t j = i + 1; j < sigma.size() && rep.compatible; ++j)
                rep.compatible = !intersect(A[i], B[j]).elements.empty() || !intersect(A[j], B[i]).elements.empty();
    }
    return rep;
}

}  // namespace cs
