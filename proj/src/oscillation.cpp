#include <algorithm>

#include "cs/constructions.hpp"
#include "cs/error.hpp"
#include "cs/metrics.hpp"

namespace cs {

using u64 = std::uint64_t;

big_nat big_nat::of(u64 v) {
    big_nat b;
    while (v) {
        b.limbs.push_back(static_cast<std::uint32_t>(v));
        v >>= 32;
    }
    return b;
}

big_nat big_nat::times_two_plus(u64 add) const {
    big_nat out;
    unsigned __int128 carry = add;
    for (auto limb : limbs) {
        carry += static_cast<unsigned __int128>(limb) * 2;
        out.limbs.push_back(static_cast<std::uint32_t>(carry));
        carry >>= 32;
    }
    while (carry) {
        out.limbs.push_back(static_cast<std::uint32_t>(carry));
        carry >>= 32;
    }
    return out;
}

u64 big_nat::to_u64() const {
    if (!fits_u64()) fail(errc::budget_exceeded, "value " + to_string() + " exceeds 64 bits");
    u64 v = 0;
    for (std::size_t i = limbs.size(); i-- > 0;) v = (v << 32) | limbs[i];
    return v;
}

std::string big_nat::to_string() const {
    if (limbs.empty()) return "0";
    std::vector<std::uint32_t> work = limbs;
    std::string digits;
    while (!work.empty()) {
        u64 rem = 0;
        for (std::size_t i = work.size(); i-- > 0;) {
            u64 cur = (rem << 32) | work[i];
            work[i] = static_cast<std::uint32_t>(cur / 10);
            rem = cur % 10;
        }
        digits.push_back(static_cast<char>('0' + rem));
        while (!work.empty() && work.back() == 0) work.pop_back();
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

std::strong_ordering big_nat::operator<=>(const big_nat& o) const {
    if (limbs.size() != o.limbs.size()) return limbs.size() <=> o.limbs.size();
    for (std::size_t i = limbs.size(); i-- > 0;)
        if (limbs[i] != o.limbs[i]) return limbs[i] <=> o.limbs[i];
    return std::strong_ordering::equal;
}

namespace {

// (0,0), (0,1), (1,0), (0,2), (1,1), (2,0), ...
std::pair<u64, u64> diagonal_pair(u64 index) {
    u64 d = 0;
    while (index > d) {
        index -= d + 1;
        ++d;
    }
    return {index, d - index};
}

u64 diagonal_index(u64 n, u64 k) {
    u64 d = n + k;
    return d * (d + 1) / 2 + n;
}

}  // namespace

void omega_partition::step() const {
    auto [n, k] = diagonal_pair(next_++);
    big_nat lo;
    if (!log_.empty()) {
        // frontier = previous hi + 1
        lo = log_.back().hi;
        std::size_t i = 0;
        while (i < lo.limbs.size() && lo.limbs[i] == 0xffffffffu) lo.limbs[i++] = 0;
        if (i == lo.limbs.size()) lo.limbs.push_back(1);
        else ++lo.limbs[i];
    }
    big_nat hi = lo.times_two_plus(k);
    log_.push_back({n, k, std::move(lo), std::move(hi)});
}

void omega_partition::extend_to(u64 x) const {
    auto target = big_nat::of(x);
    while (log_.empty() || log_.back().hi < target) step();
}

void omega_partition::extend_until(u64 n, u64 k) const {
    u64 idx = diagonal_index(n, k);
    while (next_ <= idx) step();
}

std::uint64_t omega_partition::cell_of(u64 x) const {
    std::lock_guard lock(mu_);
    extend_to(x);
    auto target = big_nat::of(x);
    auto it = std::lower_bound(log_.begin(), log_.end(), target,
                               [](const osc_interval& iv, const big_nat& v) { return iv.hi < v; });
    return it->n;
}

std::vector<osc_interval> omega_partition::log_through(u64 x) const {
    std::lock_guard lock(mu_);
    extend_to(x);
    auto target = big_nat::of(x);
    std::vector<osc_interval> out;
    for (const auto& iv : log_) {
        if (target < iv.lo) break;
        out.push_back(iv);
    }
    return out;
}

osc_interval omega_partition::allocation_for(u64 n, u64 k) const {
    std::lock_guard lock(mu_);
    extend_until(n, k);
    return log_[diagonal_index(n, k)];
}

const omega_partition& build_osc_partition() {
    static const omega_partition p;
    return p;
}

std::uint64_t osc_color_o(const universe& u, ordinal alpha, ordinal beta) {
    if (alpha == beta) fail(errc::invalid_argument, "the coloring is defined on pairs");
    if (alpha > beta) std::swap(alpha, beta);
    return build_osc_partition().cell_of(osc(u, alpha, beta, 0).count);
}

namespace {

std::vector<u64> decode_list(u64 n) {
    std::vector<u64> out;
    while (n > 0) {
        auto [head, tail] = cantor_unpair(n - 1);
        out.push_back(head);
        n = tail;
    }
    return out;
}

u64 encode_list(const std::vector<u64>& xs) {
    u64 code = 0;
    for (std::size_t i = xs.size(); i-- > 0;) {
        code = cantor_pair(xs[i], code);
        if (code == ~u64{0}) fail(errc::budget_exceeded, "list code overflows 64 bits");
        ++code;
    }
    return code;
}

bool is_prefix(const std::vector<u64>& a, const std::vector<u64>& b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

finite_map_code decode_h(u64 n) {
    auto [xcode, vcode] = cantor_unpair(n);
    finite_map_code h;
    for (u64 c : decode_list(xcode)) h.domain.push_back(decode_list(c));
    h.values = decode_list(vcode);
    h.valid = h.values.size() == h.domain.size() * h.domain.size();
    for (std::size_t i = 0; i < h.domain.size() && h.valid; ++i)
        for (std::size_t j = 0; j < h.domain.size() && h.valid; ++j)
            if (i != j && is_prefix(h.domain[i], h.domain[j])) h.valid = false;
    return h;
}

std::uint64_t encode_h(const std::vector<std::vector<u64>>& domain, const std::vector<u64>& values) {
    std::vector<u64> codes;
    for (const auto& s : domain) codes.push_back(encode_list(s));
    return cantor_pair(encode_list(codes), encode_list(values));
}

std::uint64_t o_star(const universe& u, ordinal alpha, ordinal beta) {
    if (alpha == beta) fail(errc::invalid_argument, "the coloring is defined on pairs");
    if (alpha > beta) std::swap(alpha, beta);
    auto h = decode_h(osc_color_o(u, alpha, beta));
    if (!h.valid) return 17;
    auto find = [&](ordinal a) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < h.domain.size(); ++i) {
            const auto& s = h.domain[i];
            bool ok = true;
            for (std::size_t l = 0; l < s.size() && ok; ++l) ok = f_value(u, a, static_cast<level>(l)) == s[l];
            if (ok) return i;
        }
        return std::nullopt;
    };
    auto ia = find(alpha), ib = find(beta);
    if (!ia || !ib) return 17;
    return h.values[*ia * h.domain.size() + *ib];
}

std::vector<std::pair<u64, u64>> pretower_set(const universe& u, ordinal alpha, u64 n) {
    std::vector<std::pair<u64, u64>> out;
    for (u64 i = 0; i < n; ++i) {
        u64 f = f_value(u, alpha, static_cast<level>(i));
        for (u64 j = 0; j <= f; ++j) out.emplace_back(i, j);
    }
    return out;
}

int sspace_point(const universe& u, ordinal alpha, ordinal beta, sspace_side side) {
    if (alpha == beta) return 1;
    bool live = side == sspace_side::x ? alpha < beta : alpha > beta;
    if (!live) return 0;
    return std::min<u64>(o_star(u, alpha, beta), 1) ? 1 : 0;
}

ord_set hset_level(const universe& u, ordinal beta, level l) {
    if (l < 1) fail(errc::invalid_argument, "H_l starts at l = 1");
    ord_set out;
    u64 target = u.closure_size(beta, l);
    for (ordinal a : u.closure(beta, l + 1)) {
        if (a >= beta) break;
        if (u.closure_size(a, l) == target) out.push_back(a);
    }
    return out;
}

ord_set hset(const universe& u, ordinal beta) {
    if (block_of(beta) != 0) fail(errc::invalid_argument, "H is computed for natural numbers");
    ord_set out;
    for (level l = 1;; ++l) {
        out = set_union(out, hset_level(u, beta, l));
        if (u.closure_size(beta, l) == beta + 1) break;
    }
    return out;
}

const ord_set& cset_cache::cset(ordinal beta) {
    if (auto it = memo_.find(beta); it != memo_.end()) return it->second;
    auto H = hset(u_, beta);
    auto rivals = set_union(H, {beta});
    ord_set out{beta};
    ord_set candidates;
    for (ordinal g : H) candidates = set_union(candidates, cset(g));
    for (ordinal a : candidates) {
        if (a >= beta) continue;
        for (ordinal g : H) {
            if (!contains(cset(g), a)) continue;
            auto best = delta(u_, a, g);
            bool unique = true;
            for (ordinal x : rivals)
                if (x != g && !delta(u_, a, x).less_than(best)) {
                    unique = false;
                    break;
                }
            if (unique) {
                out.push_back(a);
                break;
            }
        }
    }
    return memo_[beta] = normalized(out);
}

ord_set cset_cache::cset_k(ordinal beta, level k) {
    ord_set out;
    for (ordinal a : cset(beta)) {
        auto d = delta(u_, a, beta);
        if (d.infinite || d.k >= k) out.push_back(a);
    }
    return out;
}

std::uint64_t bounded_h(const universe& u, ordinal alpha, level i) {
    return u.type().m(i) - f_value(u, alpha, i);
}

int neg_partition_color(const universe& u, ordinal alpha, ordinal beta) {
    if (alpha == beta) fail(errc::invalid_argument, "the coloring is defined on pairs");
    auto d = delta(u, alpha, beta);
    return !d.infinite && d.k == u.rho(alpha, beta) ? 1 : 0;
}

}  // namespace cs
