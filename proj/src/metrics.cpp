#include "cs/metrics.hpp"

#include <algorithm>

#include "cs/error.hpp"

namespace cs {

level rho(const universe& u, ordinal a, ordinal b) { return u.rho(a, b); }

level rho_diameter(const universe& u, const ord_set& s) {
    if (s.empty()) fail(errc::invalid_argument, "diameter of the empty set");
    level best = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) best = std::max(best, u.rho(s[i], s[j]));
    return best;
}

delta_value delta(const universe& u, ordinal a, ordinal b) {
    if (a == b) return delta_value::omega();
    level top = u.rho(a, b);
    for (level k = 0; k <= top; ++k)
        if (u.closure_size(a, k) != u.closure_size(b, k)) return delta_value::at(k);
    fail(errc::non_integer_quotient, "closure sizes of " + ordinal_to_string(a) + " and " + ordinal_to_string(b) +
                                         " agree up to their rho");
}

std::int64_t xi(const universe& u, ordinal a, level k) {
    if (k < 0) fail(errc::invalid_argument, "negative level");
    if (k == 0) return 0;
    const auto& t = u.type();
    std::uint64_t now = u.closure_size(a, k);
    if (now <= t.r(k)) return -1;
    std::uint64_t before = u.closure_size(a, k - 1);
    std::uint64_t w = t.m(k - 1) - t.r(k);
    if (now < before || (now - before) % w != 0)
        fail(errc::non_integer_quotient, "Xi_" + ordinal_to_string(a) + "(" + std::to_string(k) + ") is not an integer");
    return static_cast<std::int64_t>((now - before) / w);
}

std::uint64_t f_value(const universe& u, ordinal a, level l) { return u.closure_size(a, l); }

f_comparison f_mod_finite_compare(const universe& u, ordinal a, ordinal b) {
    f_comparison out;
    if (a == b) {
        out.equal = true;
        out.everywhere_le = true;
        return out;
    }
    if (a > b) fail(errc::invalid_argument, "f_mod_finite_compare expects a < b");
    out.rho = u.rho(a, b);
    out.everywhere_le = true;
    out.strict_from = out.rho;
    for (level l = 0; l < out.rho; ++l) {
        auto fa = f_value(u, a, l), fb = f_value(u, b, l);
        int c = fa < fb ? -1 : (fa == fb ? 0 : 1);
        out.prefix.push_back(c);
        if (c > 0) out.everywhere_le = false;
    }
    while (out.strict_from > 0 && out.prefix[static_cast<std::size_t>(out.strict_from - 1)] < 0) --out.strict_from;
    return out;
}

osc_result osc(const universe& u, ordinal a, ordinal b, level k) {
    osc_result out;
    if (a == b) return out;
    level top = u.rho(a, b);
    for (level s = k; s < top; ++s) {
        if (f_value(u, a, s) <= f_value(u, b, s) && f_value(u, a, s + 1) > f_value(u, b, s + 1)) {
            out.witnesses.push_back(s);
            ++out.count;
        }
    }
    return out;
}

}  // namespace cs
