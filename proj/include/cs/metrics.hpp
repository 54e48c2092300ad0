#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cs/ordinal.hpp"
#include "cs/universe.hpp"

namespace cs {

// Delta takes values in omega + 1; the top value is kept apart from levels.
struct delta_value {
    bool infinite = false;
    level k = 0;

    static delta_value omega() { return {true, 0}; }
    static delta_value at(level k) { return {false, k}; }
    bool operator==(const delta_value&) const = default;
    bool less_than(const delta_value& o) const { return !infinite && (o.infinite || k < o.k); }
    std::string to_string() const { return infinite ? "omega" : std::to_string(k); }
};

level rho(const universe& u, ordinal a, ordinal b);
level rho_diameter(const universe& u, const ord_set& s);
delta_value delta(const universe& u, ordinal a, ordinal b);
// Xi_a(k); -1 inside the root
std::int64_t xi(const universe& u, ordinal a, level k);
// f_a(l) = |(a)_l|
std::uint64_t f_value(const universe& u, ordinal a, level l);

struct f_comparison {
    // f_a(l) <=> f_b(l) for l below rho(a,b), as -1, 0, 1
    std::vector<int> prefix;
    level rho = 0;
    bool equal = false;        // a == b
    bool everywhere_le = false;  // f_a(l) <= f_b(l) for all l
    level strict_from = 0;     // f_a(j) < f_b(j) for every j >= strict_from
};

// for a < b; f_a <* f_b with the tail certified from rho(a,b) on
f_comparison f_mod_finite_compare(const universe& u, ordinal a, ordinal b);

struct osc_result {
    std::uint64_t count = 0;
    std::vector<level> witnesses;
};

// the oscillation set above k; all witnesses lie in [k, rho(a,b))
osc_result osc(const universe& u, ordinal a, ordinal b, level k);

}  // namespace cs
