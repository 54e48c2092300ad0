#pragma once

#include <optional>
#include <vector>

#include "cs/ordinal.hpp"
#include "cs/scheme.hpp"
#include "cs/type.hpp"

namespace cs {

// Rank-0 members are read as having the single piece F and an empty root,
// with n_0 = 1, so singletons are captured by themselves.
std::uint64_t branching_at(const type_spec& t, level l);

bool captures(const scheme_view& v, const ord_set& f, const std::vector<ord_set>& c);
bool fully_captures(const scheme_view& v, const ord_set& f, const std::vector<ord_set>& c);
// captures with the rank and decomposition already known
bool captures_decomposed(const type_spec& t, level l, const decomposition& d, const std::vector<ord_set>& c);

// the level rho^C when the singletons of C are captured
std::optional<level> ordinal_tuple_captured(const universe& u, const ord_set& c);

struct capture_query {
    std::vector<ord_set> family;
    std::size_t n = 2;
    std::optional<partition_spec> partition;
    std::uint64_t cell = 0;
    level k_min = -1;
    std::uint64_t window = 0;
};

struct capture_hit {
    level l;
    ord_set f;
    std::vector<std::size_t> indices;  // family index of c_0, c_1, ...

    bool operator==(const capture_hit&) const = default;
};

std::vector<capture_hit> scan_captured(const scheme_view& v, const capture_query& q);

}  // namespace cs
