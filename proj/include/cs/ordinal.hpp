#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cs {

// Ordinals below omega^2 packed as block * 2^32 + offset. The
// numeric order is the ordinal order. Values below 2^32 are the naturals.
using ordinal = std::uint64_t;
using level = int;

constexpr unsigned block_shift = 32;
constexpr ordinal offset_mask = (ordinal{1} << block_shift) - 1;

constexpr ordinal omega_times(std::uint64_t block) { return block << block_shift; }
constexpr ordinal make_ordinal(std::uint64_t block, std::uint64_t offset) {
    return (block << block_shift) | offset;
}
constexpr std::uint64_t block_of(ordinal a) { return a >> block_shift; }
constexpr std::uint64_t offset_of(ordinal a) { return a & offset_mask; }
constexpr bool is_limit(ordinal a) { return a != 0 && offset_of(a) == 0; }

std::string ordinal_to_string(ordinal a);
// Accepts "17", "w", "w2", "w2+3", "w*2+3" and the same with the omega sign.
std::optional<ordinal> parse_ordinal(const std::string& text);

// A strictly increasing finite sequence of ordinals.
using ord_set = std::vector<ordinal>;

bool is_strictly_sorted(const ord_set& a);
ord_set normalized(ord_set a);  // sort + dedupe

bool contains(const ord_set& a, ordinal x);
bool is_subset(const ord_set& a, const ord_set& b);
// a is an initial segment of b
bool is_initial_segment(const ord_set& a, const ord_set& b);
ord_set set_union(const ord_set& a, const ord_set& b);
ord_set set_intersection(const ord_set& a, const ord_set& b);
ord_set set_difference(const ord_set& a, const ord_set& b);
// every element of a below every element of b
bool precedes(const ord_set& a, const ord_set& b);
// position of x in a, or npos
std::size_t index_of(const ord_set& a, ordinal x);
// {a(i) : i in idx}
ord_set select(const ord_set& a, const std::vector<std::uint64_t>& idx);
ord_set below(const ord_set& a, ordinal bound);          // a cap bound
ord_set at_or_above(const ord_set& a, ordinal bound);    // a minus bound
ord_set iota_set(ordinal from, ordinal to);              // [from, to)
// image of s under the increasing bijection from dom onto cod
ord_set transport_image(const ord_set& dom, const ord_set& cod, const ord_set& s);

std::string to_string(const ord_set& a);

struct ord_set_hash {
    std::size_t operator()(const ord_set& a) const noexcept;
};

}  // namespace cs
