#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cs/ordinal.hpp"
#include "cs/type.hpp"
#include "cs/universe.hpp"

namespace cs {

// A block interval sequence: nonempty intervals of naturals, each below the next.
using block_sequence = std::vector<ord_set>;

struct good_entry {
    block_sequence blocks;
    std::uint64_t z = 0;

    bool operator==(const good_entry&) const = default;
    auto operator<=>(const good_entry&) const = default;
};
// T, one entry per member of S
using good_sequence = std::vector<good_entry>;

bool is_interval(const ord_set& s);
// s is a run of consecutive elements of host
bool is_interval_in(const ord_set& s, const ord_set& host);
// Bl(t, k) with m = m_k
bool in_bl(const block_sequence& b, std::uint64_t t, std::uint64_t m);
bool is_good_entry(const good_entry& e, std::uint64_t t, std::uint64_t m);
bool is_good(const type_spec& ty, const good_sequence& T, std::uint64_t t, level k);
// every (t,k)-good entry whose blocks lie in [lo, m_k), with at most max_blocks blocks
std::vector<good_entry> good_entries(const type_spec& ty, std::uint64_t t, level k, std::uint64_t lo,
                                     std::size_t max_blocks);

struct projection_result {
    block_sequence sets;
    std::vector<bool> interval;  // per block: an interval in m_l
    bool in_bl0 = true;
};
projection_result projection(const universe& u, ordinal xi, level k, level l, const good_entry& e);

struct approval {
    bool approved = false;
    std::optional<std::size_t> entry;  // the first approving entry
};
// (beta, xi, k, l) approves T
approval checkmark(const universe& u, ordinal beta, ordinal xi, level k, level l, const good_sequence& T);

// Trans(k, k', alpha, beta, T), entries sorted and deduplicated. Every block of
// T must lie above |(beta)^-_k|; a block reaching it would overlap the new
// first block (|(alpha)^-_k'|, |(beta)^-_k'|].
good_sequence trans(const universe& u, level k, level k2, ordinal alpha, ordinal beta, const good_sequence& T);

// the hypotheses on (xi, l) of the equivalence for Trans
bool trans_hypotheses(const universe& u, ordinal alpha, ordinal beta, ordinal xi, level k2, level l);

struct trans_grid {
    std::vector<ordinal> betas;
    std::vector<ordinal> xis;
    level k_lo = 2, k_hi = 2;
    level k2_hi = 3;
    level l_hi = 5;
    std::size_t max_blocks = 2;
};
struct trans_case {
    ordinal alpha = 0, beta = 0, xi = 0;
    level k = 0, k2 = 0, l = 0;
    good_entry entry;
    bool lhs = false, rhs = false;
};
struct trans_report {
    std::uint64_t scanned = 0;  // tuples visited
    std::uint64_t tuples = 0;   // tuples meeting the hypotheses
    std::uint64_t approved = 0; // tuples where both sides hold
    std::vector<trans_case> counterexamples;
    bool ok() const { return counterexamples.empty(); }
};
trans_report verify_trans_equiv(const universe& u, const trans_grid& g);

struct scan_bounds {
    std::uint64_t window = 64;        // G ranges over members inside [0, window)
    std::uint64_t max_sets = 200000;  // members or tuples visited before giving up
};

// delta must be omega, the only limit whose restriction is enumerated
bool accepted(const universe& u, const ord_set& c, const ord_set& g, level k, level l, ordinal beta, ordinal delta,
              const good_sequence& T);

struct j_result {
    std::uint64_t j = 0;
    ord_set c, g;  // a witness when j > 0
    std::uint64_t sets_scanned = 0;
};
j_result j_value(const universe& u, level k, level l, ordinal beta, ordinal delta, const ord_set& d,
                 const good_sequence& T, const scan_bounds& b);

struct ih2_row {
    level l = 0;
    bool clause_a = false;
    bool clause_b = false;
    std::uint64_t j = 0;
    bool witness = false;
    std::string detail;
};
// limit ordinals below beta
std::vector<ordinal> limits_below(ordinal beta);
std::vector<ih2_row> check_ih2_window(const universe& u, ordinal delta, ordinal beta, level k, const good_sequence& T,
                                      level l_lo, level l_hi, const ord_set& d, const scan_bounds& b);

}  // namespace cs
