#pragma once

#include <cstdint>
#include <compare>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cs/ordinal.hpp"
#include "cs/type.hpp"
#include "cs/universe.hpp"

namespace cs {

// A point of N is a tuple whose first coordinate is its level.
using coded_point = std::vector<std::uint64_t>;

struct truncated_set {
    level K = 0;
    std::vector<coded_point> elements;  // sorted, unique

    bool contains(const coded_point& p) const;
    std::vector<coded_point> at_level(level k) const;
    std::optional<level> max_level() const;
};

truncated_set intersect(const truncated_set& a, const truncated_set& b);
truncated_set difference(const truncated_set& a, const truncated_set& b);

// throws non_binary_type unless n_k = 2 for 1 <= k <= K
void require_binary(const type_spec& t, level K);

// Luzin-Jones family
truncated_set luzin_jones_level(const universe& u, ordinal alpha, level k);
truncated_set luzin_jones(const universe& u, ordinal alpha, level K);
truncated_set jones_separator(const universe& u, ordinal beta, level K);

// Countryman line
bool countryman_less(const universe& u, ordinal alpha, ordinal beta);
struct chain_label {
    std::uint64_t x = 0, y = 0;
    level z = 0;
    bool operator==(const chain_label&) const = default;
    auto operator<=>(const chain_label&) const = default;
};
chain_label countryman_chain_index(const universe& u, ordinal alpha, ordinal beta);

// special Aronszajn tree: a node is rho_beta with finitely many values changed
struct aronszajn_function {
    ordinal beta = 0;
    std::vector<level> values;  // values[xi] for xi <= beta
};
aronszajn_function aronszajn_node(const universe& u, ordinal beta);
aronszajn_function with_overrides(const universe& u, ordinal beta, const std::map<ordinal, level>& changes);
struct antichain_label {
    level k = 0;
    std::uint64_t s = 0;
    bool operator==(const antichain_label&) const = default;
    auto operator<=>(const antichain_label&) const = default;
};
antichain_label antichain_index(const universe& u, const aronszajn_function& f);

// Hausdorff gap
struct gap_pair {
    ord_set a, b;
};
gap_pair gap_sets(const universe& u, ordinal alpha, level K);

// Luzin coherent family; points are (k, i, j, s)
struct coherent_function {
    truncated_set domain;
    std::map<coded_point, ordinal> values;
};
coherent_function coherent_family(const universe& u, ordinal alpha, level K);

// coherent Suslin tree; cell 0 of the partition plays P_c, cell 1 plays P_a
int coherent_suslin_bit(const universe& u, ordinal beta, ordinal xi, const partition_spec& part);
std::vector<int> coherent_suslin_row(const universe& u, ordinal beta, const partition_spec& part);

// full Suslin tree. Nodes of T^F are addressed by position: (l, s) stands
// for (F(l), s).
struct suslin_tree {
    level k = 0;
    std::uint64_t height = 0;               // m_k
    std::vector<std::uint64_t> level_begin;  // node id of (l, 0)
    std::vector<std::int64_t> parent;        // -1 at the roots

    std::uint64_t width(std::uint64_t l) const { return level_begin[l + 1] - level_begin[l]; }
    std::uint64_t id(std::uint64_t l, std::uint64_t s) const { return level_begin[l] + s; }
    std::uint64_t size() const { return parent.size(); }
    std::uint64_t height_of(std::uint64_t node) const;
    bool less(std::uint64_t a, std::uint64_t b) const;
    std::vector<std::uint64_t> children(std::uint64_t node) const;
};

struct full_suslin_report {
    std::uint64_t seeds_checked = 0;   // enumerated r-good seeds
    std::uint64_t seeds_ok = 0;
    std::uint64_t good_sets = 0;       // all r-good subsets of T^{F_0}, when enumerable
    std::uint64_t good_sets_ok = 0;
    bool exhaustive = false;           // the enumeration covered every subset
};

constexpr std::uint64_t default_tree_budget = 5'000'000;

// the tree order on T^F for every F of rank k, given positionally
const suslin_tree& full_suslin_levels(const type_spec& t, level k, std::uint64_t budget = default_tree_budget);
// clause (c) at rank k >= 1
full_suslin_report check_full_suslin_clause_c(const type_spec& t, level k);
// the order <_F restricted to T^{F_i}, read back as a rank k-1 tree
bool full_suslin_restriction_ok(const type_spec& t, level k);

// Small explicit trees for the amalgamation and goodness predicates.
struct finite_tree {
    std::vector<std::uint64_t> nodes;                       // sorted
    std::vector<std::pair<std::uint64_t, std::uint64_t>> less;  // strict order pairs

    bool lt(std::uint64_t a, std::uint64_t b) const;
    std::vector<std::uint64_t> below(std::uint64_t x) const;
    std::uint64_t rank(std::uint64_t x) const { return below(x).size(); }
};
finite_tree tree_from_parents(const suslin_tree& t, std::uint64_t max_height);
bool is_tree(const finite_tree& t);
finite_tree amalgamate(const finite_tree& t, const finite_tree& l, std::uint64_t level_l,
                       const std::map<std::uint64_t, std::vector<std::uint64_t>>& branches);
bool l_good(const finite_tree& t, const std::vector<std::uint64_t>& c, std::uint64_t l);

// Suslin lower semilattice. Points of N are (k, a, b).
struct lattice_family {
    level k = 0;
    std::uint64_t rows = 0, cols = 0;  // m_k, 2^k
    std::vector<std::vector<coded_point>> sets;  // S^k_(a,b) at a*cols + b, each sorted

    const std::vector<coded_point>& at(std::uint64_t a, std::uint64_t b) const { return sets[a * cols + b]; }
};
const lattice_family& lattice_level(const type_spec& t, level k);
// S_x truncated at K, x = (alpha, b)
std::vector<coded_point> lattice_point(const universe& u, ordinal alpha, std::uint64_t b, level K);
// map the index (a, b) of A_k to A_{k+1}
std::pair<std::uint64_t, std::uint64_t> lattice_phi(const type_spec& t, level k, std::uint64_t a, std::uint64_t b);

// entangled set
std::vector<std::int64_t> entangled_real(const universe& u, ordinal alpha, std::uint64_t length);
// C^k_i as a subset of m_k \ r_{k+1}
ord_set entangled_subset(const type_spec& t, level k, std::uint64_t i);
// nullopt when the prefixes agree
std::optional<bool> lex_less(const std::vector<std::int64_t>& f, const std::vector<std::int64_t>& g);
// the pattern realized by two disjoint tuples of equal size, as '<' / '>'
std::string realizes_pattern(const std::vector<std::vector<std::int64_t>>& a,
                             const std::vector<std::vector<std::int64_t>>& b);

// 2-bounded coloring
std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b);
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z);
std::uint64_t polychromatic_color(const universe& u, ordinal alpha, ordinal beta);

// Naturals past 2^64: the allocator's frontier doubles with every interval.
struct big_nat {
    std::vector<std::uint32_t> limbs;  // little endian, no trailing zeros

    static big_nat of(std::uint64_t v);
    big_nat times_two_plus(std::uint64_t add) const;
    bool fits_u64() const { return limbs.size() <= 2; }
    std::uint64_t to_u64() const;
    std::string to_string() const;
    bool operator==(const big_nat&) const = default;
    std::strong_ordering operator<=>(const big_nat& o) const;
};

// oscillation partition of omega
struct osc_interval {
    std::uint64_t n = 0, k = 0;
    big_nat lo, hi;  // [lo, hi] = [l, 2l+k] inside P_n
};
class omega_partition {
public:
    std::uint64_t cell_of(std::uint64_t x) const;
    // allocations covering [0, x]
    std::vector<osc_interval> log_through(std::uint64_t x) const;
    // the allocation made for (n, k)
    osc_interval allocation_for(std::uint64_t n, std::uint64_t k) const;

private:
    void extend_to(std::uint64_t x) const;
    void extend_until(std::uint64_t n, std::uint64_t k) const;
    void step() const;
    mutable std::vector<osc_interval> log_;
    mutable std::uint64_t next_ = 0;  // index into the diagonal enumeration
    mutable std::mutex mu_;
};
const omega_partition& build_osc_partition();
std::uint64_t osc_color_o(const universe& u, ordinal alpha, ordinal beta);

// the enumeration {h_n}: maps on X_n x X_n for an antichain X_n of finite sequences
struct finite_map_code {
    bool valid = false;
    std::vector<std::vector<std::uint64_t>> domain;
    std::vector<std::uint64_t> values;  // values[i * |X| + j] = h(X(i), X(j))
};
finite_map_code decode_h(std::uint64_t n);
std::uint64_t encode_h(const std::vector<std::vector<std::uint64_t>>& domain, const std::vector<std::uint64_t>& values);
std::uint64_t o_star(const universe& u, ordinal alpha, ordinal beta);

// pretower, S-space points and the C(beta) topology
std::vector<std::pair<std::uint64_t, std::uint64_t>> pretower_set(const universe& u, ordinal alpha, std::uint64_t n);
enum class sspace_side { x, y };
int sspace_point(const universe& u, ordinal alpha, ordinal beta, sspace_side side);
ord_set hset_level(const universe& u, ordinal beta, level l);
ord_set hset(const universe& u, ordinal beta);
class cset_cache {
public:
    explicit cset_cache(const universe& u) : u_(u) {}
    const ord_set& cset(ordinal beta);
    ord_set cset_k(ordinal beta, level k);

private:
    const universe& u_;
    std::map<ordinal, ord_set> memo_;
};
std::uint64_t bounded_h(const universe& u, ordinal alpha, level i);
int neg_partition_color(const universe& u, ordinal alpha, ordinal beta);

// independent coherent family. Points are (k, 0, a, b) for {a < b} in [r_k]^2
// and (k, 1, j, 0) for j < m_k - r_k.
std::vector<std::pair<std::uint64_t, std::uint64_t>> indep_subset(const type_spec& t, level k, std::uint64_t i);
coherent_function indep_coherent(const universe& u, ordinal alpha, level K);
struct chi_report {
    bool compatible = false;
    bool truncated = true;
    level K = 0;
};
// sigma in chi_i(c) for the pair c = (c0, c1), using the fibers A^{c0}, A^{c1}
chi_report chi_compatible(const universe& u, const ord_set& sigma, ordinal c0, ordinal c1, int which, level K);

}  // namespace cs
