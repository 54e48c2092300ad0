#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "cs/ordinal.hpp"
#include "cs/type.hpp"
#include "cs/universe.hpp"

namespace cs {

struct decomposition {
    std::vector<ord_set> pieces;
    ord_set root;
};

constexpr std::size_t default_set_budget = 2'000'000;

// All of F(m_k), sorted by (rank, lexicographic).
struct level_table {
    level k = 0;
    std::vector<ord_set> sets;
    std::vector<std::size_t> rank_begin;  // sets of rank j are [rank_begin[j], rank_begin[j+1])
};

// The unique scheme over omega for a type, answered by positional descent
// through the canonical block decompositions of the m_L.
class scheme_view : public universe {
public:
    explicit scheme_view(type_spec t, std::size_t set_budget = default_set_budget);

    const type_spec& type() const override { return type_; }
    bool in_domain(ordinal b) const override { return block_of(b) == 0; }
    ord_set closure(ordinal b, level k) const override;
    std::uint64_t closure_size(ordinal b, level k) const override;
    ord_set member_containing(ordinal b, level k) const override;
    bool is_member(const ord_set& s) const override;
    level rho(ordinal a, ordinal b) const override;
    std::string describe() const override { return "omega[" + type_.name() + "]"; }

    // least L with b < m_L
    level level_of(ordinal b) const;
    // |(b)_k| - 1
    std::uint64_t position(ordinal b, level k) const;
    // image of [0, count) under the embedding of m_k that carries position
    // position(b,k) to b
    ord_set embed_prefix(ordinal b, level k, std::uint64_t count) const;

    level rank_of(const ord_set& s) const;
    decomposition decompose(const ord_set& f) const;
    ord_set transport(const ord_set& from, const ord_set& to, const ord_set& s) const;

    // F(m_k), memoized
    const level_table& finite_scheme(level k) const;
    // every F in F_k with F inside [0, N), lexicographic
    std::vector<ord_set> elements_of_rank_within(level k, std::uint64_t N) const;
    void for_each_of_rank_within(level k, std::uint64_t N, const std::function<void(const ord_set&)>& fn) const;

    std::size_t set_budget() const { return budget_; }

private:
    type_spec type_;
    std::size_t budget_;
    mutable std::mutex mu_;
    mutable std::map<level, std::shared_ptr<const level_table>> tables_;
};

// F(m_k) built directly from the amalgamation recursion, without caching.
std::vector<ord_set> build_finite_scheme(const type_spec& t, level k, std::size_t budget = default_set_budget);

// canonical decomposition of an arbitrary F of rank k given as a set: the
// pieces are read off by position
decomposition decompose_by_position(const type_spec& t, const ord_set& f, level k);

// JSON export of a level, and the Hasse diagram of strict inclusion.
std::string level_to_json(const level_table& tab, std::uint64_t m);
level_table level_from_json(const std::string& text);
std::string level_to_dot(const level_table& tab);

// morass properties of a finite family
bool is_homogeneous(const std::vector<ord_set>& fam);
bool is_directed(const std::vector<ord_set>& fam);
bool is_locally_almost_directed(const std::vector<ord_set>& fam);

}  // namespace cs
