#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cs/ordinal.hpp"
#include "cs/scheme.hpp"
#include "cs/type.hpp"
#include "cs/universe.hpp"

namespace cs {

// Largest finite set the lab will materialize (conditions and witnesses).
constexpr std::uint64_t default_condition_budget = std::uint64_t{1} << 22;

// A scheme over gamma = omega * blocks() that can produce IH1 witnesses.
class ground : public universe {
public:
    virtual std::uint64_t blocks() const = 0;
    // F with A inside F_0 and R(F) = F cap alpha
    virtual ord_set ih1_witness(const ord_set& a, ordinal alpha) const = 0;
    // some member of rank >= k containing x
    virtual ord_set member_covering(const ord_set& x, level k) const = 0;

    ordinal gamma() const { return make_ordinal(blocks(), 0); }
};

class omega_ground : public ground {
public:
    explicit omega_ground(type_spec t, std::uint64_t budget = default_condition_budget);

    const type_spec& type() const override { return view_.type(); }
    bool in_domain(ordinal b) const override { return view_.in_domain(b); }
    ord_set closure(ordinal b, level k) const override { return view_.closure(b, k); }
    std::uint64_t closure_size(ordinal b, level k) const override { return view_.closure_size(b, k); }
    ord_set member_containing(ordinal b, level k) const override { return view_.member_containing(b, k); }
    bool is_member(const ord_set& s) const override { return view_.is_member(s); }
    level rho(ordinal a, ordinal b) const override { return view_.rho(a, b); }
    std::string describe() const override { return view_.describe(); }

    std::uint64_t blocks() const override { return 1; }
    // m_k for the least k with r_k = alpha and m_{k-1} > max A
    ord_set ih1_witness(const ord_set& a, ordinal alpha) const override;
    ord_set member_covering(const ord_set& x, level k) const override;

    const scheme_view& view() const { return view_; }

private:
    scheme_view view_;
    std::uint64_t budget_;
};

// red_delta(p); delta is a block boundary
ord_set red(const ord_set& p, ordinal delta);
// (F cap alpha) u [gamma, gamma + |F \ alpha|)
ord_set cut(const ground& g, const ord_set& f, ordinal alpha);

struct condition_clauses {
    bool a = false;           // |p| = m_k
    bool b = false;           // p cap gamma is an initial segment of a same-size member
    bool c = false;           // p \ gamma is an initial segment of the fresh block
    bool red_member = false;  // red_gamma(p) is a member
    level k = -1;
};
condition_clauses check_condition(const ground& g, const ord_set& p);
bool is_condition(const ground& g, const ord_set& p);
// p <= q, that is q in F(p), read through the increasing bijection p -> m_k
bool leq(const type_spec& t, const ord_set& p, const ord_set& q);

struct extension {
    level k = 0;
    ord_set q;
    ord_set witness;  // the IH1 witness the step was built from
};
extension extend_contain(const ground& g, const ord_set& p, ordinal alpha);
extension extend_root(const ground& g, const ord_set& p, ordinal beta, level k);

struct demand {
    enum class kind { contain, root, ih1 };
    kind op = kind::contain;
    ordinal alpha = 0;  // contain: the ordinal; root: beta; ih1: alpha
    level k = 0;        // root only
    ord_set a;          // ih1 only
};
std::string demand_op_name(demand::kind op);

struct demand_record {
    std::uint64_t seq = 0;
    demand request;
    bool internal = false;  // issued by a closure query rather than the user
    ord_set witness;        // F from IH1, or the answer of an ih1 demand
    ord_set condition;      // the strongest condition afterwards
    level k = 0;
};

// The scheme F^G over gamma + omega given by a finite descending chain of
// conditions. The chain starts at {gamma} and is extended lazily: queries for
// ordinals outside the current condition, or for levels above its rank, first
// meet the corresponding dense set.
class fragment : public ground {
public:
    explicit fragment(const ground& base, std::uint64_t budget = default_condition_budget);

    const type_spec& type() const override { return base_.type(); }
    bool in_domain(ordinal b) const override { return block_of(b) <= base_.blocks(); }
    ord_set closure(ordinal b, level k) const override;
    ord_set member_containing(ordinal b, level k) const override;
    bool is_member(const ord_set& s) const override;
    level rho(ordinal a, ordinal b) const override;
    std::string describe() const override;

    std::uint64_t blocks() const override { return base_.blocks() + 1; }
    ord_set ih1_witness(const ord_set& a, ordinal alpha) const override;
    ord_set member_covering(const ord_set& x, level k) const override;

    const demand_record& meet(const demand& d);

    ord_set condition() const;
    level rank() const;
    std::vector<demand_record> log() const;
    const ground& base() const { return base_; }
    // (b)_k read off the current condition, when it already decides it
    std::optional<ord_set> closure_in_condition(ordinal b, level k) const;

private:
    void ensure(ordinal b, level k) const;
    void ensure_all(const ord_set& x, level k) const;
    void advance(const demand& d, bool internal, const extension& e) const;
    ord_set positional_closure(ordinal b, level k) const;
    void check_domain(ordinal b) const;

    const ground& base_;
    scheme_view positions_;
    std::uint64_t budget_;
    mutable std::recursive_mutex mu_;
    mutable ord_set p_;
    mutable level k_ = 0;
    mutable std::vector<demand_record> log_;
};

// processes the demands in order on a fresh fragment
std::unique_ptr<fragment> generic_build(const ground& base, const std::vector<demand>& demands,
                                        std::uint64_t budget = default_condition_budget);

}  // namespace cs
