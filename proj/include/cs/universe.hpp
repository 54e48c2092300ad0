#pragma once

#include <string>

#include "cs/ordinal.hpp"
#include "cs/type.hpp"

namespace cs {

// A construction scheme over some set of ordinals, seen through closures.
// The metric and capturing layers only talk to this interface, so they run
// unchanged over omega and over the forcing fragments.
class universe {
public:
    virtual ~universe() = default;

    virtual const type_spec& type() const = 0;
    virtual bool in_domain(ordinal b) const = 0;
    // (b)_k
    virtual ord_set closure(ordinal b, level k) const = 0;
    virtual std::uint64_t closure_size(ordinal b, level k) const { return closure(b, k).size(); }
    // a canonical F in F_k with b in F
    virtual ord_set member_containing(ordinal b, level k) const = 0;
    virtual bool is_member(const ord_set& s) const = 0;
    virtual level rho(ordinal a, ordinal b) const;
    virtual std::string describe() const = 0;

    // |(b)^-_k|, the number of elements of (b)_k below b
    std::uint64_t closure_position(ordinal b, level k) const { return closure_size(b, k) - 1; }
};

}  // namespace cs
