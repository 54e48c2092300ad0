#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cs/ordinal.hpp"
#include "cs/scheme.hpp"
#include "cs/type.hpp"
#include "cs/universe.hpp"

namespace cs {

struct check_result {
    std::string name;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    std::string counterexample;  // payload of the first failure
    std::string note;            // informational, never decides pass/fail

    bool pass() const { return failures == 0; }

    template <class Payload>
    void record(bool ok, Payload&& payload) {
        ++cases;
        if (ok) return;
        if (failures++ == 0) counterexample = payload();
    }
};

struct suite_report {
    std::string suite;
    std::string type;
    std::deque<check_result> checks;  // add() hands out stable references

    bool ok() const;
    check_result& add(const std::string& name);
    const check_result* find(const std::string& name) const;
};

std::string report_to_json(const suite_report& r);
suite_report report_from_json(const std::string& text);

struct verify_options {
    std::optional<type_spec> type;  // each suite has its own default
    std::uint64_t window = 0;       // 0: suite default
    level depth = -1;               // -1: suite default
};

// suites: type scheme metric lemmas countryman aronszajn luzin capture
// coloring lattice suslin oscillation forcing ih2
const std::vector<std::string>& suite_names();
// throws unknown_suite
suite_report run_suite(const std::string& name, const verify_options& opt = {});

// The scheme over m_L read off the materialized family, with no positional
// descent: a closure is the trace of a stored member. Used as an oracle.
class table_universe : public universe {
public:
    table_universe(type_spec t, level L);

    const type_spec& type() const override { return type_; }
    bool in_domain(ordinal b) const override { return b < m_; }
    ord_set closure(ordinal b, level k) const override;
    ord_set member_containing(ordinal b, level k) const override;
    bool is_member(const ord_set& s) const override;
    level rho(ordinal a, ordinal b) const override;
    std::string describe() const override;

    level top() const { return L_; }
    std::uint64_t size() const { return m_; }
    const std::vector<ord_set>& sets() const { return sets_; }
    // sets of rank k
    std::vector<ord_set> of_rank(level k) const;
    level rank_of(const ord_set& s) const;
    // the stored members of rank k-1 inside f, in order, and their intersection
    decomposition pieces_of(const ord_set& f) const;
    // piece index of b in its stored rank-k member, -1 in the root
    std::int64_t xi(ordinal b, level k) const;

private:
    const ord_set& holder(ordinal b, level k) const;

    type_spec type_;
    level L_;
    std::uint64_t m_;
    std::vector<ord_set> sets_;
    std::vector<std::vector<std::size_t>> holder_;  // [k][x]: a rank-k set containing x
};

// hashed index stream for the sampled checks; no seed
std::uint64_t mix64(std::uint64_t x);

}  // namespace cs
