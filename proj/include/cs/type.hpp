#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cs/ordinal.hpp"

namespace cs {

// Beyond the explicit prefix, levels follow a declarative rule.
//  round_robin: n_k = n, and r_k is read from the triangular stream
//    0; 0 1; 0 1 2; ... with the positions dealt into lanes, lane j
//    starting at stream offset lanes[j]. Each lane is a tail of a stream
//    that returns to every value, so every r recurs.
//  constant: n_k = n, r_k = r.
struct schedule_rule {
    enum class kind { round_robin, constant };
    kind k = kind::round_robin;
    std::uint64_t n = 2;
    std::vector<std::uint64_t> lanes{0};
    std::uint64_t r = 0;

    bool operator==(const schedule_rule&) const = default;
};

// value of the triangular stream at position t
std::uint64_t triangular_stream(std::uint64_t t);

struct clause_failure {
    level k = 0;
    char clause = '?';
    std::string message;
};

class type_spec {
public:
    static constexpr level max_levels = 64;

    type_spec();
    type_spec(std::string name, std::vector<std::pair<std::uint64_t, std::uint64_t>> prefix,
              schedule_rule rule);

    const std::string& name() const { return name_; }
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& prefix() const { return prefix_; }
    const schedule_rule& schedule() const { return rule_; }

    // raw parameters for k >= 1, with no validation
    std::uint64_t n(level k) const;
    std::uint64_t r(level k) const;
    // m_k; throws invalid_type when some clause fails at or below k,
    // level_too_deep when m_k does not fit in 64 bits
    std::uint64_t m(level k) const;

    // highest level whose m is representable and valid
    level depth() const { return depth_; }
    const std::optional<clause_failure>& first_failure() const { return failure_; }
    // least L with x < m_L
    level level_containing(std::uint64_t x) const;
    bool binary_through(level K) const;

    bool operator==(const type_spec& o) const {
        return prefix_ == o.prefix_ && rule_ == o.rule_;
    }

private:
    void derive();

    std::string name_;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> prefix_;
    schedule_rule rule_;
    std::vector<std::uint64_t> m_;
    level depth_ = 0;
    std::optional<clause_failure> failure_;
};

std::vector<std::uint64_t> compute_m(const type_spec& spec, level K);

struct clause_report {
    char clause;
    level k;  // -1 when the clause is about the whole schedule
    bool pass;
    std::string message;
};

struct validation_report {
    std::vector<clause_report> entries;
    bool ok() const;
};

validation_report validate_type(const type_spec& spec, level K);

type_spec default_binary_type();
type_spec mixed_example_type();
// "T2", "binary", "Tstar", "T*", and the names registered by constructions
std::optional<type_spec> builtin_type(const std::string& name);
std::vector<std::string> builtin_type_names();

struct partition_spec {
    enum class kind { single, modulo, r_value };
    kind k = kind::single;
    std::uint64_t modulus = 2;
    std::uint64_t value = 0;

    std::uint64_t cell_count() const;
    std::uint64_t cell_of(level k, const type_spec& spec) const;
};

struct partition_report {
    bool compatible = false;
    std::vector<std::string> lines;
};

partition_report validate_partition(const type_spec& spec, const partition_spec& part, level K);
// throws incompatible_partition
void require_compatible(const type_spec& spec, const partition_spec& part, level K);

}  // namespace cs
