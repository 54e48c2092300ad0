#pragma once

#include <stdexcept>
#include <string>

namespace cs {

enum class errc {
    invalid_argument,
    invalid_type,
    incompatible_partition,
    level_too_deep,
    not_member,
    rank_zero,
    rank_mismatch,
    not_subscheme,
    non_integer_quotient,
    non_binary_type,
    type_too_small,
    budget_exceeded,
    no_witness_in_budget,
    demand_unsatisfiable,
    bound_violation,
    scan_budget_exceeded,
    precondition_violation,
    unknown_suite,
    invariant_violation,
};

const char* errc_name(errc c);

// 1 user error, 2 budget, 3 internal invariant violation (a lemma check failed).
int exit_code_for(errc c);

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] void fail(errc code, const std::string& what);

}  // namespace cs
