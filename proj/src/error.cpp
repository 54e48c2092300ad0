#include "cs/error.hpp"

namespace cs {

const char* errc_name(errc c) {
    switch (c) {
    case errc::invalid_argument: return "InvalidArgument";
    case errc::invalid_type: return "InvalidType";
    case errc::incompatible_partition: return "IncompatiblePartition";
    case errc::level_too_deep: return "LevelTooDeep";
    case errc::not_member: return "NotMember";
    case errc::rank_zero: return "RankZero";
    case errc::rank_mismatch: return "RankMismatch";
    case errc::not_subscheme: return "NotSubscheme";
    case errc::non_integer_quotient: return "NonIntegerQuotient";
    case errc::non_binary_type: return "NonBinaryType";
    case errc::type_too_small: return "TypeTooSmall";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::no_witness_in_budget: return "NoWitnessInBudget";
    case errc::demand_unsatisfiable: return "DemandUnsatisfiable";
    case errc::bound_violation: return "BoundViolation";
    case errc::scan_budget_exceeded: return "ScanBudgetExceeded";
    case errc::precondition_violation: return "PreconditionViolation";
    case errc::unknown_suite: return "UnknownSuite";
    case errc::invariant_violation: return "InvariantViolation";
    }
    return "Unknown";
}

int exit_code_for(errc c) {
    switch (c) {
    case errc::level_too_deep:
    case errc::budget_exceeded:
    case errc::scan_budget_exceeded:
    case errc::no_witness_in_budget:
        return 2;
    case errc::non_integer_quotient:
    case errc::invariant_violation:
        return 3;
    default:
        return 1;
    }
}

void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace cs
