#include "bruhat/error.hpp"

namespace bruhat {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_arguments: return "invalid-arguments";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::domain_mismatch: return "domain-mismatch";
    case ErrorKind::not_admissible: return "not-admissible";
    case ErrorKind::not_realizable: return "not-realizable";
    case ErrorKind::not_a_chain: return "not-a-chain";
    case ErrorKind::not_reduced: return "not-reduced";
    case ErrorKind::malformed_slice: return "malformed-slice";
    case ErrorKind::recursion_depth: return "recursion-depth";
    case ErrorKind::cap_exceeded: return "cap-exceeded";
    case ErrorKind::budget_exceeded: return "budget-exceeded";
    case ErrorKind::degenerate_input: return "degenerate-input";
    case ErrorKind::extension_failure: return "extension-failure";
    case ErrorKind::shape_violation: return "shape-violation";
    case ErrorKind::internal_consistency: return "internal-consistency";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace bruhat
