#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bruhat {

enum class ErrorKind {
  invalid_arguments,
  parse_error,
  domain_mismatch,
  not_admissible,
  not_realizable,
  not_a_chain,
  not_reduced,
  malformed_slice,
  recursion_depth,
  cap_exceeded,
  budget_exceeded,
  degenerate_input,
  extension_failure,
  shape_violation,
  internal_consistency,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when an enumeration hits its configured cap. `reached` is the
/// number of items produced before giving up.
class LimitExceeded : public Error {
 public:
  LimitExceeded(ErrorKind kind, const std::string& message, std::size_t reached)
      : Error(kind, message), reached_(reached) {}

  std::size_t reached() const noexcept { return reached_; }

 private:
  std::size_t reached_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace bruhat
