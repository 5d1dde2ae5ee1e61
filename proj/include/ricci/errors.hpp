#pragma once

#include <stdexcept>
#include <string>

namespace ricci {

// Bad arguments, contract violations, unsupported requests.
struct argument_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Evaluation left the valid domain (FD stencil outside the chart box,
// sqrt of a negative, rank-deficient Jacobian, ...).
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// A numerical procedure failed to produce a usable result.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct rank_deficiency_error : numerical_error {
  rank_deficiency_error(const std::string& msg, int idx)
      : numerical_error(msg), index(idx) {}
  int index;
};

struct unsupported_error : argument_error {
  using argument_error::argument_error;
};

} // namespace ricci
