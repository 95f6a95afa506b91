#pragma once

#include <stdexcept>
#include <string>

namespace bgap {

// Bad caller input: violated preconditions, inconsistent parameters, ranges
// outside a table. The CLI maps this to exit status 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An internal invariant failed (a bug, not bad input). Exit status 1.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

[[noreturn]] inline void fail_validation(const std::string& msg) { throw ValidationError(msg); }

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

}  // namespace bgap
