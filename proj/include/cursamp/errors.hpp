#pragma once

#include <stdexcept>
#include <string>

namespace cursamp {

/// Precondition or bounds violation on caller-supplied data.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Reference to a sample, arm or anchor id that does not exist.
class LookupError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

namespace detail {

[[noreturn]] inline void fail_validation(const std::string& what) {
  throw ValidationError(what);
}

inline void require(bool ok, const std::string& what) {
  if (!ok) {
    fail_validation(what);
  }
}

}  // namespace detail
}  // namespace cursamp
