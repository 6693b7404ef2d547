#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flagctrl {

/// Rejected input: malformed data or a violated precondition of a public operation.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent computations that must agree did not. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Numerical breakdown: ill-conditioning, determinant drift, step size.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Enumeration stopped at a size cap.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::size_t partial_count)
      : std::runtime_error(what), partial_count_(partial_count) {}

  std::size_t partial_count() const noexcept { return partial_count_; }

 private:
  std::size_t partial_count_;
};

}  // namespace flagctrl
