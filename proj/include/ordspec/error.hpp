#pragma once

#include <stdexcept>
#include <string>

namespace ordspec {

// Error taxonomy shared by every module.
//
// - std::invalid_argument: a parameter precondition was violated (q outside
//   (0,1], L outside [1,n], n outside the enumeration bound, ...).
// - DataError: the input data itself is unusable (empty, non-finite, odd
//   length, malformed file).
// - NumericError: the data is well-formed but the requested quantity is not
//   defined for it (zero total power, zero variance, eigensolver failure).

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ordspec
