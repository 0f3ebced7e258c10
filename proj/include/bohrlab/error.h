#ifndef BOHRLAB_ERROR_H_
#define BOHRLAB_ERROR_H_

#include <stdexcept>
#include <string>

namespace bohrlab {

// Base of every error thrown by the library. The CLI maps the concrete
// subclasses onto exit codes (invalid input 2, budget/resource 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Arithmetic would produce more terms than the configured budget allows.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A growable table (primes) would exceed its memory budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class SideMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

}  // namespace bohrlab

#endif  // BOHRLAB_ERROR_H_
