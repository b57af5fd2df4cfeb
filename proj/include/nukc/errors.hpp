#pragma once

#include <stdexcept>
#include <string>

namespace nukc {

// Malformed input: bad ids, inconsistent sizes, violated preconditions on data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A lift or reduction was handed a solution that does not satisfy its contract.
class ContractViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A guarantee the algorithm relies on did not hold at runtime.
class InternalAssertion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nukc
