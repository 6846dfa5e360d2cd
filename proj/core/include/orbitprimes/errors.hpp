#pragma once

#include <stdexcept>

namespace orbitprimes {

// Input is outside an operation's documented domain (bad denominator, wrong
// sign, malformed text, ...).  Maps to CLI exit code 2.
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input is in-domain but exceeds what this build is configured to handle
// (degree caps, bit-size guards, work budgets).  Maps to CLI exit code 3.
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace orbitprimes
