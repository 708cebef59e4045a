// Exception types mapped to CLI exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace weilform {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnsupportedLevel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsufficientOrder : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An invariant that the theory guarantees failed to hold.
struct MathInconsistency : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace weilform
