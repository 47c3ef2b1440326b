#pragma once

#include <stdexcept>

namespace plateau {

// A circuit failed class validation and the caller did not waive it.
struct ClassValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A dense simulation was requested above the configured qubit cap.
struct CapExceeded : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace plateau
