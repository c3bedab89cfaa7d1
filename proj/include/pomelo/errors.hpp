#pragma once

#include <stdexcept>
#include <string>

namespace pomelo {

// Bad data supplied by the caller: malformed text, mixed rings, a table that
// fails a structural axiom. Recoverable; reported to the user.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A broken invariant inside the library itself (nonzero remainder where exact
// division was guaranteed, an iteration cap exhausted). Never the user's fault.
struct internal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace pomelo
