#pragma once

#include <stdexcept>

namespace parklot {

// Arguments violate a scheme precondition.
struct InvalidSpec : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A scheme's divisibility requirement does not hold (e.g. the T-th root of
// the node count is not an integer and no padding mode was requested).
struct DivisibilityError : InvalidSpec {
  using InvalidSpec::InvalidSpec;
};

// No path exists between the requested endpoints.
struct UnreachableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Saturation search: even the low end of the rate bracket is unstable.
struct NoStablePoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace parklot
