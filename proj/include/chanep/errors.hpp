#pragma once

#include <stdexcept>

namespace chanep {

// Input fails a structural or physicality requirement: malformed file schema,
// non-CPTP channel where a physical one is required, unknown fixture name,
// invalid weights.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation invoked outside its stated domain: no phase change on a search
// interval, a slice leaving the simplex, querying a value that is not an
// eigenvalue.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An iterative numerical procedure failed to reach its target accuracy.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace chanep
