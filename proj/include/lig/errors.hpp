#pragma once

#include <stdexcept>
#include <string>

namespace lig {

// Base for all library errors. The CLI maps subclasses to exit codes:
// InvalidInput -> 4, Infeasible -> 2, BudgetExhausted -> 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
  using Error::Error;
};

// A requested computation has no feasible answer (dominated goal,
// empty target set, ...). Not a usage error.
struct Infeasible : Error {
  using Error::Error;
};

// A node-visit, round, or subset-sweep budget ran out before completion.
struct BudgetExhausted : Error {
  using Error::Error;
};

}  // namespace lig
