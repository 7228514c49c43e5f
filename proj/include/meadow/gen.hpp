#pragma once

// Seeded random terms for fuzzing.

#include <string>
#include <vector>

#include "meadow/algebra.hpp"
#include "meadow/term.hpp"

namespace meadow {

struct TermShape {
  int max_depth = 4;
  std::vector<std::string> vars = {"x", "y", "z"};
  bool allow_bot = true;
  bool allow_cond = false;
};

/// Leaves are drawn from the variables, 0, 1 and (optionally) bot; inner
/// nodes from -, +, *, / (and cond). Depth counts edges from the root.
Term random_term(Rng& rng, const TermShape& shape);

}  // namespace meadow
