#pragma once

#include <cstdint>

#include "meadow/term.hpp"

namespace meadow {

/// p/q with p and q free of division, bot and cond.
struct FlatFracterm {
  Term num;
  Term den;

  Term as_term() const { return Term::div(num, den); }
};

/// Rewrites a cond-free term into a single fraction equal to it in every
/// model of the fracterm calculus axioms. Throws std::invalid_argument on cond.
FlatFracterm flatten(const Term& t);

struct FlattenStats {
  std::uint64_t input_size = 0;
  std::uint64_t output_num_size = 0;
  std::uint64_t output_den_size = 0;
};

FlattenStats flatten_stats(const Term& t);

}  // namespace meadow
