#include "meadow/gen.hpp"

namespace meadow {

namespace {

Term leaf(Rng& rng, const TermShape& s) {
  std::size_t consts = s.allow_bot ? 3 : 2;
  std::uniform_int_distribution<std::size_t> d(0, s.vars.size() + consts - 1);
  std::size_t k = d(rng);
  if (k < s.vars.size()) return Term::var(s.vars[k]);
  switch (k - s.vars.size()) {
    case 0: return Term::zero();
    case 1: return Term::one();
    default: return Term::bot();
  }
}

Term grow(Rng& rng, const TermShape& s, int depth) {
  // Stop early now and then so sizes vary.
  if (depth >= s.max_depth || std::uniform_int_distribution<int>(0, 3)(rng) == 0) return leaf(rng, s);
  int ops = s.allow_cond ? 5 : 4;
  switch (std::uniform_int_distribution<int>(0, ops - 1)(rng)) {
    case 0: return Term::neg(grow(rng, s, depth + 1));
    case 1: return Term::add(grow(rng, s, depth + 1), grow(rng, s, depth + 1));
    case 2: return Term::mul(grow(rng, s, depth + 1), grow(rng, s, depth + 1));
    case 3: return Term::div(grow(rng, s, depth + 1), grow(rng, s, depth + 1));
    default:
      return Term::cond(grow(rng, s, depth + 1), grow(rng, s, depth + 1), grow(rng, s, depth + 1));
  }
}

}  // namespace

Term random_term(Rng& rng, const TermShape& shape) { return grow(rng, shape, 0); }

}  // namespace meadow
