#include "meadow/flatten.hpp"

#include <stdexcept>
#include <unordered_map>

namespace meadow {

namespace {

bool division_free(const Term& t) { return is_free_of(t, {Op::div, Op::bot, Op::cond}); }

class Flattener {
 public:
  FlatFracterm operator()(const Term& t) {
    if (auto it = memo_.find(t.id()); it != memo_.end()) return it->second;
    FlatFracterm f = step(t);
    memo_.emplace(t.id(), f);
    return f;
  }

 private:
  FlatFracterm step(const Term& t) {
    if (division_free(t)) return {t, Term::one()};
    switch (t.op()) {
      case Op::bot: return {Term::one(), Term::zero()};
      case Op::neg: {
        FlatFracterm a = (*this)(t.arg(0));
        return {Term::neg(a.num), a.den};
      }
      case Op::add: {
        FlatFracterm a = (*this)(t.arg(0));
        FlatFracterm b = (*this)(t.arg(1));
        return {Term::add(Term::mul(a.num, b.den), Term::mul(a.den, b.num)), Term::mul(a.den, b.den)};
      }
      case Op::mul: {
        FlatFracterm a = (*this)(t.arg(0));
        FlatFracterm b = (*this)(t.arg(1));
        return {Term::mul(a.num, b.num), Term::mul(a.den, b.den)};
      }
      case Op::div: {
        if (division_free(t.arg(0)) && division_free(t.arg(1))) return {t.arg(0), t.arg(1)};
        FlatFracterm a = (*this)(t.arg(0));
        FlatFracterm b = (*this)(t.arg(1));
        // (p/q)/(r/s) = (p*s*s)/(q*r*s); the extra s keeps s = 0 mapping to bot.
        return {Term::mul(Term::mul(a.num, b.den), b.den), Term::mul(Term::mul(a.den, b.num), b.den)};
      }
      case Op::cond: throw std::invalid_argument("flatten: cond is not supported");
      default: break;
    }
    throw std::logic_error("flatten: unreachable");
  }

  std::unordered_map<const void*, FlatFracterm> memo_;
};

}  // namespace

FlatFracterm flatten(const Term& t) {
  if (!is_free_of(t, {Op::cond})) throw std::invalid_argument("flatten: cond is not supported");
  return Flattener()(t);
}

FlattenStats flatten_stats(const Term& t) {
  FlatFracterm f = flatten(t);
  return {t.size(), f.num.size(), f.den.size()};
}

}  // namespace meadow
