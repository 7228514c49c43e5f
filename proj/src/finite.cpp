#include "meadow/finite.hpp"

#include <algorithm>

namespace meadow {

FiniteTables::FiniteTables(const TotalAlgebra& a, std::size_t max_size) {
  if (!a.is_finite()) throw AlgebraError(a.name() + " is not finite");
  elems_ = a.elements();
  if (elems_.size() > max_size)
    throw AlgebraError(a.name() + " is too large to tabulate (" + std::to_string(elems_.size()) + " elements)");
  n_ = elems_.size();
  for (std::size_t i = 0; i < n_; ++i) index_.emplace(elems_[i], static_cast<Index>(i));
  zero_ = index_of(a.zero());
  one_ = index_of(a.one());
  bot_ = index_of(a.bot());
  add_.resize(n_ * n_);
  mul_.resize(n_ * n_);
  div_.resize(n_ * n_);
  neg_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    neg_[i] = index_of(a.neg(elems_[i]));
    for (std::size_t j = 0; j < n_; ++j) {
      add_[i * n_ + j] = index_of(a.add(elems_[i], elems_[j]));
      mul_[i * n_ + j] = index_of(a.mul(elems_[i], elems_[j]));
      div_[i * n_ + j] = index_of(a.div(elems_[i], elems_[j]));
    }
  }
  zero_like_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i)
    zero_like_[i] = i != bot_ && mul(zero_, static_cast<Index>(i)) == i;
}

FiniteTables::Index FiniteTables::index_of(const Element& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) throw AlgebraError("operation left the enumerated carrier");
  return it->second;
}

CompiledTerm::CompiledTerm(const Term& t, const std::vector<std::string>& vars) {
  std::unordered_map<const void*, std::uint32_t> seen;
  emit(t, vars, seen);
}

std::uint32_t CompiledTerm::emit(const Term& t, const std::vector<std::string>& vars,
                                 std::unordered_map<const void*, std::uint32_t>& seen) {
  if (auto it = seen.find(t.id()); it != seen.end()) return it->second;
  Instr in{t.op()};
  if (t.op() == Op::var) {
    auto it = std::find(vars.begin(), vars.end(), t.name());
    if (it == vars.end()) throw AlgebraError("unbound variable '" + t.name() + "'");
    in.a = static_cast<std::uint32_t>(it - vars.begin());
  } else {
    std::uint32_t slots[3] = {0, 0, 0};
    for (std::size_t i = 0; i < t.args().size(); ++i) slots[i] = emit(t.arg(i), vars, seen);
    in.a = slots[0];
    in.b = slots[1];
    in.c = slots[2];
  }
  code_.push_back(in);
  auto at = static_cast<std::uint32_t>(code_.size() - 1);
  seen.emplace(t.id(), at);
  return at;
}

CompiledTerm::Index CompiledTerm::eval(const FiniteTables& ft, const Index* valuation,
                                       std::vector<Index>& scratch) const {
  scratch.resize(code_.size());
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instr& in = code_[i];
    Index r = 0;
    switch (in.op) {
      case Op::var: r = valuation[in.a]; break;
      case Op::zero: r = ft.zero(); break;
      case Op::one: r = ft.one(); break;
      case Op::bot: r = ft.bot(); break;
      case Op::neg: r = ft.neg(scratch[in.a]); break;
      case Op::add: r = ft.add(scratch[in.a], scratch[in.b]); break;
      case Op::mul: r = ft.mul(scratch[in.a], scratch[in.b]); break;
      case Op::div: r = ft.div(scratch[in.a], scratch[in.b]); break;
      case Op::cond: r = ft.cond(scratch[in.a], scratch[in.b], scratch[in.c]); break;
    }
    scratch[i] = r;
  }
  return scratch.back();
}

}  // namespace meadow
