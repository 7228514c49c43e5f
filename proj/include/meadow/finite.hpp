#pragma once

// Index-table view of a finite total algebra and terms compiled to straight
// line code over it. Used by exhaustive checks; agrees with eval().

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "meadow/algebra.hpp"

namespace meadow {

class FiniteTables {
 public:
  using Index = std::uint32_t;

  /// Tabulates every operation; rejects infinite or oversized carriers.
  explicit FiniteTables(const TotalAlgebra& a, std::size_t max_size = 2048);

  std::size_t size() const { return elems_.size(); }
  /// Carrier in the algebra's enumeration order (bot last).
  const std::vector<Element>& elements() const { return elems_; }
  const Element& element(Index i) const { return elems_[i]; }
  Index index_of(const Element& e) const;

  Index zero() const { return zero_; }
  Index one() const { return one_; }
  Index bot() const { return bot_; }

  Index add(Index a, Index b) const { return add_[a * n_ + b]; }
  Index mul(Index a, Index b) const { return mul_[a * n_ + b]; }
  Index div(Index a, Index b) const { return div_[a * n_ + b]; }
  Index neg(Index a) const { return neg_[a]; }
  Index cond(Index x, Index y, Index z) const {
    if (y == bot_) return bot_;
    return add(zero_like_[y] ? z : x, mul(zero_, y));
  }

 private:
  std::size_t n_ = 0;
  std::vector<Element> elems_;
  std::unordered_map<Element, Index> index_;
  std::vector<Index> add_, mul_, div_, neg_;
  std::vector<char> zero_like_;
  Index zero_ = 0, one_ = 0, bot_ = 0;
};

/// A term as a DAG of instructions (shared subterms evaluated once).
class CompiledTerm {
 public:
  using Index = FiniteTables::Index;

  /// Variable i of `vars` reads slot i of the valuation. Throws if a free
  /// variable of t is missing from vars.
  CompiledTerm(const Term& t, const std::vector<std::string>& vars);

  Index eval(const FiniteTables& ft, const Index* valuation, std::vector<Index>& scratch) const;
  std::size_t length() const { return code_.size(); }

 private:
  struct Instr {
    Op op;
    std::uint32_t a = 0, b = 0, c = 0;
  };
  std::uint32_t emit(const Term& t, const std::vector<std::string>& vars,
                     std::unordered_map<const void*, std::uint32_t>& seen);

  std::vector<Instr> code_;
};

}  // namespace meadow
