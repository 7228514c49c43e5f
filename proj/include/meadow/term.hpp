#pragma once

// Terms over the signature {0, 1, bot, -, +, *, /} plus the conditional
// operator cond(x; y; z) and variables. Terms are immutable and share
// structure; copying a Term is a reference-count bump.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace meadow {

enum class Op : std::uint8_t { var, zero, one, bot, neg, add, mul, div, cond };

std::string_view op_name(Op op);
std::size_t op_arity(Op op);

class Term {
 public:
  struct Node;

  static Term var(std::string name);
  static Term zero();
  static Term one();
  static Term bot();
  static Term neg(Term t);
  static Term add(Term l, Term r);
  static Term mul(Term l, Term r);
  static Term div(Term num, Term den);
  static Term cond(Term x, Term y, Term z);
  /// Generic constructor; arity is checked.
  static Term make(Op op, std::vector<Term> args);

  Op op() const;
  /// Variable name; empty for every other constructor.
  const std::string& name() const;
  std::span<const Term> args() const;
  const Term& arg(std::size_t i) const { return args()[i]; }

  /// Node count of the term as a tree (saturates at UINT64_MAX).
  std::uint64_t size() const;
  std::size_t hash() const;
  /// Identity of the shared node; equal ids imply structurally equal terms.
  const void* id() const { return node_.get(); }

  bool is_var() const { return op() == Op::var; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Op op;
  std::string name;
  std::vector<Term> args;
  std::uint64_t size;
  std::size_t hash;
};

/// Syntax error in concrete term or law syntax.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::set<std::string> expected, const std::string& found);
  std::size_t offset() const { return offset_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::set<std::string> expected_;
};

/// Largest decimal numeral accepted by parse (numerals expand to sums of ones).
inline constexpr std::uint64_t max_numeral = 1'000'000;

/// `+` < `*` < `/` < unary `-`; binary operators associate to the left, so
/// a/b*c is (a/b)*c and 0/2 * 0/3 is (0/2)*(0/3).
Term parse(std::string_view text);
/// The numeral n as a sum of ones: powers of two are balanced sums, and n is
/// the right-nested sum of its binary components from low to high.
Term numeral(std::uint64_t n);
std::string render(const Term& t);

using Substitution = std::map<std::string, Term>;

Term substitute(const Term& t, const Substitution& s);
std::set<std::string> free_vars(const Term& t);
/// Div(p, q) with p and q free of Div, Bot and Cond.
bool is_flat_fracterm(const Term& t);
/// True when t mentions none of the given constructors.
bool is_free_of(const Term& t, std::initializer_list<Op> ops);
/// Subterm at a root-relative path of child indices; nullopt if out of range.
std::optional<Term> subterm_at(const Term& t, std::span<const std::size_t> path);
/// t with the subterm at path replaced; nullopt if the path is out of range.
std::optional<Term> replace_at(const Term& t, std::span<const std::size_t> path, const Term& with);

nlohmann::json to_json(const Term& t);
/// Accepts the AST object form or a string in concrete syntax.
Term term_from_json(const nlohmann::json& j);

std::ostream& operator<<(std::ostream& os, const Term& t);

struct Equation {
  Term lhs;
  Term rhs;
  std::optional<std::string> name;

  friend bool operator==(const Equation& a, const Equation& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

enum class Polarity : std::uint8_t { equal, not_equal };

struct Condition {
  Equation eq;
  Polarity polarity = Polarity::equal;
};

struct ConditionalEquation {
  std::vector<Condition> conditions;
  Equation conclusion;
  std::optional<std::string> name;

  bool is_equation() const { return conditions.empty(); }
  bool has_negated_condition() const;
};

std::string render(const Equation& e);
std::string render(const ConditionalEquation& ce);
std::set<std::string> free_vars(const Equation& e);
std::set<std::string> free_vars(const ConditionalEquation& ce);
Equation substitute(const Equation& e, const Substitution& s);

/// "lhs = rhs"
Equation parse_equation(std::string_view text);
/// "c1 /\ c2 -> lhs = rhs", conditions may use "!="; no conditions is allowed.
ConditionalEquation parse_conditional(std::string_view text);

nlohmann::json to_json(const Equation& e);
Equation equation_from_json(const nlohmann::json& j);

}  // namespace meadow

template <>
struct std::hash<meadow::Term> {
  std::size_t operator()(const meadow::Term& t) const { return t.hash(); }
};
