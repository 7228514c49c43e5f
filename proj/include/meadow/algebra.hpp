#pragma once

// Total and partial algebras over the ring-with-division signature, the
// enlargement/restriction transforms between them, the concrete model
// constructions, and term evaluation (Tarski, partial, eager).

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "meadow/element.hpp"
#include "meadow/term.hpp"

namespace meadow {

using Rng = std::mt19937_64;

/// Contract violations of algebra constructors and evaluators.
class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TotalAlgebra {
 public:
  virtual ~TotalAlgebra() = default;

  virtual std::string name() const = 0;

  virtual Element zero() const { return Element::of(0); }
  virtual Element one() const { return Element::of(1); }
  Element bot() const { return Element::bot(); }

  virtual Element add(const Element& a, const Element& b) const = 0;
  virtual Element neg(const Element& a) const = 0;
  virtual Element mul(const Element& a, const Element& b) const = 0;
  virtual Element div(const Element& a, const Element& b) const = 0;

  /// "if y = 0 then z else x", bot when y is bot. Zero is level-local: y
  /// counts as zero when y != bot and 0*y = y. The chosen branch is shifted
  /// by 0*y so the result lives at the level of y; in rings 0*y = 0 and this
  /// is the literal conditional.
  Element cond(const Element& x, const Element& y, const Element& z) const;
  bool is_zero_like(const Element& y) const;

  bool eq(const Element& a, const Element& b) const { return a == b; }

  virtual bool is_finite() const = 0;
  /// Full carrier in enumeration order, bot last. Throws for infinite carriers.
  virtual std::vector<Element> elements() const;
  /// One seeded draw from the carrier; finite carriers draw uniformly.
  virtual Element sample(Rng& rng) const;

  virtual std::string render(const Element& e) const;
  virtual nlohmann::json encode(const Element& e) const;
  /// Inverse of encode; also accepts the CLI text form. Rejects non-members.
  virtual Element decode(const nlohmann::json& j) const;
  virtual Element parse_element(std::string_view text) const;
};

class PartialAlgebra {
 public:
  virtual ~PartialAlgebra() = default;

  virtual std::string name() const = 0;

  virtual Element zero() const { return Element::of(0); }
  virtual Element one() const { return Element::of(1); }

  virtual std::optional<Element> add(const Element& a, const Element& b) const = 0;
  virtual std::optional<Element> neg(const Element& a) const = 0;
  virtual std::optional<Element> mul(const Element& a, const Element& b) const = 0;
  virtual std::optional<Element> div(const Element& a, const Element& b) const = 0;

  virtual bool is_finite() const = 0;
  virtual std::vector<Element> elements() const;
  virtual Element sample(Rng& rng) const;

  virtual std::string render(const Element& e) const;
  virtual nlohmann::json encode(const Element& e) const;
  virtual Element decode(const nlohmann::json& j) const;
  virtual Element parse_element(std::string_view text) const;
};

using TotalPtr = std::shared_ptr<const TotalAlgebra>;
using PartialPtr = std::shared_ptr<const PartialAlgebra>;

/// Totalize a partial algebra with a fresh absorptive bot.
TotalPtr enlarge(PartialPtr p);
/// Drop bot; an operation is defined exactly where it does not yield bot.
PartialPtr restrict(TotalPtr t);

/// Z_n with inverse-based common division.
TotalPtr make_zn_inverse_division(std::int64_t n);
/// Z with inverse-based common division (only 1 and -1 are invertible).
TotalPtr make_int_inverse_division();
/// The common meadow of rational numbers.
TotalPtr make_rational_cm();
/// Z with direct division a/b = c iff b != 0 and b*c = a.
PartialPtr make_int_direct_division();
/// Q restricted to the open interval (-b, b).
PartialPtr make_bounded_q(const Rational& b);
/// Two ring levels over one bot: Z[1/3] below, Q above.
TotalPtr make_three_level_lattice();

/// The residues c in Z_n with b*c = a (mod n).
std::vector<std::int64_t> direct_division_solutions(std::int64_t n, std::int64_t a, std::int64_t b);
/// The units of Z_n.
std::vector<std::int64_t> zn_units(std::int64_t n);

/// Finite algebra given by operation tables over element indices.
class TableAlgebra : public TotalAlgebra {
 public:
  struct Tables {
    std::vector<nlohmann::json> labels;
    std::vector<std::vector<std::size_t>> add, mul, div;
    std::vector<std::size_t> neg;
    std::size_t zero = 0, one = 0, bot = 0;
  };

  TableAlgebra(std::string name, Tables tables);
  /// The {"carrier", "add", "mul", "neg", "div", "zero", "one", "bot"} schema.
  static std::shared_ptr<const TableAlgebra> from_json(const nlohmann::json& j, std::string name = "table");
  static std::shared_ptr<const TableAlgebra> load(const std::string& path);
  nlohmann::json to_json() const;

  std::string name() const override { return name_; }
  Element zero() const override { return element(t_.zero); }
  Element one() const override { return element(t_.one); }
  Element add(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  Element mul(const Element& a, const Element& b) const override;
  Element div(const Element& a, const Element& b) const override;
  bool is_finite() const override { return true; }
  std::vector<Element> elements() const override;
  std::string render(const Element& e) const override;
  nlohmann::json encode(const Element& e) const override;
  Element decode(const nlohmann::json& j) const override;
  Element parse_element(std::string_view text) const override;

  std::size_t size() const { return t_.labels.size(); }
  Element element(std::size_t index) const;
  std::size_t index(const Element& e) const;
  const Tables& tables() const { return t_; }

 private:
  std::string name_;
  Tables t_;
};

/// An algebra resolved from a CLI name. Natively partial algebras carry
/// their enlargement as `total`; natively total ones carry their
/// restriction as `partial` (when it is nontrivial).
struct NamedAlgebra {
  std::string name;
  TotalPtr total;
  PartialPtr partial;
  bool native_partial = false;
};

/// zn:<n>, int-inv, rat-cm, int-direct, bounded-q:<b>, lattice3,
/// table:<path> (or a path to a .json table file).
NamedAlgebra make_algebra(std::string_view name);
std::vector<std::string> algebra_names();

using Valuation = std::map<std::string, Element>;

/// Tarski evaluation in a total algebra. Throws AlgebraError on an unbound variable.
Element eval(const Term& t, const TotalAlgebra& a, const Valuation& v);
/// Strict evaluation in a partial algebra; nullopt when undefined. Terms with
/// bot or cond are rejected.
std::optional<Element> eval_partial(const Term& t, const PartialAlgebra& p, const Valuation& v);
/// Eager equality: true when either side is undefined, else value equality.
bool eager_eq(const Term& t, const Term& r, const PartialAlgebra& p, const Valuation& v);

std::string render(const TotalAlgebra& a, const Valuation& v);

}  // namespace meadow
