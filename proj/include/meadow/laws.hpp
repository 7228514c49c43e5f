#pragma once

// Named laws, the shipped law sets, and the model checker.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "meadow/algebra.hpp"
#include "meadow/term.hpp"

namespace meadow {

/// Unknown law or suite, malformed law text, or a mode the carrier cannot support.
class LawError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Law {
  std::string name;
  ConditionalEquation body;
  std::optional<std::string> note;
};

using LawSet = std::vector<Law>;

/// Parses `name : body` lines; `#` starts a comment, `@include <set>` pulls
/// in a shipped set. Names must be unique.
LawSet parse_laws(std::string_view text);
/// A shipped set ("e-ftc-cm"), a single law ("eq13"), or a '+'-joined mix
/// ("e-ftc-cm+avl"). Duplicates are dropped, first occurrence wins.
LawSet law_set(std::string_view names);
const Law& find_law(std::string_view name);
std::vector<std::string> law_set_names();
/// All shipped laws in shipped order.
const LawSet& all_laws();

enum class Semantics : std::uint8_t { tarski, eager };

struct Mode {
  enum class Kind : std::uint8_t { exhaustive, fuzz, witness };
  Kind kind = Kind::exhaustive;
  std::uint64_t seed = default_seed;
  std::uint64_t trials = 10000;
  /// Valuations tried in witness mode, in order.
  std::vector<Valuation> witnesses;

  static constexpr std::uint64_t default_seed = 0xC0FFEE;

  static Mode exhaustive() { return {}; }
  static Mode fuzz(std::uint64_t trials, std::uint64_t seed = default_seed) {
    return {Kind::fuzz, seed, trials, {}};
  }
  static Mode witness(std::vector<Valuation> vals) { return {Kind::witness, default_seed, 0, std::move(vals)}; }
  /// "exhaustive" or "fuzz:<trials>".
  static Mode parse(std::string_view text, std::uint64_t seed = default_seed);
};

/// A violating valuation and the two conclusion values. Under eager
/// semantics bot stands for "undefined".
struct Counterexample {
  Valuation valuation;
  Element lhs;
  Element rhs;
};

struct Verdict {
  std::string law;
  bool holds = true;
  Mode::Kind mode = Mode::Kind::exhaustive;
  Semantics semantics = Semantics::tarski;
  std::uint64_t seed = 0;
  /// Requested trials (fuzz mode).
  std::uint64_t trials = 0;
  /// Valuations examined.
  std::uint64_t checked = 0;
  std::optional<Counterexample> counterexample;
};

/// Maximum number of distinct variables for exhaustive checks.
inline constexpr std::size_t max_exhaustive_vars = 6;

/// Checks a law in a total algebra. Under eager semantics the algebra is
/// read as an enlargement: valuations avoid bot and bot means undefined.
Verdict check_law(const TotalAlgebra& a, const Law& law, const Mode& mode,
                  Semantics semantics = Semantics::tarski);
Verdict check_equation(const TotalAlgebra& a, const Equation& e, const Mode& mode);
Verdict check_conditional(const TotalAlgebra& a, const ConditionalEquation& ce, const Mode& mode);
/// Eager checking in a partial algebra (through its enlargement).
Verdict check_eager(const PartialAlgebra& p, const Law& law, const Mode& mode);
std::vector<Verdict> check_suite(const TotalAlgebra& a, const LawSet& set, const Mode& mode,
                                 Semantics semantics = Semantics::tarski);
/// Exhaustive check of one law in Z_n for every n in [lo, hi], 2 <= lo <= hi <= 64.
std::vector<std::pair<std::int64_t, Verdict>> scan_zn(std::int64_t lo, std::int64_t hi, const Law& law);

/// True when the counterexample, re-evaluated from scratch, violates the law.
bool confirms(const TotalAlgebra& a, const Law& law, const Counterexample& cx, Semantics semantics);

std::string mode_name(Mode::Kind k);
nlohmann::json to_json(const Verdict& v, const TotalAlgebra& a);

}  // namespace meadow
