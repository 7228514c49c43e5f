#pragma once

// Homomorphisms, congruences and quotients of finite generalised common
// meadows, plus the ring-level probes (zero divisors, bot-splitting).

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "meadow/algebra.hpp"

namespace meadow {

class HomError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HomMap {
  TotalPtr source;
  TotalPtr target;
  std::function<Element(const Element&)> fn;

  Element operator()(const Element& e) const { return fn(e); }
};

/// A place where h(f(args)) != f'(h(args)); op is one of zero, one, bot,
/// add, neg, mul, inv (1/x), div.
struct HomFailure {
  std::string op;
  std::vector<Element> args;
  Element mapped;    // h(f(args))
  Element computed;  // f'(h(args))
};

/// Exhaustive homomorphism check over a finite source. With
/// check_constants false, 0 and 1 may move (maps onto a higher level).
std::optional<HomFailure> verify_hom(const HomMap& h, bool check_constants = true);

/// Elements a with 0*a = 0.
std::vector<Element> zero_part(const TotalAlgebra& a);
std::vector<Element> zero_part(const TotalAlgebra& a, const std::vector<Element>& probe);

/// Onto the enlargement of the ring M_0 with inverse-based division; elements
/// outside M_0 go to bot. Throws HomError if the map is not a homomorphism.
HomMap map_rho(TotalPtr a);

/// b -> b + 0*a. Rejects a = bot; the homomorphism property is checked
/// exhaustively on finite carriers and on `samples` seeded pairs otherwise.
HomMap map_phi(TotalPtr a, const Element& at, std::uint64_t samples = 1000);

enum class QuotientMode : std::uint8_t {
  by_level,  // p ~ q iff p + 0*a = q + 0*a
  prime,     // b ~ bot iff b + 0*a = b; otherwise only b ~ b
};

struct Quotient {
  std::shared_ptr<const TableAlgebra> algebra;
  HomMap map;
  std::vector<std::vector<Element>> classes;  // in order of first member
};

/// Quotient of a finite algebra; the congruence property and E_wcr_bot are
/// verified on the result.
Quotient quotient_by(TotalPtr a, const Element& at, QuotientMode mode = QuotientMode::by_level);

/// Some (a, b), both non-bot, with a + b = bot.
std::optional<std::pair<Element, Element>> detect_bot_splitting(const TotalAlgebra& a);
std::optional<std::pair<Element, Element>> detect_bot_splitting(const TotalAlgebra& a,
                                                                const std::vector<Element>& probe);

/// Ordered pairs (a, b) of nonzero residues with a*b = 0 mod n.
std::vector<std::pair<std::int64_t, std::int64_t>> zero_divisors(std::int64_t n);

/// Is x -> x mod m (bot -> bot) a homomorphism Z_n -> Z_m with division?
/// Requires m | n. Checks constants, add, neg, mul, inverses, then div.
std::optional<HomFailure> extend_ring_hom(std::int64_t n, std::int64_t m);

struct Saturation {
  std::shared_ptr<const TableAlgebra> algebra;
  HomMap map;
  /// Elements (of the intermediate algebras, rendered) quotiented at each step.
  std::vector<std::string> steps;
};

/// Collapses a finite GCM satisfying E_ftc_cm + AVL onto a common meadow by
/// repeated level quotients; with `avoid`, its level is chosen first so its
/// image stays non-bot.
Saturation saturate_to_cm(TotalPtr a, std::optional<Element> avoid = std::nullopt);

/// {"source": name, "map": [[from, to], ...]} over a finite source.
nlohmann::json to_json(const HomMap& h);
nlohmann::json to_json(const HomFailure& f, const TotalAlgebra& source, const TotalAlgebra& target);

}  // namespace meadow
