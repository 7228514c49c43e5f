#pragma once

// A checker for scripted derivations in conditional equational logic over a
// law set, with the common-meadow rules rcm and rcmprime. Scripts are JSON
// lines; see docs/proof-scripts.md for the format.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "meadow/algebra.hpp"
#include "meadow/laws.hpp"
#include "meadow/term.hpp"

namespace meadow {

/// Malformed script text: bad JSON, missing fields, unparsable terms.
class ScriptError : public std::runtime_error {
 public:
  ScriptError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// hyps -> concl, universally closed.
struct Judgement {
  std::vector<Equation> hyps;
  Equation concl{Term::zero(), Term::zero(), std::nullopt};
};

enum class Rule : std::uint8_t { axiom, hyp, refl, sym, trans, cong, subst, cond, rcm, rcmprime };

std::string_view rule_name(Rule r);

struct ProofStep {
  std::string id;
  Rule rule = Rule::refl;
  Equation claim{Term::zero(), Term::zero(), std::nullopt};
  /// Hypotheses in force at this step; the target's when absent.
  std::optional<std::vector<Equation>> hyps;
  std::string law;         // axiom, cond
  Substitution subst;      // axiom, subst, cond
  std::size_t index = 0;   // hyp
  std::vector<std::string> refs;  // premises, in rule order
  std::vector<std::size_t> path;  // cong
};

struct ProofScript {
  std::string name;
  /// Law set the script is stated against, e.g. "e-ftc-cm+avl".
  std::string laws;
  Judgement target;
  std::vector<ProofStep> steps;
};

enum class Reject : std::uint8_t {
  empty_script,
  duplicate_id,
  unknown_step,
  unknown_law,
  malformed_substitution,
  position_out_of_range,
  hypothesis_out_of_range,
  context_mismatch,
  claim_mismatch,
  chain_gap,
  premise_mismatch,
  conditional_law,
  negated_condition,
  substitution_capture,
  rcm_shape,
  target_mismatch,
};

std::string_view reject_name(Reject r);

struct ProofResult {
  bool accepted = true;
  /// Index into steps of the first bad step; the last step for
  /// target_mismatch.
  std::size_t step = 0;
  Reject reason = Reject::empty_script;
  std::string detail;
};

/// Checks every step in order against `laws`, then the final step against
/// the target. A premise may have fewer hypotheses than the step using it.
ProofResult check_proof(const ProofScript& script, const LawSet& laws);
/// Uses the script's own law set.
ProofResult check_proof(const ProofScript& script);

ProofScript parse_script(std::string_view jsonl);
ProofScript load_script(const std::string& path);
std::string to_jsonl(const ProofScript& script);
nlohmann::json to_json(const ProofResult& r, const ProofScript& script);

/// Emits explicit steps for rewrite chains. Each link names the equation that
/// justifies it; the builder finds the rewrite position and instance by
/// matching, then emits instance, sym, cong and trans steps.
class ScriptBuilder {
 public:
  ScriptBuilder(std::string name, std::string laws, std::vector<std::string> hyps, std::string concl);

  /// How a chain link is justified: a law of the set, a hypothesis of the
  /// current context, or an earlier step. `reversed` rewrites right to left.
  struct By {
    enum class Kind : std::uint8_t { law, hyp, step } kind;
    std::string ref;
    std::size_t index = 0;
    bool reversed = false;
  };
  static By law(std::string name) { return {By::Kind::law, std::move(name)}; }
  static By law_rev(std::string name) { return {By::Kind::law, std::move(name), 0, true}; }
  static By hyp(std::size_t i) { return {By::Kind::hyp, {}, i}; }
  static By hyp_rev(std::size_t i) { return {By::Kind::hyp, {}, i, true}; }
  static By step(std::string id) { return {By::Kind::step, std::move(id)}; }
  static By step_rev(std::string id) { return {By::Kind::step, std::move(id), 0, true}; }

  struct Link {
    By by;
    std::string to;
  };

  /// Hypotheses for subsequently emitted steps (the target's by default).
  void context(std::vector<std::string> hyps);
  void target_context();

  /// Proves from = links.back().to; returns the id of the final step.
  std::string chain(const std::string& from, const std::vector<Link>& links);
  std::string cond(const std::string& law, const Substitution& s, std::vector<std::string> premises);
  std::string rcm(const std::string& left, const std::string& right, const std::string& claim);
  std::string rcmprime(const std::string& premise, const std::string& claim);
  std::string sym(const std::string& id);

  const ProofScript& script() const { return script_; }

 private:
  std::string emit(ProofStep step);
  const ProofStep& find(const std::string& id) const;
  std::string rewrite(const Term& from, const Term& to, const By& by);

  ProofScript script_;
  LawSet laws_;
  std::optional<std::vector<Equation>> ctx_;
};

/// The shipped scripts, built from their chains.
std::vector<ProofScript> shipped_scripts();

/// A script with one step altered, and the reason the kernel must give.
struct Mutant {
  std::string name;
  ProofScript script;
  Reject expected;
  std::size_t step;
};
std::vector<Mutant> shipped_mutants();

/// Semantic check of the rcm rule in a finite algebra: if E /\ t = bot ->
/// r = bot and E /\ r = bot -> t = bot hold, E -> 0*t = 0*r must hold.
struct RcmCheck {
  bool premises_hold = false;
  bool conclusion_holds = false;
  /// A valuation satisfying E where 0*t != 0*r (only when premises hold).
  std::optional<Valuation> violation;
  std::uint64_t checked = 0;

  bool sound() const { return !premises_hold || conclusion_holds; }
};

inline constexpr std::size_t max_rcm_vars = 4;

RcmCheck check_rcm_soundness(const TotalAlgebra& a, const Term& t, const Term& r,
                             const std::vector<Equation>& e);

}  // namespace meadow
