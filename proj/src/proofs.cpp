// The shipped derivations. Each mirrors a printed argument with the implicit
// axiom uses spelled out as rewrite chains.

#include <algorithm>
#include <functional>
#include <map>

#include "meadow/proofkernel.hpp"

namespace meadow {

namespace {

using B = ScriptBuilder;

/// Equational lemmas of E_ftc_cm, proved on demand in the empty context.
class Lemmas {
 public:
  explicit Lemmas(B& b) : b_(b) {}

  std::string operator()(const std::string& name) {
    if (auto it = done_.find(name); it != done_.end()) return it->second;
    // Dependencies first, so the lemma's own chain stays contiguous.
    for (const auto& d : deps(name)) (*this)(d);
    b_.context({});
    std::string id = prove(name);
    b_.target_context();
    done_.emplace(name, id);
    return id;
  }

 private:
  static std::vector<std::string> deps(const std::string& name) {
    static const std::map<std::string, std::vector<std::string>> d = {
        {"add_zero_mul", {"mul_one"}},
        {"zero_zero", {"zero_add", "add_zero_mul"}},
        {"zero_zero_mul", {"zero_zero"}},
        {"zero_mul_div_zero", {"mul_one", "zero_zero"}},
        {"mul_bot", {"zero_bot", "mul_one", "zero_mul_div_zero"}},
        {"bot_mul", {"mul_bot"}},
        {"div_zero", {"mul_one", "mul_bot"}},
        {"zero_div", {"mul_one"}},
        {"zero_div_sq", {"mul_one", "zero_div"}},
        {"inv_sq", {"mul_one", "one_plus_div", "zero_div_sq", "add_zero_mul"}},
    };
    auto it = d.find(name);
    return it == d.end() ? std::vector<std::string>{} : it->second;
  }

  B::By use(const std::string& n) { return B::step(done_.at(n)); }
  B::By use_rev(const std::string& n) { return B::step_rev(done_.at(n)); }

  std::string prove(const std::string& name) {
    if (name == "mul_one")  // x*1 = x
      return b_.chain("x*1", {{B::law("eq6"), "1*x"}, {B::law("eq7"), "x"}});
    if (name == "zero_add")  // 0 + x = x
      return b_.chain("0 + x", {{B::law("eq2"), "x + 0"}, {B::law("eq3"), "x"}});
    if (name == "add_zero_mul")  // x + 0*x = x
      return b_.chain("x + 0*x", {{B::law_rev("eq7"), "1*x + 0*x"},
                                  {B::law("eq6"), "x*1 + 0*x"},
                                  {B::law("eq6"), "x*1 + x*0"},
                                  {B::law_rev("eq8"), "x*(1 + 0)"},
                                  {B::law("eq3"), "x*1"},
                                  {use("mul_one"), "x"}});
    if (name == "zero_zero")  // 0*0 = 0
      return b_.chain("0*0", {{use_rev("zero_add"), "0 + 0*0"}, {use("add_zero_mul"), "0"}});
    if (name == "zero_zero_mul")  // 0*(0*x) = 0*x
      return b_.chain("0*(0*x)", {{B::law("eq5"), "0*0*x"}, {use("zero_zero"), "0*x"}});
    if (name == "zero_bot")  // 0*bot = bot
      return b_.chain("0*bot", {{B::law_rev("eq4"), "bot + (-bot)"},
                                {B::law("eq2"), "(-bot) + bot"},
                                {B::law("eq11"), "bot"}});
    if (name == "zero_mul_div_zero")  // (0*x)/0 = bot
      return b_.chain("(0*x)/0", {{B::law_rev("eq3"), "(0*x + 0)/0"},
                                  {use_rev("mul_one"), "(0*x + 0*1)/0"},
                                  {B::law("eq6"), "(x*0 + 0*1)/0"},
                                  {use_rev("zero_zero"), "(x*0 + 0*1)/(0*0)"},
                                  {B::law_rev("eq14"), "x/0 + 1/0"},
                                  {B::law_rev("eq16"), "x/0 + bot"},
                                  {B::law("eq11"), "bot"}});
    if (name == "mul_bot")  // x*bot = bot
      return b_.chain("x*bot", {{use_rev("zero_bot"), "x*(0*bot)"},
                                {B::law("eq5"), "x*0*bot"},
                                {B::law("eq6"), "0*x*bot"},
                                {B::law("eq16"), "0*x*(1/0)"},
                                {B::law("eq12"), "(0*x)/1*(1/0)"},
                                {B::law("eq13"), "(0*x*1)/(1*0)"},
                                {use("mul_one"), "(0*x)/(1*0)"},
                                {B::law("eq7"), "(0*x)/0"},
                                {use("zero_mul_div_zero"), "bot"}});
    if (name == "bot_mul")  // bot*x = bot
      return b_.chain("bot*x", {{B::law("eq6"), "x*bot"}, {use("mul_bot"), "bot"}});
    if (name == "div_zero")  // x/0 = bot
      return b_.chain("x/0", {{use_rev("mul_one"), "(x*1)/0"},
                              {B::law_rev("eq7"), "(x*1)/(1*0)"},
                              {B::law_rev("eq13"), "x/1*(1/0)"},
                              {B::law_rev("eq12"), "x*(1/0)"},
                              {B::law_rev("eq16"), "x*bot"},
                              {use("mul_bot"), "bot"}});
    if (name == "one_plus_div")  // 1 + 0/y = y/y
      return b_.chain("1 + 0/y", {{B::law("eq12"), "1/1 + 0/y"},
                                  {B::law("eq14"), "(1*y + 1*0)/(1*y)"},
                                  {B::law("eq7"), "(y + 1*0)/(1*y)"},
                                  {B::law("eq7"), "(y + 0)/(1*y)"},
                                  {B::law("eq3"), "y/(1*y)"},
                                  {B::law("eq7"), "y/y"}});
    if (name == "zero_div")  // 0*(1/x) = 0/x
      return b_.chain("0*(1/x)", {{B::law("eq12"), "0/1*(1/x)"},
                                  {B::law("eq13"), "(0*1)/(1*x)"},
                                  {use("mul_one"), "0/(1*x)"},
                                  {B::law("eq7"), "0/x"}});
    if (name == "zero_div_sq")  // 0/(x*x) = 0*(1/x)
      return b_.chain("0/(x*x)", {{use_rev("mul_one"), "(0*1)/(x*x)"},
                                  {B::law_rev("eq13"), "0/x*(1/x)"},
                                  {use_rev("zero_div"), "0*(1/x)*(1/x)"},
                                  {B::law_rev("eq5"), "0*(1/x*(1/x))"},
                                  {B::law("eq10"), "0*(1/x)"}});
    if (name == "inv_sq")  // x/(x*x) = 1/x
      return b_.chain("x/(x*x)", {{use_rev("mul_one"), "(x*1)/(x*x)"},
                                  {B::law_rev("eq13"), "x/x*(1/x)"},
                                  {use_rev("one_plus_div"), "(1 + 0/x)*(1/x)"},
                                  {B::law("eq6"), "1/x*(1 + 0/x)"},
                                  {B::law("eq8"), "1/x*1 + 1/x*(0/x)"},
                                  {use("mul_one"), "1/x + 1/x*(0/x)"},
                                  {B::law("eq6"), "1/x + 0/x*(1/x)"},
                                  {B::law("eq13"), "1/x + (0*1)/(x*x)"},
                                  {use("mul_one"), "1/x + 0/(x*x)"},
                                  {use("zero_div_sq"), "1/x + 0*(1/x)"},
                                  {use("add_zero_mul"), "1/x"}});
    throw std::logic_error("unknown lemma " + name);
  }

  B& b_;
  std::map<std::string, std::string> done_;
};

/// From 0*x = 0*x + 1 (step k): 0*x = 1 + 0*x = (1 + 0*x)/1 = 1/(1 + 0*x) =
/// 1/(0*x) = 1/0 * 1/x = bot * 1/x = bot.
std::string zero_mul_bot(B& b, Lemmas& lem, const std::string& k) {
  std::string bot_mul = lem("bot_mul");
  return b.chain("0*x", {{B::step(k), "0*x + 1"},
                         {B::law("eq2"), "1 + 0*x"},
                         {B::law("eq12"), "(1 + 0*x)/1"},
                         {B::law_rev("eq15"), "1/(1 + 0*x)"},
                         {B::law("eq2"), "1/(0*x + 1)"},
                         {B::step_rev(k), "1/(0*x)"},
                         {B::law_rev("eq7"), "(1*1)/(0*x)"},
                         {B::law_rev("eq13"), "1/0*(1/x)"},
                         {B::law_rev("eq16"), "bot*(1/x)"},
                         {B::step(bot_mul), "bot"}});
}

/// x = x + 0*x = x + bot = bot, given 0*x = bot (step z).
std::string absorb(B& b, Lemmas& lem, const std::string& z) {
  std::string azm = lem("add_zero_mul");
  return b.chain("x", {{B::step_rev(azm), "x + 0*x"}, {B::step(z), "x + bot"}, {B::law("eq11"), "bot"}});
}

ProofScript zero_one_bot() {
  B b("ZERO_ONE_BOT", "e-ftc-cm", {"0 = 1"}, "0 = bot");
  b.chain("0", {{B::hyp(0), "1"}, {B::law("eq12"), "1/1"}, {B::hyp_rev(0), "1/0"}, {B::law_rev("eq16"), "bot"}});
  return b.script();
}

ProofScript succ_fix() {
  B b("SUCC_FIX", "e-ftc-cm", {"x = x + 1"}, "x = bot");
  Lemmas lem(b);
  lem("bot_mul");
  lem("add_zero_mul");
  // x - x = (x + 1) - x = (x - x) + 1
  std::string k = b.chain("0*x", {{B::law_rev("eq4"), "x + (-x)"},
                                  {B::hyp(0), "x + 1 + (-x)"},
                                  {B::law("eq1"), "x + (1 + (-x))"},
                                  {B::law("eq2"), "x + ((-x) + 1)"},
                                  {B::law_rev("eq1"), "x + (-x) + 1"},
                                  {B::law("eq4"), "0*x + 1"}});
  absorb(b, lem, zero_mul_bot(b, lem, k));
  return b.script();
}

ProofScript zero_mul_inv() {
  B b("ZERO_MUL_INV", "e-ftc-cm", {"0*x = 1/y"}, "x = bot");
  Lemmas lem(b);
  for (const char* n : {"zero_zero_mul", "mul_one", "one_plus_div", "zero_add", "bot_mul", "add_zero_mul"}) lem(n);
  auto use = [&](const char* n) { return B::step(lem(n)); };
  auto use_rev = [&](const char* n) { return B::step_rev(lem(n)); };
  // 1 + 0*x = 1 + 0/y = y/y = y * 1/y = y*(0*x)
  std::string c1 = b.chain("1 + 0*x", {{use_rev("zero_zero_mul"), "1 + 0*(0*x)"},
                                       {B::hyp(0), "1 + 0*(1/y)"},
                                       {B::law("eq12"), "1 + 0/1*(1/y)"},
                                       {B::law("eq13"), "1 + (0*1)/(1*y)"},
                                       {use("mul_one"), "1 + 0/(1*y)"},
                                       {B::law("eq7"), "1 + 0/y"},
                                       {use("one_plus_div"), "y/y"},
                                       {use_rev("mul_one"), "(y*1)/y"},
                                       {B::law_rev("eq7"), "(y*1)/(1*y)"},
                                       {B::law_rev("eq13"), "y/1*(1/y)"},
                                       {B::law_rev("eq12"), "y*(1/y)"},
                                       {B::hyp_rev(0), "y*(0*x)"}});
  // y*(0*x) is zero-like, so it equals 0*(1 + 0*x) = 0*x.
  std::string c2 = b.chain("y*(0*x)", {{use_rev("zero_zero_mul"), "y*(0*(0*x))"},
                                       {B::law("eq5"), "y*0*(0*x)"},
                                       {B::law("eq6"), "0*y*(0*x)"},
                                       {B::law_rev("eq5"), "0*(y*(0*x))"},
                                       {B::step_rev(c1), "0*(1 + 0*x)"},
                                       {B::law("eq8"), "0*1 + 0*(0*x)"},
                                       {use("mul_one"), "0 + 0*(0*x)"},
                                       {use("zero_add"), "0*(0*x)"},
                                       {use("zero_zero_mul"), "0*x"}});
  std::string k = b.chain("0*x", {{B::step_rev(c2), "y*(0*x)"}, {B::step_rev(c1), "1 + 0*x"}, {B::law("eq2"), "0*x + 1"}});
  absorb(b, lem, zero_mul_bot(b, lem, k));
  return b.script();
}

ProofScript avl_squares() {
  B b("AVL_SQUARES", "e-ftc-cm+avl", {"x*x = 0"}, "x = 0");
  Lemmas lem(b);
  std::string inv_sq = lem("inv_sq"), div_zero = lem("div_zero"), zz = lem("zero_zero");
  // 1/x = x/(x*x) = x/0 = bot, so AVL gives 0*x = x.
  std::string p1 = b.chain("1/x", {{B::step_rev(inv_sq), "x/(x*x)"}, {B::hyp(0), "x/0"}, {B::step(div_zero), "bot"}});
  std::string p2 = b.cond("avl", {}, {p1});
  std::string p3 = b.chain("0*x", {{B::law_rev("eq10"), "0*(x*x)"}, {B::hyp(0), "0*0"}, {B::step(zz), "0"}});
  b.chain("x", {{B::step_rev(p2), "0*x"}, {B::step(p3), "0"}});
  return b.script();
}

/// The two bot-propagation premises for t = 1/x, r = 1/(x*x).
std::pair<std::string, std::string> inverse_premises(B& b, Lemmas& lem) {
  std::string bot_mul = lem("bot_mul"), mul_bot = lem("mul_bot"), inv_sq = lem("inv_sq"), mul_one = lem("mul_one");
  b.context({"1/x = bot"});
  std::string left = b.chain("1/(x*x)", {{B::law_rev("eq7"), "(1*1)/(x*x)"},
                                         {B::law_rev("eq13"), "1/x*(1/x)"},
                                         {B::hyp(0), "bot*(1/x)"},
                                         {B::step(bot_mul), "bot"}});
  b.context({"1/(x*x) = bot"});
  std::string right = b.chain("1/x", {{B::step_rev(inv_sq), "x/(x*x)"},
                                      {B::step_rev(mul_one), "(x*1)/(x*x)"},
                                      {B::law_rev("eq7"), "(x*1)/(1*(x*x))"},
                                      {B::law_rev("eq13"), "x/1*(1/(x*x))"},
                                      {B::law_rev("eq12"), "x*(1/(x*x))"},
                                      {B::hyp(0), "x*bot"},
                                      {B::step(mul_bot), "bot"}});
  b.target_context();
  return {left, right};
}

ProofScript rcm_inverse() {
  B b("RCM_INVERSE", "e-ftc-cm", {}, "0*(1/x) = 0*(1/(x*x))");
  Lemmas lem(b);
  auto [l, r] = inverse_premises(b, lem);
  b.rcm(l, r, "0*(1/x) = 0*(1/(x*x))");
  return b.script();
}

/// The same conclusion through rcmprime twice: rcm is derivable from rcmprime.
ProofScript rcm_via_prime() {
  B b("RCM_VIA_PRIME", "e-ftc-cm", {}, "0*(1/x) = 0*(1/(x*x))");
  Lemmas lem(b);
  auto [l, r] = inverse_premises(b, lem);
  std::string a = b.rcmprime(l, "0*(1/(x*x)) = 0*(1/x + 1/(x*x))");
  std::string c = b.rcmprime(r, "0*(1/x) = 0*(1/(x*x) + 1/x)");
  b.chain("0*(1/x)", {{B::step(c), "0*(1/(x*x) + 1/x)"},
                      {B::law("eq2"), "0*(1/x + 1/(x*x))"},
                      {B::step_rev(a), "0*(1/(x*x))"}});
  return b.script();
}

std::size_t first_index(const ProofScript& s, const std::function<bool(const ProofStep&)>& p) {
  auto it = std::find_if(s.steps.begin(), s.steps.end(), p);
  if (it == s.steps.end()) throw std::logic_error("mutant site not found in " + s.name);
  return static_cast<std::size_t>(it - s.steps.begin());
}

}  // namespace

std::vector<ProofScript> shipped_scripts() {
  return {zero_one_bot(), succ_fix(), zero_mul_inv(), avl_squares(), rcm_inverse(), rcm_via_prime()};
}

std::vector<Mutant> shipped_mutants() {
  std::vector<Mutant> out;
  auto add = [&](std::string name, ProofScript s, Reject why, std::size_t at) {
    s.name += "/" + name;
    out.push_back(Mutant{std::move(name), std::move(s), why, at});
  };
  auto by_rule = [](Rule r) { return [r](const ProofStep& st) { return st.rule == r; }; };

  {  // The chain 0 = 1 = 1/1 = 1/0 = bot with its first trans step deleted.
    ProofScript s = zero_one_bot();
    std::size_t i = first_index(s, by_rule(Rule::trans));
    std::string gone = s.steps[i].id;
    s.steps.erase(s.steps.begin() + static_cast<std::ptrdiff_t>(i));
    std::size_t at = first_index(s, [&](const ProofStep& st) {
      return std::find(st.refs.begin(), st.refs.end(), gone) != st.refs.end();
    });
    add("missing_trans", s, Reject::unknown_step, at);
  }
  {
    ProofScript s = zero_one_bot();
    std::size_t i = first_index(s, by_rule(Rule::axiom));
    s.steps[i].law = "eq99";
    add("unknown_law", s, Reject::unknown_law, i);
  }
  {
    ProofScript s = zero_one_bot();
    std::size_t i = first_index(s, by_rule(Rule::axiom));
    s.steps[i].law = "eq3";
    add("wrong_axiom", s, Reject::claim_mismatch, i);
  }
  {
    ProofScript s = zero_one_bot();
    std::size_t i = first_index(s, by_rule(Rule::hyp));
    s.steps[i].index = 3;
    add("hyp_index", s, Reject::hypothesis_out_of_range, i);
  }
  {
    ProofScript s = succ_fix();
    std::size_t i = first_index(s, by_rule(Rule::cong));
    s.steps[i].path = {0, 2};
    add("bad_path", s, Reject::position_out_of_range, i);
  }
  {
    ProofScript s = succ_fix();
    std::size_t i = first_index(s, by_rule(Rule::subst));
    s.steps[i].subst.emplace("w", Term::one());
    add("stray_binding", s, Reject::malformed_substitution, i);
  }
  {
    ProofScript s = succ_fix();
    std::size_t i = first_index(s, by_rule(Rule::trans));
    std::swap(s.steps[i].refs[0], s.steps[i].refs[1]);
    add("swapped_trans", s, Reject::chain_gap, i);
  }
  {  // Instantiating x in a step that depends on the hypothesis about x.
    ProofScript s = zero_mul_inv();
    std::size_t h = first_index(s, by_rule(Rule::hyp));
    std::size_t i = h + 1;
    while (!(s.steps.at(i).rule == Rule::subst && s.steps[i].subst.count("x"))) ++i;
    s.steps[i].refs = {s.steps[h].id};
    add("capture", s, Reject::substitution_capture, i);
  }
  {
    ProofScript s = avl_squares();
    std::size_t i = first_index(s, by_rule(Rule::cond));
    s.steps[i].refs = {s.steps[first_index(s, by_rule(Rule::hyp))].id};
    add("wrong_premise", s, Reject::premise_mismatch, i);
  }
  {
    ProofScript s = avl_squares();
    std::size_t i = first_index(s, by_rule(Rule::cond));
    s.steps[i].rule = Rule::axiom;
    s.steps[i].refs.clear();
    add("conditional_as_axiom", s, Reject::conditional_law, i);
  }
  {
    ProofScript s = rcm_inverse();
    std::size_t i = first_index(s, by_rule(Rule::rcm));
    std::swap(s.steps[i].refs[0], s.steps[i].refs[1]);
    add("rcm_swapped", s, Reject::rcm_shape, i);
  }
  {  // A step of the first rcm premise loses its hypothesis.
    ProofScript s = rcm_inverse();
    std::size_t i = first_index(s, [](const ProofStep& st) {
      return st.rule == Rule::trans && st.hyps && st.hyps->size() == 1;
    });
    s.steps[i].hyps = std::vector<Equation>{};
    add("dropped_context", s, Reject::context_mismatch, i);
  }
  {
    ProofScript s = zero_one_bot();
    s.steps.pop_back();
    add("truncated", s, Reject::target_mismatch, s.steps.size() - 1);
  }
  {
    ProofScript s = zero_one_bot();
    s.steps[1].id = s.steps[0].id;
    add("duplicate_id", s, Reject::duplicate_id, 1);
  }
  return out;
}

}  // namespace meadow
