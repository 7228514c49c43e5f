#include "meadow/laws.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>

#include "laws_data.hpp"
#include "meadow/finite.hpp"

namespace meadow {

namespace {

// Shipped sets in presentation order; any other embedded file follows.
constexpr std::string_view set_order[] = {"e-wcr-bot", "e-ftc-cm", "e-cond-op", "nvl", "avl", "phi235", "derived"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool valid_law_name(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
  });
}

std::optional<std::string_view> shipped_text(std::string_view set) {
  for (const auto& [name, text] : detail::shipped_law_files())
    if (name == set) return text;
  return std::nullopt;
}

void append_unique(LawSet& out, const Law& law) {
  for (const Law& l : out)
    if (l.name == law.name) return;
  out.push_back(law);
}

LawSet parse_laws_depth(std::string_view text, int depth) {
  if (depth > 8) throw LawError("@include nesting too deep");
  LawSet out;
  std::set<std::string> names;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("@include", 0) == 0) {
      std::string_view set = trim(line.substr(8));
      auto inner = shipped_text(set);
      if (!inner) throw LawError("line " + std::to_string(line_no) + ": unknown law set '" + std::string(set) + "'");
      for (Law& l : parse_laws_depth(*inner, depth + 1)) {
        if (!names.insert(l.name).second) throw LawError("duplicate law name '" + l.name + "'");
        out.push_back(std::move(l));
      }
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw LawError("line " + std::to_string(line_no) + ": expected 'name : law'");
    std::string name(trim(line.substr(0, colon)));
    if (!valid_law_name(name)) throw LawError("line " + std::to_string(line_no) + ": bad law name '" + name + "'");
    if (!names.insert(name).second) throw LawError("duplicate law name '" + name + "'");
    ConditionalEquation body = [&] {
      try {
        return parse_conditional(line.substr(colon + 1));
      } catch (const ParseError& e) {
        throw LawError("line " + std::to_string(line_no) + " (" + name + "): " + e.what());
      }
    }();
    body.name = name;
    body.conclusion.name = name;
    out.push_back(Law{name, std::move(body), std::nullopt});
  }
  return out;
}

struct Shipped {
  std::vector<std::pair<std::string, LawSet>> sets;
  LawSet all;
};

const Shipped& shipped() {
  static const Shipped s = [] {
    Shipped r;
    std::vector<std::string_view> order(std::begin(set_order), std::end(set_order));
    for (const auto& [name, text] : detail::shipped_law_files())
      if (std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
    for (std::string_view name : order) {
      auto text = shipped_text(name);
      if (!text) continue;
      LawSet set = parse_laws_depth(*text, 0);
      for (const Law& l : set) append_unique(r.all, l);
      r.sets.emplace_back(std::string(name), std::move(set));
    }
    return r;
  }();
  return s;
}

}  // namespace

LawSet parse_laws(std::string_view text) { return parse_laws_depth(text, 0); }

const LawSet& all_laws() { return shipped().all; }

std::vector<std::string> law_set_names() {
  std::vector<std::string> out;
  for (const auto& [name, set] : shipped().sets) out.push_back(name);
  return out;
}

const Law& find_law(std::string_view name) {
  for (const Law& l : all_laws())
    if (l.name == name) return l;
  throw LawError("unknown law '" + std::string(name) + "'");
}

LawSet law_set(std::string_view names) {
  LawSet out;
  if (trim(names).empty()) throw LawError("empty law set");
  while (true) {
    auto plus = names.find('+');
    std::string_view part = trim(names.substr(0, plus));
    bool found = false;
    for (const auto& [name, set] : shipped().sets) {
      if (name == part) {
        for (const Law& l : set) append_unique(out, l);
        found = true;
        break;
      }
    }
    if (!found) {
      try {
        append_unique(out, find_law(part));
      } catch (const LawError&) {
        throw LawError("unknown law or law set '" + std::string(part) + "'");
      }
    }
    if (plus == std::string_view::npos) break;
    names = names.substr(plus + 1);
  }
  return out;
}

Mode Mode::parse(std::string_view text, std::uint64_t seed) {
  if (text == "exhaustive") return Mode::exhaustive();
  if (text.rfind("fuzz:", 0) == 0) {
    std::string digits(text.substr(5));
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        digits.size() > 12)
      throw LawError("bad trial count in mode '" + std::string(text) + "'");
    std::uint64_t trials = std::stoull(digits);
    if (trials == 0) throw LawError("fuzz mode needs at least one trial");
    return Mode::fuzz(trials, seed);
  }
  if (text == "fuzz") return Mode::fuzz(10000, seed);
  throw LawError("unknown mode '" + std::string(text) + "' (expected exhaustive or fuzz:<trials>)");
}

std::string mode_name(Mode::Kind k) {
  switch (k) {
    case Mode::Kind::exhaustive: return "exhaustive";
    case Mode::Kind::fuzz: return "fuzz";
    case Mode::Kind::witness: return "witness";
  }
  return "?";
}

// ---------------------------------------------------------------- checking

namespace {

// Decides one valuation. `pair(i)` yields the two sides of condition i, or
// of the conclusion for i == n; conditions are evaluated lazily.
template <class V, class PairFn, class IsBot>
bool violated(const ConditionalEquation& ce, Semantics sem, PairFn&& pair, IsBot&& is_bot, V* out_l, V* out_r) {
  const bool eager = sem == Semantics::eager;
  auto equal = [&](const V& l, const V& r) { return (eager && (is_bot(l) || is_bot(r))) || l == r; };
  for (std::size_t i = 0; i < ce.conditions.size(); ++i) {
    auto [l, r] = pair(i);
    bool met = ce.conditions[i].polarity == Polarity::equal
                   ? equal(l, r)
                   : (!(l == r) && !(eager && (is_bot(l) || is_bot(r))));
    if (!met) return false;
  }
  auto [l, r] = pair(ce.conditions.size());
  if (equal(l, r)) return false;
  *out_l = l;
  *out_r = r;
  return true;
}

std::vector<std::string> sorted_vars(const ConditionalEquation& ce) {
  auto vs = free_vars(ce);
  return {vs.begin(), vs.end()};
}

const Equation& side_eq(const ConditionalEquation& ce, std::size_t i) {
  return i < ce.conditions.size() ? ce.conditions[i].eq : ce.conclusion;
}

std::optional<Counterexample> violation_generic(const TotalAlgebra& a, const ConditionalEquation& ce,
                                                const Valuation& v, Semantics sem) {
  Element l, r;
  auto pair = [&](std::size_t i) {
    const Equation& e = side_eq(ce, i);
    return std::pair<Element, Element>(eval(e.lhs, a, v), eval(e.rhs, a, v));
  };
  if (!violated(ce, sem, pair, [](const Element& e) { return e.is_bot(); }, &l, &r)) return std::nullopt;
  return Counterexample{v, l, r};
}

struct CompiledLaw {
  std::vector<std::pair<CompiledTerm, CompiledTerm>> sides;  // conditions, then conclusion

  CompiledLaw(const ConditionalEquation& ce, const std::vector<std::string>& vars) {
    for (std::size_t i = 0; i <= ce.conditions.size(); ++i) {
      const Equation& e = side_eq(ce, i);
      sides.emplace_back(CompiledTerm(e.lhs, vars), CompiledTerm(e.rhs, vars));
    }
  }
};

class Checker {
 public:
  Checker(const TotalAlgebra& a, const FiniteTables* ft) : a_(a), ft_(ft) {}

  Verdict run(const std::string& name, const ConditionalEquation& ce, const Mode& mode, Semantics sem) const {
    Verdict v;
    v.law = name;
    v.mode = mode.kind;
    v.semantics = sem;
    v.seed = mode.seed;
    v.trials = mode.kind == Mode::Kind::fuzz ? mode.trials : 0;
    const auto vars = sorted_vars(ce);
    switch (mode.kind) {
      case Mode::Kind::exhaustive: exhaustive(v, ce, vars, sem); break;
      case Mode::Kind::fuzz: fuzz(v, ce, vars, mode, sem); break;
      case Mode::Kind::witness: witness(v, ce, vars, mode, sem); break;
    }
    v.holds = !v.counterexample.has_value();
    return v;
  }

 private:
  using Index = FiniteTables::Index;

  std::vector<Index> carrier(Semantics sem) const {
    std::vector<Index> out;
    for (std::size_t i = 0; i < ft_->size(); ++i)
      if (sem == Semantics::tarski || i != ft_->bot()) out.push_back(static_cast<Index>(i));
    return out;
  }

  // Runs the compiled law at an index valuation; fills cx on violation.
  bool test(const CompiledLaw& law, const ConditionalEquation& ce, const std::vector<std::string>& vars,
            const std::vector<Index>& val, Semantics sem, std::vector<Index>& scratch,
            std::optional<Counterexample>& cx) const {
    Index l = 0, r = 0;
    auto pair = [&](std::size_t i) {
      const auto& [lt, rt] = law.sides[i];
      Index lv = lt.eval(*ft_, val.data(), scratch);
      Index rv = rt.eval(*ft_, val.data(), scratch);
      return std::pair<Index, Index>(lv, rv);
    };
    const Index bot = ft_->bot();
    if (!violated(ce, sem, pair, [bot](Index i) { return i == bot; }, &l, &r)) return false;
    Valuation v;
    for (std::size_t i = 0; i < vars.size(); ++i) v.emplace(vars[i], ft_->element(val[i]));
    cx = Counterexample{std::move(v), ft_->element(l), ft_->element(r)};
    return true;
  }

  void exhaustive(Verdict& v, const ConditionalEquation& ce, const std::vector<std::string>& vars,
                  Semantics sem) const {
    if (!ft_) throw LawError("exhaustive mode needs a finite carrier; " + a_.name() + " is infinite");
    if (vars.size() > max_exhaustive_vars)
      throw LawError("exhaustive mode supports at most " + std::to_string(max_exhaustive_vars) + " variables");
    const CompiledLaw law(ce, vars);
    const auto dom = carrier(sem);
    std::vector<std::size_t> digit(vars.size(), 0);
    std::vector<Index> val(vars.size(), dom.empty() ? 0 : dom[0]);
    std::vector<Index> scratch;
    if (dom.empty() && !vars.empty()) return;
    for (;;) {
      ++v.checked;
      if (test(law, ce, vars, val, sem, scratch, v.counterexample)) return;
      // Odometer with the last variable moving fastest.
      std::size_t k = vars.size();
      while (k > 0) {
        --k;
        if (++digit[k] < dom.size()) {
          val[k] = dom[digit[k]];
          break;
        }
        digit[k] = 0;
        val[k] = dom[0];
        if (k == 0) return;
      }
      if (vars.empty()) return;
    }
  }

  Element draw(Rng& rng, Semantics sem) const {
    for (;;) {
      Element e = a_.sample(rng);
      if (sem == Semantics::tarski || !e.is_bot()) return e;
    }
  }

  void fuzz(Verdict& v, const ConditionalEquation& ce, const std::vector<std::string>& vars, const Mode& mode,
            Semantics sem) const {
    Rng rng(mode.seed);
    std::optional<CompiledLaw> law;
    if (ft_) law.emplace(ce, vars);
    std::vector<Index> val(vars.size());
    std::vector<Index> scratch;
    for (std::uint64_t t = 0; t < mode.trials; ++t) {
      ++v.checked;
      if (ft_) {
        for (std::size_t i = 0; i < vars.size(); ++i) val[i] = ft_->index_of(draw(rng, sem));
        if (test(*law, ce, vars, val, sem, scratch, v.counterexample)) return;
      } else {
        Valuation vv;
        for (const auto& name : vars) vv.emplace(name, draw(rng, sem));
        if ((v.counterexample = violation_generic(a_, ce, vv, sem))) return;
      }
    }
  }

  void witness(Verdict& v, const ConditionalEquation& ce, const std::vector<std::string>& vars, const Mode& mode,
               Semantics sem) const {
    for (const Valuation& w : mode.witnesses) {
      for (const auto& name : vars)
        if (!w.contains(name)) throw LawError("witness valuation does not bind '" + name + "'");
      if (sem == Semantics::eager)
        for (const auto& [name, e] : w)
          if (e.is_bot()) throw LawError("eager witness valuations cannot bind bot");
      ++v.checked;
      if ((v.counterexample = violation_generic(a_, ce, w, sem))) return;
    }
  }

  const TotalAlgebra& a_;
  const FiniteTables* ft_;
};

std::unique_ptr<FiniteTables> tables_for(const TotalAlgebra& a) {
  if (!a.is_finite()) return nullptr;
  return std::make_unique<FiniteTables>(a);
}

}  // namespace

Verdict check_law(const TotalAlgebra& a, const Law& law, const Mode& mode, Semantics semantics) {
  auto ft = mode.kind == Mode::Kind::witness ? nullptr : tables_for(a);
  return Checker(a, ft.get()).run(law.name, law.body, mode, semantics);
}

Verdict check_equation(const TotalAlgebra& a, const Equation& e, const Mode& mode) {
  return check_law(a, Law{e.name.value_or(render(e)), ConditionalEquation{{}, e, e.name}, std::nullopt}, mode);
}

Verdict check_conditional(const TotalAlgebra& a, const ConditionalEquation& ce, const Mode& mode) {
  return check_law(a, Law{ce.name.value_or(render(ce)), ce, std::nullopt}, mode);
}

Verdict check_eager(const PartialAlgebra& p, const Law& law, const Mode& mode) {
  // Non-owning handle: the enlargement does not outlive this call.
  PartialPtr handle(std::shared_ptr<const PartialAlgebra>{}, &p);
  return check_law(*enlarge(handle), law, mode, Semantics::eager);
}

std::vector<Verdict> check_suite(const TotalAlgebra& a, const LawSet& set, const Mode& mode, Semantics semantics) {
  auto ft = mode.kind == Mode::Kind::witness ? nullptr : tables_for(a);
  Checker checker(a, ft.get());
  std::vector<Verdict> out;
  out.reserve(set.size());
  for (const Law& l : set) out.push_back(checker.run(l.name, l.body, mode, semantics));
  return out;
}

std::vector<std::pair<std::int64_t, Verdict>> scan_zn(std::int64_t lo, std::int64_t hi, const Law& law) {
  if (lo < 2 || hi > 64 || lo > hi) throw LawError("scan range must satisfy 2 <= from <= to <= 64");
  std::vector<std::pair<std::int64_t, Verdict>> out;
  for (std::int64_t n = lo; n <= hi; ++n)
    out.emplace_back(n, check_law(*make_zn_inverse_division(n), law, Mode::exhaustive()));
  return out;
}

bool confirms(const TotalAlgebra& a, const Law& law, const Counterexample& cx, Semantics semantics) {
  auto again = violation_generic(a, law.body, cx.valuation, semantics);
  return again && again->lhs == cx.lhs && again->rhs == cx.rhs;
}

nlohmann::json to_json(const Verdict& v, const TotalAlgebra& a) {
  nlohmann::json j;
  j["law"] = v.law;
  j["holds"] = v.holds;
  j["mode"] = mode_name(v.mode);
  j["semantics"] = v.semantics == Semantics::tarski ? "tarski" : "eager";
  j["checked"] = v.checked;
  if (v.mode == Mode::Kind::fuzz) {
    j["trials"] = v.trials;
    j["seed"] = v.seed;
  }
  if (v.counterexample) {
    nlohmann::json cx = nlohmann::json::object();
    for (const auto& [name, e] : v.counterexample->valuation) cx[name] = a.encode(e);
    j["counterexample"] = cx;
    j["values"] = {{"lhs", a.encode(v.counterexample->lhs)}, {"rhs", a.encode(v.counterexample->rhs)}};
  }
  return j;
}

}  // namespace meadow
