#include "meadow/proofkernel.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "meadow/finite.hpp"

namespace meadow {

using nlohmann::json;

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::axiom: return "axiom";
    case Rule::hyp: return "hyp";
    case Rule::refl: return "refl";
    case Rule::sym: return "sym";
    case Rule::trans: return "trans";
    case Rule::cong: return "cong";
    case Rule::subst: return "subst";
    case Rule::cond: return "cond";
    case Rule::rcm: return "rcm";
    case Rule::rcmprime: return "rcmprime";
  }
  return "?";
}

std::string_view reject_name(Reject r) {
  switch (r) {
    case Reject::empty_script: return "empty_script";
    case Reject::duplicate_id: return "duplicate_id";
    case Reject::unknown_step: return "unknown_step";
    case Reject::unknown_law: return "unknown_law";
    case Reject::malformed_substitution: return "malformed_substitution";
    case Reject::position_out_of_range: return "position_out_of_range";
    case Reject::hypothesis_out_of_range: return "hypothesis_out_of_range";
    case Reject::context_mismatch: return "context_mismatch";
    case Reject::claim_mismatch: return "claim_mismatch";
    case Reject::chain_gap: return "chain_gap";
    case Reject::premise_mismatch: return "premise_mismatch";
    case Reject::conditional_law: return "conditional_law";
    case Reject::negated_condition: return "negated_condition";
    case Reject::substitution_capture: return "substitution_capture";
    case Reject::rcm_shape: return "rcm_shape";
    case Reject::target_mismatch: return "target_mismatch";
  }
  return "?";
}

namespace {

const std::map<std::string, Rule, std::less<>>& rules_by_name() {
  static const std::map<std::string, Rule, std::less<>> m = {
      {"axiom", Rule::axiom}, {"hyp", Rule::hyp},     {"refl", Rule::refl},
      {"sym", Rule::sym},     {"trans", Rule::trans}, {"cong", Rule::cong},
      {"subst", Rule::subst}, {"cond", Rule::cond},   {"rcm", Rule::rcm},
      {"rcmprime", Rule::rcmprime}};
  return m;
}

bool contains(const std::vector<Equation>& hs, const Equation& e) {
  return std::find(hs.begin(), hs.end(), e) != hs.end();
}

bool subset(const std::vector<Equation>& a, const std::vector<Equation>& b) {
  return std::all_of(a.begin(), a.end(), [&](const Equation& e) { return contains(b, e); });
}

bool same_set(const std::vector<Equation>& a, const std::vector<Equation>& b) {
  return subset(a, b) && subset(b, a);
}

Equation eq_bot(const Term& t) { return Equation{t, Term::bot(), std::nullopt}; }

std::set<std::string> vars_of(const std::vector<Equation>& hs) {
  std::set<std::string> out;
  for (const Equation& h : hs) out.merge(free_vars(h));
  return out;
}

struct Fail {
  Reject reason;
  std::string detail;
};

class Checker {
 public:
  Checker(const ProofScript& s, const LawSet& laws) : s_(s), laws_(laws) {}

  ProofResult run() {
    if (s_.steps.empty()) return reject(0, {Reject::empty_script, "the script has no steps"});
    for (std::size_t i = 0; i < s_.steps.size(); ++i) {
      const ProofStep& st = s_.steps[i];
      if (ids_.count(st.id)) return reject(i, {Reject::duplicate_id, "step id '" + st.id + "' is reused"});
      if (auto f = step(st)) return reject(i, *f);
      ids_.emplace(st.id, i);
    }
    const ProofStep& last = s_.steps.back();
    if (!(last.claim == s_.target.concl) || !subset(ctx(last), s_.target.hyps))
      return reject(s_.steps.size() - 1,
                    {Reject::target_mismatch, "final step proves " + render(last.claim) + ", target is " +
                                                  render(s_.target.concl)});
    return ProofResult{};
  }

 private:
  ProofResult reject(std::size_t i, Fail f) { return ProofResult{false, i, f.reason, std::move(f.detail)}; }

  const std::vector<Equation>& ctx(const ProofStep& st) const {
    return st.hyps ? *st.hyps : s_.target.hyps;
  }

  std::optional<Fail> premise(const ProofStep& st, std::size_t k, const ProofStep*& out, bool weaken = true) {
    if (k >= st.refs.size())
      return Fail{Reject::premise_mismatch, std::string(rule_name(st.rule)) + " needs more premises"};
    auto it = ids_.find(st.refs[k]);
    if (it == ids_.end()) return Fail{Reject::unknown_step, "no earlier step '" + st.refs[k] + "'"};
    out = &s_.steps[it->second];
    if (weaken && !subset(ctx(*out), ctx(st)))
      return Fail{Reject::context_mismatch, "premise '" + st.refs[k] + "' uses hypotheses not in force here"};
    return std::nullopt;
  }

  std::optional<Fail> arity(const ProofStep& st, std::size_t n) {
    if (st.refs.size() != n)
      return Fail{Reject::premise_mismatch, std::string(rule_name(st.rule)) + " takes " + std::to_string(n) +
                                                " premise(s), got " + std::to_string(st.refs.size())};
    return std::nullopt;
  }

  std::optional<Fail> expect(const ProofStep& st, const Equation& e) {
    if (st.claim == e) return std::nullopt;
    return Fail{Reject::claim_mismatch, "claimed " + render(st.claim) + ", rule gives " + render(e)};
  }

  const Law* law(const std::string& name) const {
    for (const Law& l : laws_)
      if (l.name == name) return &l;
    return nullptr;
  }

  std::optional<Fail> subst_keys(const Substitution& s, const std::set<std::string>& allowed) {
    for (const auto& [v, _] : s)
      if (!allowed.count(v))
        return Fail{Reject::malformed_substitution, "substitution binds '" + v + "', which does not occur"};
    return std::nullopt;
  }

  std::optional<Fail> step(const ProofStep& st) {
    switch (st.rule) {
      case Rule::axiom: {
        const Law* l = law(st.law);
        if (!l) return Fail{Reject::unknown_law, "no law '" + st.law + "' in the law set"};
        if (!l->body.is_equation())
          return Fail{Reject::conditional_law, "'" + st.law + "' is conditional; use the cond rule"};
        if (auto f = subst_keys(st.subst, free_vars(l->body))) return f;
        if (auto f = arity(st, 0)) return f;
        return expect(st, substitute(l->body.conclusion, st.subst));
      }
      case Rule::hyp: {
        if (auto f = arity(st, 0)) return f;
        const auto& hs = ctx(st);
        if (st.index >= hs.size())
          return Fail{Reject::hypothesis_out_of_range,
                      "hypothesis " + std::to_string(st.index) + " of " + std::to_string(hs.size())};
        return expect(st, hs[st.index]);
      }
      case Rule::refl:
        if (auto f = arity(st, 0)) return f;
        return expect(st, Equation{st.claim.lhs, st.claim.lhs, std::nullopt});
      case Rule::sym: {
        const ProofStep* p = nullptr;
        if (auto f = arity(st, 1)) return f;
        if (auto f = premise(st, 0, p)) return f;
        return expect(st, Equation{p->claim.rhs, p->claim.lhs, std::nullopt});
      }
      case Rule::trans: {
        const ProofStep *p = nullptr, *q = nullptr;
        if (auto f = arity(st, 2)) return f;
        if (auto f = premise(st, 0, p)) return f;
        if (auto f = premise(st, 1, q)) return f;
        if (!(p->claim.rhs == q->claim.lhs))
          return Fail{Reject::chain_gap, render(p->claim.rhs) + " does not continue as " + render(q->claim.lhs)};
        return expect(st, Equation{p->claim.lhs, q->claim.rhs, std::nullopt});
      }
      case Rule::cong: {
        const ProofStep* p = nullptr;
        if (auto f = arity(st, 1)) return f;
        if (auto f = premise(st, 0, p)) return f;
        auto at = subterm_at(st.claim.lhs, st.path);
        if (!at) return Fail{Reject::position_out_of_range, "path leaves the left-hand side"};
        if (!(*at == p->claim.lhs))
          return Fail{Reject::claim_mismatch, "subterm at path is " + render(*at) + ", premise rewrites " +
                                                  render(p->claim.lhs)};
        return expect(st, Equation{st.claim.lhs, *replace_at(st.claim.lhs, st.path, p->claim.rhs), std::nullopt});
      }
      case Rule::subst: {
        const ProofStep* p = nullptr;
        if (auto f = arity(st, 1)) return f;
        if (auto f = premise(st, 0, p)) return f;
        if (auto f = subst_keys(st.subst, free_vars(p->claim))) return f;
        auto fixed = vars_of(ctx(*p));
        for (const auto& [v, _] : st.subst)
          if (fixed.count(v))
            return Fail{Reject::substitution_capture, "'" + v + "' is free in the premise's hypotheses"};
        return expect(st, substitute(p->claim, st.subst));
      }
      case Rule::cond: {
        const Law* l = law(st.law);
        if (!l) return Fail{Reject::unknown_law, "no law '" + st.law + "' in the law set"};
        if (l->body.has_negated_condition())
          return Fail{Reject::negated_condition, "'" + st.law + "' has a != condition, which no step can discharge"};
        if (auto f = subst_keys(st.subst, free_vars(l->body))) return f;
        if (auto f = arity(st, l->body.conditions.size())) return f;
        for (std::size_t k = 0; k < l->body.conditions.size(); ++k) {
          const ProofStep* p = nullptr;
          if (auto f = premise(st, k, p)) return f;
          Equation need = substitute(l->body.conditions[k].eq, st.subst);
          if (!(p->claim == need))
            return Fail{Reject::premise_mismatch, "premise " + std::to_string(k) + " proves " + render(p->claim) +
                                                      ", condition needs " + render(need)};
        }
        return expect(st, substitute(l->body.conclusion, st.subst));
      }
      case Rule::rcm: {
        const ProofStep *p = nullptr, *q = nullptr;
        if (auto f = arity(st, 2)) return f;
        if (auto f = premise(st, 0, p, false)) return f;
        if (auto f = premise(st, 1, q, false)) return f;
        const Term &l = st.claim.lhs, &r = st.claim.rhs;
        if (l.op() != Op::mul || l.arg(0).op() != Op::zero || r.op() != Op::mul || r.arg(0).op() != Op::zero)
          return Fail{Reject::rcm_shape, "rcm concludes 0*t = 0*r"};
        const Term &t = l.arg(1), &u = r.arg(1);
        auto with = [&](const Term& b) {
          auto hs = ctx(st);
          hs.push_back(eq_bot(b));
          return hs;
        };
        if (!same_set(ctx(*p), with(t)) || !(p->claim == eq_bot(u)))
          return Fail{Reject::rcm_shape, "first premise must be E /\\ " + render(t) + " = bot -> " + render(u) + " = bot"};
        if (!same_set(ctx(*q), with(u)) || !(q->claim == eq_bot(t)))
          return Fail{Reject::rcm_shape, "second premise must be E /\\ " + render(u) + " = bot -> " + render(t) + " = bot"};
        return std::nullopt;
      }
      case Rule::rcmprime: {
        const ProofStep* p = nullptr;
        if (auto f = arity(st, 1)) return f;
        if (auto f = premise(st, 0, p, false)) return f;
        const Term &l = st.claim.lhs, &r = st.claim.rhs;
        if (l.op() != Op::mul || l.arg(0).op() != Op::zero || r.op() != Op::mul || r.arg(0).op() != Op::zero ||
            r.arg(1).op() != Op::add || !(r.arg(1).arg(1) == l.arg(1)))
          return Fail{Reject::rcm_shape, "rcmprime concludes 0*r = 0*(t + r)"};
        const Term &t = r.arg(1).arg(0), &u = l.arg(1);
        auto hs = ctx(st);
        hs.push_back(eq_bot(t));
        if (!same_set(ctx(*p), hs) || !(p->claim == eq_bot(u)))
          return Fail{Reject::rcm_shape, "premise must be E /\\ " + render(t) + " = bot -> " + render(u) + " = bot"};
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  const ProofScript& s_;
  const LawSet& laws_;
  std::map<std::string, std::size_t> ids_;
};

// ---------------------------------------------------------------------------
// JSON lines

std::string field_str(const json& j, const char* key, std::size_t line) {
  if (!j.contains(key) || !j[key].is_string()) throw ScriptError(line, std::string("missing string field \"") + key + "\"");
  return j[key].get<std::string>();
}

Equation eq_field(const json& j, const char* key, std::size_t line) {
  if (!j.contains(key)) throw ScriptError(line, std::string("missing field \"") + key + "\"");
  try {
    return equation_from_json(j[key]);
  } catch (const std::exception& e) {
    throw ScriptError(line, std::string("field \"") + key + "\": " + e.what());
  }
}

std::vector<Equation> eq_list(const json& j, std::size_t line) {
  if (!j.is_array()) throw ScriptError(line, "\"hyps\" must be an array");
  std::vector<Equation> out;
  for (const json& e : j) {
    try {
      out.push_back(equation_from_json(e));
    } catch (const std::exception& ex) {
      throw ScriptError(line, std::string("hypothesis: ") + ex.what());
    }
  }
  return out;
}

json eq_json(const Equation& e) { return render(e); }

}  // namespace

ProofResult check_proof(const ProofScript& script, const LawSet& laws) { return Checker(script, laws).run(); }

ProofResult check_proof(const ProofScript& script) { return check_proof(script, law_set(script.laws)); }

ProofScript parse_script(std::string_view text) {
  ProofScript s;
  bool have_target = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(raw);
    } catch (const json::exception& e) {
      throw ScriptError(line, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ScriptError(line, "each line must be a JSON object");
    if (!have_target) {
      if (field_str(j, "kind", line) != "target") throw ScriptError(line, "the first line must be the target");
      s.name = j.value("name", "");
      s.laws = j.value("laws", "e-ftc-cm");
      s.target.hyps = j.contains("hyps") ? eq_list(j["hyps"], line) : std::vector<Equation>{};
      s.target.concl = eq_field(j, "concl", line);
      have_target = true;
      continue;
    }
    ProofStep st;
    st.id = field_str(j, "id", line);
    std::string rule = field_str(j, "rule", line);
    auto it = rules_by_name().find(rule);
    if (it == rules_by_name().end()) throw ScriptError(line, "unknown rule '" + rule + "'");
    st.rule = it->second;
    st.claim = eq_field(j, "claim", line);
    if (j.contains("hyps")) st.hyps = eq_list(j["hyps"], line);
    if (j.contains("law")) st.law = field_str(j, "law", line);
    if (j.contains("subst")) {
      if (!j["subst"].is_object()) throw ScriptError(line, "\"subst\" must be an object");
      for (const auto& [v, t] : j["subst"].items()) {
        try {
          st.subst.emplace(v, term_from_json(t));
        } catch (const std::exception& e) {
          throw ScriptError(line, "substitution for '" + v + "': " + e.what());
        }
      }
    }
    if (j.contains("index")) {
      if (!j["index"].is_number_unsigned()) throw ScriptError(line, "\"index\" must be a natural number");
      st.index = j["index"].get<std::size_t>();
    }
    if (j.contains("of")) {
      const json& of = j["of"];
      if (of.is_string()) {
        st.refs.push_back(of.get<std::string>());
      } else if (of.is_array() && std::all_of(of.begin(), of.end(), [](const json& x) { return x.is_string(); })) {
        for (const json& x : of) st.refs.push_back(x.get<std::string>());
      } else {
        throw ScriptError(line, "\"of\" must be a step id or an array of step ids");
      }
    }
    if (j.contains("path")) {
      const json& p = j["path"];
      if (!p.is_array() || !std::all_of(p.begin(), p.end(), [](const json& x) { return x.is_number_unsigned(); }))
        throw ScriptError(line, "\"path\" must be an array of child indices");
      for (const json& x : p) st.path.push_back(x.get<std::size_t>());
    }
    s.steps.push_back(std::move(st));
  }
  if (!have_target) throw ScriptError(line, "empty script (no target line)");
  return s;
}

ProofScript load_script(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_script(ss.str());
}

std::string to_jsonl(const ProofScript& s) {
  std::string out;
  auto hyps = [](const std::vector<Equation>& hs) {
    json a = json::array();
    for (const Equation& h : hs) a.push_back(eq_json(h));
    return a;
  };
  json t = {{"kind", "target"}, {"name", s.name}, {"laws", s.laws}, {"hyps", hyps(s.target.hyps)},
            {"concl", eq_json(s.target.concl)}};
  out += t.dump() + "\n";
  for (const ProofStep& st : s.steps) {
    json j = {{"id", st.id}, {"rule", std::string(rule_name(st.rule))}};
    if (st.hyps) j["hyps"] = hyps(*st.hyps);
    if (!st.law.empty()) j["law"] = st.law;
    if (!st.subst.empty()) {
      json m = json::object();
      for (const auto& [v, t2] : st.subst) m[v] = render(t2);
      j["subst"] = m;
    }
    if (st.rule == Rule::hyp) j["index"] = st.index;
    if (st.refs.size() == 1) j["of"] = st.refs.front();
    if (st.refs.size() > 1) j["of"] = st.refs;
    if (st.rule == Rule::cong) j["path"] = st.path;
    j["claim"] = eq_json(st.claim);
    out += j.dump() + "\n";
  }
  return out;
}

json to_json(const ProofResult& r, const ProofScript& s) {
  json j = {{"script", s.name}, {"laws", s.laws}, {"accepted", r.accepted}, {"steps", s.steps.size()}};
  if (!r.accepted) {
    j["reason"] = std::string(reject_name(r.reason));
    j["step"] = r.step;
    if (r.step < s.steps.size()) j["step_id"] = s.steps[r.step].id;
    j["detail"] = r.detail;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Builder

namespace {

bool match(const Term& pat, const Term& t, Substitution& s, const std::set<std::string>& rigid) {
  if (pat.op() == Op::var && !rigid.count(pat.name())) {
    auto [it, fresh] = s.emplace(pat.name(), t);
    return fresh || it->second == t;
  }
  if (pat.op() != t.op() || pat.name() != t.name()) return false;
  for (std::size_t i = 0; i < pat.args().size(); ++i)
    if (!match(pat.arg(i), t.arg(i), s, rigid)) return false;
  return true;
}

std::vector<std::size_t> diff_path(Term a, Term b) {
  std::vector<std::size_t> p;
  while (a.op() == b.op() && a.name() == b.name()) {
    std::size_t k = a.args().size(), differing = 0;
    for (std::size_t i = 0; i < a.args().size(); ++i)
      if (!(a.arg(i) == b.arg(i))) k = i, ++differing;
    if (differing != 1) break;
    p.push_back(k);
    Term na = a.arg(k), nb = b.arg(k);
    a = na;
    b = nb;
  }
  return p;
}

}  // namespace

ScriptBuilder::ScriptBuilder(std::string name, std::string laws, std::vector<std::string> hyps, std::string concl)
    : laws_(law_set(laws)) {
  script_.name = std::move(name);
  script_.laws = std::move(laws);
  for (const auto& h : hyps) script_.target.hyps.push_back(parse_equation(h));
  script_.target.concl = parse_equation(concl);
}

void ScriptBuilder::context(std::vector<std::string> hyps) {
  std::vector<Equation> hs;
  for (const auto& h : hyps) hs.push_back(parse_equation(h));
  ctx_ = std::move(hs);
}

void ScriptBuilder::target_context() { ctx_.reset(); }

std::string ScriptBuilder::emit(ProofStep step) {
  step.id = "s" + std::to_string(script_.steps.size() + 1);
  step.hyps = ctx_;
  script_.steps.push_back(std::move(step));
  return script_.steps.back().id;
}

const ProofStep& ScriptBuilder::find(const std::string& id) const {
  for (const ProofStep& s : script_.steps)
    if (s.id == id) return s;
  throw std::invalid_argument("no step '" + id + "'");
}

std::string ScriptBuilder::sym(const std::string& id) {
  const ProofStep& p = find(id);
  ProofStep st;
  st.rule = Rule::sym;
  st.refs = {id};
  st.claim = Equation{p.claim.rhs, p.claim.lhs, std::nullopt};
  return emit(std::move(st));
}

std::string ScriptBuilder::rewrite(const Term& from, const Term& to, const By& by) {
  Equation schema{Term::zero(), Term::zero(), std::nullopt};
  std::set<std::string> rigid;
  const auto& hs = ctx_ ? *ctx_ : script_.target.hyps;
  switch (by.kind) {
    case By::Kind::law: {
      auto it = std::find_if(laws_.begin(), laws_.end(), [&](const Law& l) { return l.name == by.ref; });
      if (it == laws_.end() || !it->body.is_equation()) throw std::invalid_argument("no equational law " + by.ref);
      schema = it->body.conclusion;
      break;
    }
    case By::Kind::hyp:
      schema = hs.at(by.index);
      rigid = free_vars(schema);
      break;
    case By::Kind::step: {
      const ProofStep& p = find(by.ref);
      schema = p.claim;
      rigid = vars_of(p.hyps ? *p.hyps : script_.target.hyps);
      break;
    }
  }
  const Term& pl = by.reversed ? schema.rhs : schema.lhs;
  const Term& pr = by.reversed ? schema.lhs : schema.rhs;
  auto full = diff_path(from, to);
  for (std::size_t len = full.size() + 1; len-- > 0;) {
    std::span<const std::size_t> path(full.data(), len);
    Term a = *subterm_at(from, path), b = *subterm_at(to, path);
    Substitution s;
    if (!match(pl, a, s, rigid) || !match(pr, b, s, rigid)) continue;
    for (auto it = s.begin(); it != s.end();)
      it = it->second == Term::var(it->first) ? s.erase(it) : std::next(it);
    ProofStep inst;
    switch (by.kind) {
      case By::Kind::law:
        inst.rule = Rule::axiom;
        inst.law = by.ref;
        inst.subst = s;
        break;
      case By::Kind::hyp:
        inst.rule = Rule::hyp;
        inst.index = by.index;
        break;
      case By::Kind::step:
        inst.rule = Rule::subst;
        inst.refs = {by.ref};
        inst.subst = s;
        break;
    }
    inst.claim = substitute(schema, s);
    std::string id = by.kind == By::Kind::step && s.empty() ? by.ref : emit(std::move(inst));
    if (by.reversed) id = sym(id);
    if (len > 0) {
      ProofStep c;
      c.rule = Rule::cong;
      c.refs = {id};
      c.path.assign(path.begin(), path.end());
      c.claim = Equation{from, to, std::nullopt};
      id = emit(std::move(c));
    }
    return id;
  }
  throw std::invalid_argument("cannot rewrite " + render(from) + " to " + render(to));
}

std::string ScriptBuilder::chain(const std::string& from, const std::vector<Link>& links) {
  Term start = parse(from), cur = start;
  std::string acc;
  for (const Link& l : links) {
    Term next = parse(l.to);
    std::string id = rewrite(cur, next, l.by);
    if (acc.empty()) {
      acc = id;
    } else {
      ProofStep t;
      t.rule = Rule::trans;
      t.refs = {acc, id};
      t.claim = Equation{start, next, std::nullopt};
      acc = emit(std::move(t));
    }
    cur = next;
  }
  return acc;
}

std::string ScriptBuilder::cond(const std::string& law, const Substitution& s, std::vector<std::string> premises) {
  auto it = std::find_if(laws_.begin(), laws_.end(), [&](const Law& l) { return l.name == law; });
  if (it == laws_.end()) throw std::invalid_argument("no law " + law);
  ProofStep st;
  st.rule = Rule::cond;
  st.law = law;
  st.subst = s;
  st.refs = std::move(premises);
  st.claim = substitute(it->body.conclusion, s);
  return emit(std::move(st));
}

std::string ScriptBuilder::rcm(const std::string& left, const std::string& right, const std::string& claim) {
  ProofStep st;
  st.rule = Rule::rcm;
  st.refs = {left, right};
  st.claim = parse_equation(claim);
  return emit(std::move(st));
}

std::string ScriptBuilder::rcmprime(const std::string& premise, const std::string& claim) {
  ProofStep st;
  st.rule = Rule::rcmprime;
  st.refs = {premise};
  st.claim = parse_equation(claim);
  return emit(std::move(st));
}

// ---------------------------------------------------------------------------
// Semantic soundness of rcm

RcmCheck check_rcm_soundness(const TotalAlgebra& a, const Term& t, const Term& r, const std::vector<Equation>& e) {
  std::set<std::string> vs = free_vars(t);
  vs.merge(free_vars(r));
  vs.merge(vars_of(e));
  if (vs.size() > max_rcm_vars)
    throw LawError("rcm soundness check takes at most " + std::to_string(max_rcm_vars) + " variables, got " +
                   std::to_string(vs.size()));
  std::vector<std::string> vars(vs.begin(), vs.end());
  FiniteTables ft(a);
  CompiledTerm ct(t, vars), cr(r, vars);
  std::vector<std::pair<CompiledTerm, CompiledTerm>> ce;
  for (const Equation& q : e) ce.emplace_back(CompiledTerm(q.lhs, vars), CompiledTerm(q.rhs, vars));

  RcmCheck out;
  out.premises_hold = true;
  out.conclusion_holds = true;
  std::optional<std::vector<FiniteTables::Index>> bad;
  std::vector<FiniteTables::Index> val(vars.size(), 0), scratch;
  const auto n = static_cast<FiniteTables::Index>(ft.size());
  while (true) {
    ++out.checked;
    bool e_ok = std::all_of(ce.begin(), ce.end(), [&](const auto& q) {
      return q.first.eval(ft, val.data(), scratch) == q.second.eval(ft, val.data(), scratch);
    });
    if (e_ok) {
      auto tv = ct.eval(ft, val.data(), scratch), rv = cr.eval(ft, val.data(), scratch);
      if ((tv == ft.bot()) != (rv == ft.bot())) out.premises_hold = false;
      if (ft.mul(ft.zero(), tv) != ft.mul(ft.zero(), rv) && !bad) bad = val;
    }
    std::size_t k = vars.size();
    while (k > 0 && ++val[k - 1] == n) val[--k] = 0;
    if (k == 0) break;
  }
  if (bad) {
    out.conclusion_holds = false;
    if (out.premises_hold) {
      Valuation v;
      for (std::size_t i = 0; i < vars.size(); ++i) v.emplace(vars[i], ft.element((*bad)[i]));
      out.violation = std::move(v);
    }
  }
  return out;
}

}  // namespace meadow
