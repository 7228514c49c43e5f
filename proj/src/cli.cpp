#include "meadow/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "meadow/algebra.hpp"
#include "meadow/flatten.hpp"
#include "meadow/homs.hpp"
#include "meadow/laws.hpp"
#include "meadow/proofkernel.hpp"
#include "meadow/term.hpp"

namespace meadow {

using nlohmann::json;

namespace {

/// Bad input that is not a CLI11 parse error; exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* s = std::getenv("MEADOWLAB_SEED"); s && *s) {
    try {
      std::size_t used = 0;
      auto v = std::stoull(s, &used, 0);
      if (used == std::string_view(s).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("MEADOWLAB_SEED is not an integer: '") + s + "'");
  }
  return Mode::default_seed;
}

/// The JSON encoding with quotes removed.
std::string show(const TotalAlgebra& a, const Element& e) {
  json j = a.encode(e);
  if (j.is_string()) return j.get<std::string>();
  std::string s = j.dump();
  s.erase(std::remove(s.begin(), s.end(), '"'), s.end());
  return s;
}

std::string show(const TotalAlgebra& a, const Valuation& v) {
  std::string out;
  for (const auto& [name, e] : v) out += (out.empty() ? "" : ", ") + name + "=" + show(a, e);
  return out;
}

Element element(const TotalAlgebra& a, const std::string& text) {
  if (text == "bot" || text == "⊥") return a.bot();
  try {
    return a.parse_element(text);
  } catch (const std::exception& e) {
    throw UsageError("'" + text + "' is not an element of " + a.name() + ": " + e.what());
  }
}

Valuation bindings(const TotalAlgebra& a, const std::vector<std::string>& binds) {
  Valuation v;
  for (const auto& b : binds) {
    auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--bind expects name=value, got '" + b + "'");
    std::string name = b.substr(0, eq);
    Term probe = parse(name);
    if (!probe.is_var()) throw UsageError("'" + name + "' is not a variable name");
    v[name] = element(a, b.substr(eq + 1));
  }
  return v;
}

NamedAlgebra algebra(const std::string& name) {
  try {
    return make_algebra(name);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

Term term_arg(const std::string& text) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw UsageError(std::string("cannot parse term: ") + e.what());
  }
}

struct Opts {
  bool json = false;
};

// ---------------------------------------------------------------------------

int cmd_parse(const std::string& text, const Opts& o, std::ostream& out) {
  Term t = term_arg(text);
  if (o.json)
    out << json{{"term", render(t)}, {"ast", to_json(t)}, {"size", t.size()}}.dump(2) << "\n";
  else
    out << render(t) << "\n";
  return 0;
}

int cmd_eval(const std::string& text, const std::string& alg, const std::vector<std::string>& binds, const Opts& o,
             std::ostream& out) {
  Term t = term_arg(text);
  NamedAlgebra a = algebra(alg);
  Valuation v = bindings(*a.total, binds);
  for (const auto& name : free_vars(t))
    if (!v.count(name)) throw UsageError("variable '" + name + "' is unbound; use --bind " + name + "=<value>");
  Element e = eval(t, *a.total, v);
  if (o.json)
    out << json{{"algebra", a.total->name()}, {"term", render(t)}, {"value", a.total->encode(e)}}.dump(2) << "\n";
  else
    out << show(*a.total, e) << "\n";
  return 0;
}

int cmd_flatten(const std::string& text, const Opts& o, std::ostream& out) {
  Term t = term_arg(text);
  if (!is_free_of(t, {Op::cond})) throw UsageError("flatten does not accept cond");
  FlatFracterm f = flatten(t);
  if (o.json) {
    FlattenStats s = flatten_stats(t);
    out << json{{"input", render(t)},
                {"output", render(f.as_term())},
                {"num", render(f.num)},
                {"den", render(f.den)},
                {"stats", {{"input_size", s.input_size}, {"num_size", s.output_num_size}, {"den_size", s.output_den_size}}}}
               .dump(2)
        << "\n";
  } else {
    out << render(f.as_term()) << "\n";
  }
  return 0;
}

std::string verdict_line(const Verdict& v, const TotalAlgebra& a) {
  std::string s = v.law + "  " + (v.holds ? "holds" : "fails");
  if (v.counterexample) {
    s += "  " + show(a, v.counterexample->valuation) + ": lhs = " + show(a, v.counterexample->lhs) +
         ", rhs = " + show(a, v.counterexample->rhs);
  }
  return s;
}

struct CheckArgs {
  std::string algebra, law, suite, mode = "exhaustive";
  std::optional<std::uint64_t> seed;
  bool eager = false;
  std::vector<std::string> binds;
};

int cmd_check(const CheckArgs& c, const Opts& o, std::ostream& out) {
  NamedAlgebra a = algebra(c.algebra);
  LawSet laws;
  try {
    laws = law_set(c.law.empty() ? c.suite : c.law);
  } catch (const LawError& e) {
    throw UsageError(e.what());
  }
  std::uint64_t seed = c.seed ? *c.seed : default_seed();
  Mode mode;
  if (!c.binds.empty() || c.mode == "witness") {
    if (c.binds.empty()) throw UsageError("witness mode needs --bind values");
    mode = Mode::witness({bindings(*a.total, c.binds)});
  } else {
    try {
      mode = Mode::parse(c.mode, seed);
    } catch (const LawError& e) {
      throw UsageError(e.what());
    }
  }
  Semantics sem = c.eager ? Semantics::eager : Semantics::tarski;
  std::vector<Verdict> vs;
  try {
    vs = check_suite(*a.total, laws, mode, sem);
  } catch (const LawError& e) {
    throw UsageError(e.what());
  }
  auto holding = std::count_if(vs.begin(), vs.end(), [](const Verdict& v) { return v.holds; });
  if (o.json) {
    json results = json::array();
    for (const Verdict& v : vs) results.push_back(to_json(v, *a.total));
    json j = {{"algebra", a.total->name()},
              {"mode", mode_name(mode.kind)},
              {"semantics", c.eager ? "eager" : "tarski"},
              {"results", results},
              {"holding", holding},
              {"total", vs.size()}};
    if (mode.kind == Mode::Kind::fuzz) j["seed"] = seed;
    out << j.dump(2) << "\n";
  } else {
    for (const Verdict& v : vs) out << verdict_line(v, *a.total) << "\n";
    out << holding << "/" << vs.size() << " hold in " << a.total->name() << " (" << mode_name(mode.kind)
        << (mode.kind == Mode::Kind::fuzz ? ":" + std::to_string(mode.trials) + ", seed " + std::to_string(seed) : "")
        << (c.eager ? ", eager" : "") << ")\n";
  }
  return holding == static_cast<std::ptrdiff_t>(vs.size()) ? 0 : 1;
}

int cmd_scan(const std::string& law, std::int64_t from, std::int64_t to, const Opts& o, std::ostream& out) {
  const Law* l = nullptr;
  try {
    l = &find_law(law);
  } catch (const LawError& e) {
    throw UsageError(e.what());
  }
  std::vector<std::pair<std::int64_t, Verdict>> rs;
  try {
    rs = scan_zn(from, to, *l);
  } catch (const LawError& e) {
    throw UsageError(e.what());
  }
  bool all = true;
  json results = json::array();
  for (const auto& [n, v] : rs) {
    all = all && v.holds;
    auto a = make_zn_inverse_division(n);
    if (o.json) {
      json r = to_json(v, *a);
      r["n"] = n;
      results.push_back(r);
    } else {
      out << "zn:" << n << "  " << (v.holds ? "holds" : "fails");
      if (v.counterexample) out << "  " << show(*a, v.counterexample->valuation);
      out << "\n";
    }
  }
  if (o.json) out << json{{"law", law}, {"results", results}}.dump(2) << "\n";
  return all ? 0 : 1;
}

void print_map(const HomMap& h, std::ostream& out) {
  for (const Element& e : h.source->elements()) out << "  " << show(*h.source, e) << " -> " << show(*h.target, h(e)) << "\n";
}

void print_table(const TableAlgebra& t, std::ostream& out) {
  out << t.name() << ": " << t.size() << " elements {";
  for (std::size_t i = 0; i < t.size(); ++i) out << (i ? ", " : "") << show(t, t.element(i));
  out << "}\n";
}

struct HomArgs {
  std::string algebra, at, avoid;
  std::int64_t from = 0, to = 0;
  bool prime = false;
};

int cmd_hom(const std::string& which, const HomArgs& h, const Opts& o, std::ostream& out) {
  if (which == "extend") {
    if (h.from < 1 || h.to < 1) throw UsageError("extend needs --from N --to M with N, M >= 1");
    if (h.from % h.to != 0) throw UsageError("extend needs M to divide N");
    auto f = extend_ring_hom(h.from, h.to);
    auto s = make_zn_inverse_division(h.from), t = make_zn_inverse_division(h.to);
    if (o.json) {
      json j = {{"from", h.from}, {"to", h.to}, {"homomorphism", !f}};
      if (f) j["failure"] = to_json(*f, *s, *t);
      out << j.dump(2) << "\n";
    } else if (!f) {
      out << "x mod " << h.to << " is a homomorphism zn:" << h.from << " -> zn:" << h.to << "\n";
    } else {
      std::string args;
      for (const Element& e : f->args) args += (args.empty() ? "" : ", ") + show(*s, e);
      out << "not a homomorphism: " << f->op << "(" << args << ") maps to " << show(*t, f->mapped)
          << ", computed in the target: " << show(*t, f->computed) << "\n";
    }
    return f ? 1 : 0;
  }
  NamedAlgebra a = algebra(h.algebra);
  if (!a.total->is_finite()) throw UsageError(which + " needs a finite algebra");
  auto at = [&](const std::string& text) {
    if (text.empty()) throw UsageError(which + " needs --at <element>");
    return element(*a.total, text);
  };
  if (which == "split") {
    auto s = detect_bot_splitting(*a.total);
    if (o.json) {
      json j = {{"algebra", a.total->name()}, {"split", bool(s)}};
      if (s) j["pair"] = {a.total->encode(s->first), a.total->encode(s->second)};
      out << j.dump(2) << "\n";
    } else if (s) {
      out << show(*a.total, s->first) << " + " << show(*a.total, s->second) << " = bot\n";
    } else {
      out << "no bot-splitting in " << a.total->name() << "\n";
    }
    return s ? 1 : 0;
  }
  if (which == "rho" || which == "phi") {
    HomMap m = which == "rho" ? map_rho(a.total) : map_phi(a.total, at(h.at));
    if (o.json) {
      out << to_json(m).dump(2) << "\n";
    } else {
      out << which << ": " << m.source->name() << " -> " << m.target->name() << "\n";
      print_map(m, out);
    }
    return 0;
  }
  if (which == "quotient") {
    Quotient q = quotient_by(a.total, at(h.at), h.prime ? QuotientMode::prime : QuotientMode::by_level);
    if (o.json) {
      json classes = json::array();
      for (const auto& c : q.classes) {
        json cl = json::array();
        for (const Element& e : c) cl.push_back(a.total->encode(e));
        classes.push_back(cl);
      }
      out << json{{"algebra", q.algebra->name()}, {"classes", classes}, {"table", q.algebra->to_json()}}.dump(2) << "\n";
    } else {
      print_table(*q.algebra, out);
      print_map(q.map, out);
    }
    return 0;
  }
  if (which == "saturate") {
    std::optional<Element> avoid;
    if (!h.avoid.empty()) avoid = element(*a.total, h.avoid);
    Saturation s = saturate_to_cm(a.total, avoid);
    if (o.json) {
      json j = {{"algebra", s.algebra->name()}, {"steps", s.steps}, {"table", s.algebra->to_json()},
                {"map", to_json(s.map)["map"]}};
      if (avoid) j["avoid"] = {a.total->encode(*avoid), s.algebra->encode(s.map(*avoid))};
      out << j.dump(2) << "\n";
    } else {
      for (const auto& st : s.steps) out << "quotient by " << st << "\n";
      print_table(*s.algebra, out);
      print_map(s.map, out);
    }
    return 0;
  }
  throw UsageError("unknown hom command '" + which + "'");
}

int cmd_prove_check(const std::string& file, const std::string& laws, const Opts& o, std::ostream& out) {
  ProofScript s;
  try {
    s = load_script(file);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  LawSet set;
  try {
    set = law_set(laws.empty() ? s.laws : laws);
  } catch (const LawError& e) {
    throw UsageError(e.what());
  }
  ProofResult r = check_proof(s, set);
  if (o.json) {
    json j = to_json(r, s);
    if (!laws.empty()) j["laws"] = laws;
    out << j.dump(2) << "\n";
  } else if (r.accepted) {
    out << "accept  " << (s.name.empty() ? file : s.name) << "  (" << s.steps.size() << " steps, "
        << (laws.empty() ? s.laws : laws) << ")\n";
  } else {
    out << "reject  step " << r.step;
    if (r.step < s.steps.size()) out << " (" << s.steps[r.step].id << ", " << rule_name(s.steps[r.step].rule) << ")";
    out << "  " << reject_name(r.reason) << ": " << r.detail << "\n";
  }
  return r.accepted ? 0 : 1;
}

std::string file_name(const std::string& script_name) {
  std::string s = script_name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return c == '/' ? '.' : std::tolower(c); });
  return s + ".jsonl";
}

int cmd_prove_emit(const std::string& dir, std::ostream& out) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(dir) / "mutants");
  auto write = [&](const fs::path& p, const std::string& text) {
    std::ofstream f(p);
    if (!f) throw UsageError("cannot write '" + p.string() + "'");
    f << text;
    out << p.string() << "\n";
  };
  for (const ProofScript& s : shipped_scripts()) write(fs::path(dir) / file_name(s.name), to_jsonl(s));
  json manifest = json::array();
  for (const Mutant& m : shipped_mutants()) {
    std::string f = file_name(m.script.name);
    write(fs::path(dir) / "mutants" / f, to_jsonl(m.script));
    manifest.push_back({{"file", f}, {"reason", reject_name(m.expected)}, {"step", m.step}});
  }
  write(fs::path(dir) / "mutants" / "manifest.json", manifest.dump(2) + "\n");
  return 0;
}

int cmd_prove_list(const Opts& o, std::ostream& out) {
  json list = json::array();
  for (const ProofScript& s : shipped_scripts()) {
    std::string goal;
    for (const Equation& h : s.target.hyps) goal += (goal.empty() ? "" : " /\\ ") + render(h);
    goal += (goal.empty() ? "" : " -> ") + render(s.target.concl);
    if (o.json)
      list.push_back({{"name", s.name}, {"laws", s.laws}, {"target", goal}, {"steps", s.steps.size()}});
    else
      out << s.name << "  " << s.laws << "  |-  " << goal << "  (" << s.steps.size() << " steps)\n";
  }
  if (o.json) out << list.dump(2) << "\n";
  return 0;
}

int cmd_models(const Opts& o, std::ostream& out) {
  nlohmann::ordered_json sets = nlohmann::ordered_json::object();
  for (const auto& name : law_set_names()) {
    json members = json::array();
    for (const Law& l : law_set(name)) members.push_back(l.name);
    sets[name] = members;
  }
  if (o.json) {
    out << json{{"algebras", algebra_names()}, {"law_sets", sets}}.dump(2) << "\n";
    return 0;
  }
  out << "algebras:\n";
  for (const auto& n : algebra_names()) out << "  " << n << "\n";
  out << "law sets:\n";
  for (const auto& [name, members] : sets.items()) {
    out << "  " << name << ":";
    for (const auto& m : members) out << " " << m.get<std::string>();
    out << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Experiments with common meadows: terms, models, laws, homomorphisms and proofs.", "meadowlab"};
  app.require_subcommand(1, 1);
  Opts o;
  auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "Print one JSON document on stdout"); };

  std::string term_text;
  auto* parse_cmd = app.add_subcommand("parse", "Parse a term and print it back");
  parse_cmd->add_option("term", term_text, "Term in concrete syntax")->required();
  json_flag(parse_cmd);

  std::string alg;
  std::vector<std::string> binds;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a term in an algebra");
  eval_cmd->add_option("term", term_text, "Term in concrete syntax")->required();
  eval_cmd->add_option("--algebra,-a", alg, "Algebra name (see `models`)")->required();
  eval_cmd->add_option("--bind,-b", binds, "Variable binding name=value");
  json_flag(eval_cmd);

  auto* flatten_cmd = app.add_subcommand("flatten", "Rewrite a term to a flat fracterm");
  flatten_cmd->add_option("term", term_text, "Term in concrete syntax")->required();
  json_flag(flatten_cmd);

  CheckArgs ca;
  std::uint64_t seed_value = 0;
  auto* check_cmd = app.add_subcommand("check", "Check laws in an algebra");
  check_cmd->add_option("--algebra,-a", ca.algebra, "Algebra name")->required();
  auto* law_opt = check_cmd->add_option("--law", ca.law, "Law name, or '+'-joined names");
  auto* suite_opt = check_cmd->add_option("--suite", ca.suite, "Law set, e.g. e-ftc-cm or e-ftc-cm+avl");
  law_opt->excludes(suite_opt);
  check_cmd->add_option("--mode", ca.mode, "exhaustive, fuzz:<trials> or witness");
  auto* seed_opt = check_cmd->add_option("--seed", seed_value, "Fuzz seed (default $MEADOWLAB_SEED or 0xC0FFEE)");
  check_cmd->add_flag("--eager", ca.eager, "Eager semantics: bot reads as undefined");
  check_cmd->add_option("--bind,-b", ca.binds, "Witness valuation name=value (implies witness mode)");
  json_flag(check_cmd);

  std::string scan_law;
  std::int64_t scan_from = 2, scan_to = 2;
  auto* scan_cmd = app.add_subcommand("scan", "Check one law exhaustively in zn:N over a range of N");
  scan_cmd->add_option("--law", scan_law, "Law name")->required();
  scan_cmd->add_option("--from", scan_from, "Smallest N")->required();
  scan_cmd->add_option("--to", scan_to, "Largest N")->required();
  json_flag(scan_cmd);

  HomArgs ha;
  auto* hom_cmd = app.add_subcommand("hom", "Homomorphisms, quotients and saturation");
  hom_cmd->require_subcommand(1, 1);
  auto add_hom = [&](const char* name, const char* help) {
    auto* s = hom_cmd->add_subcommand(name, help);
    json_flag(s);
    return s;
  };
  auto* rho = add_hom("rho", "Map onto the enlargement of the zero part M_0");
  rho->add_option("--algebra,-a", ha.algebra, "Finite algebra")->required();
  auto* phi = add_hom("phi", "The map b -> b + 0*a");
  phi->add_option("--algebra,-a", ha.algebra, "Finite algebra")->required();
  phi->add_option("--at", ha.at, "The element a")->required();
  auto* quot = add_hom("quotient", "Quotient by the level of an element");
  quot->add_option("--algebra,-a", ha.algebra, "Finite algebra")->required();
  quot->add_option("--at", ha.at, "The element a")->required();
  quot->add_flag("--prime", ha.prime, "Collapse the elements above a to bot instead");
  auto* ext = add_hom("extend", "Is x -> x mod M a homomorphism zn:N -> zn:M?");
  ext->add_option("--from", ha.from, "N")->required();
  ext->add_option("--to", ha.to, "M, a divisor of N")->required();
  auto* sat = add_hom("saturate", "Collapse a finite GCM onto a common meadow");
  sat->add_option("--algebra,-a", ha.algebra, "Finite algebra")->required();
  sat->add_option("--avoid", ha.avoid, "Element whose image must stay non-bot");
  auto* split = add_hom("split", "Search for a + b = bot with a, b non-bot");
  split->add_option("--algebra,-a", ha.algebra, "Finite algebra")->required();

  auto* prove_cmd = app.add_subcommand("prove", "Proof scripts");
  prove_cmd->require_subcommand(1, 1);
  std::string script_file, script_laws, emit_dir;
  auto* pcheck = prove_cmd->add_subcommand("check", "Check a proof script");
  pcheck->add_option("file", script_file, "Script in JSON lines")->required();
  pcheck->add_option("--laws", script_laws, "Law set (default: the script's own)");
  json_flag(pcheck);
  auto* plist = prove_cmd->add_subcommand("list", "List the shipped scripts");
  json_flag(plist);
  auto* pemit = prove_cmd->add_subcommand("emit", "Write the shipped scripts and mutants to a directory");
  pemit->add_option("--dir", emit_dir, "Output directory")->required();

  auto* models_cmd = app.add_subcommand("models", "List algebras and law sets");
  json_flag(models_cmd);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    if (std::find(args.begin(), args.end(), "--json") != args.end())
      err << json{{"error", e.what()}, {"kind", "usage"}}.dump() << "\n";
    else
      err << "meadowlab: error: " << e.what() << "\nRun with --help for more information.\n";
    return 2;
  }

  try {
    if (*parse_cmd) return cmd_parse(term_text, o, out);
    if (*eval_cmd) return cmd_eval(term_text, alg, binds, o, out);
    if (*flatten_cmd) return cmd_flatten(term_text, o, out);
    if (*check_cmd) {
      if (ca.law.empty() && ca.suite.empty()) throw UsageError("check needs --law or --suite");
      if (*seed_opt) ca.seed = seed_value;
      return cmd_check(ca, o, out);
    }
    if (*scan_cmd) return cmd_scan(scan_law, scan_from, scan_to, o, out);
    if (*hom_cmd) {
      for (const char* n : {"rho", "phi", "quotient", "extend", "saturate", "split"})
        if (hom_cmd->got_subcommand(n)) return cmd_hom(n, ha, o, out);
    }
    if (*prove_cmd) {
      if (*pcheck) return cmd_prove_check(script_file, script_laws, o, out);
      if (*plist) return cmd_prove_list(o, out);
      if (*pemit) return cmd_prove_emit(emit_dir, out);
    }
    if (*models_cmd) return cmd_models(o, out);
  } catch (const UsageError& e) {
    if (o.json) err << json{{"error", e.what()}, {"kind", "usage"}}.dump() << "\n";
    else err << "meadowlab: error: " << e.what() << "\n";
    return 2;
  } catch (const HomError& e) {
    if (o.json) err << json{{"error", e.what()}, {"kind", "hom"}}.dump() << "\n";
    else err << "meadowlab: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    if (o.json) err << json{{"error", e.what()}, {"kind", "error"}}.dump() << "\n";
    else err << "meadowlab: error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace meadow
