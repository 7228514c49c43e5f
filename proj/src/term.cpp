#include "meadow/term.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace meadow {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2));
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

}  // namespace

std::string_view op_name(Op op) {
  switch (op) {
    case Op::var: return "var";
    case Op::zero: return "zero";
    case Op::one: return "one";
    case Op::bot: return "bot";
    case Op::neg: return "neg";
    case Op::add: return "add";
    case Op::mul: return "mul";
    case Op::div: return "div";
    case Op::cond: return "cond";
  }
  return "?";
}

std::size_t op_arity(Op op) {
  switch (op) {
    case Op::var:
    case Op::zero:
    case Op::one:
    case Op::bot: return 0;
    case Op::neg: return 1;
    case Op::add:
    case Op::mul:
    case Op::div: return 2;
    case Op::cond: return 3;
  }
  return 0;
}

Term Term::make(Op op, std::vector<Term> args) {
  if (args.size() != op_arity(op))
    throw std::invalid_argument("wrong arity for " + std::string(op_name(op)));
  if (op == Op::var) throw std::invalid_argument("use Term::var for variables");
  std::size_t h = mix(0, static_cast<std::size_t>(op));
  std::uint64_t size = 1;
  for (const Term& a : args) {
    h = mix(h, a.hash());
    size = sat_add(size, a.size());
  }
  return Term(std::make_shared<const Node>(Node{op, {}, std::move(args), size, h}));
}

Term Term::var(std::string name) {
  std::size_t h = mix(std::hash<std::string>{}(name), 0x51);
  return Term(std::make_shared<const Node>(Node{Op::var, std::move(name), {}, 1, h}));
}

Term Term::zero() {
  static const Term t = make(Op::zero, {});
  return t;
}
Term Term::one() {
  static const Term t = make(Op::one, {});
  return t;
}
Term Term::bot() {
  static const Term t = make(Op::bot, {});
  return t;
}
Term Term::neg(Term t) { return make(Op::neg, {std::move(t)}); }
Term Term::add(Term l, Term r) { return make(Op::add, {std::move(l), std::move(r)}); }
Term Term::mul(Term l, Term r) { return make(Op::mul, {std::move(l), std::move(r)}); }
Term Term::div(Term n, Term d) { return make(Op::div, {std::move(n), std::move(d)}); }
Term Term::cond(Term x, Term y, Term z) { return make(Op::cond, {std::move(x), std::move(y), std::move(z)}); }

Op Term::op() const { return node_->op; }
const std::string& Term::name() const { return node_->name; }
std::span<const Term> Term::args() const { return node_->args; }
std::uint64_t Term::size() const { return node_->size; }
std::size_t Term::hash() const { return node_->hash; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.op() != b.op() || a.size() != b.size()) return false;
  if (a.op() == Op::var) return a.name() == b.name();
  auto as = a.args();
  auto bs = b.args();
  return std::equal(as.begin(), as.end(), bs.begin(), bs.end());
}

// ---------------------------------------------------------------------------
// Parsing

ParseError::ParseError(std::size_t offset, std::set<std::string> expected, const std::string& found)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "syntax error at byte " << offset << ": found " << found << ", expected one of {";
        bool first = true;
        for (const auto& e : expected) {
          os << (first ? "" : ", ") << e;
          first = false;
        }
        os << "}";
        return os.str();
      }()),
      offset_(offset),
      expected_(std::move(expected)) {}

Term numeral(std::uint64_t n) {
  if (n == 0) return Term::zero();
  std::vector<Term> powers{Term::one()};
  while ((n >> powers.size()) != 0) powers.push_back(Term::add(powers.back(), powers.back()));
  std::optional<Term> acc;
  for (std::size_t k = powers.size(); k-- > 0;) {
    if (((n >> k) & 1U) == 0) continue;
    acc = acc ? Term::add(powers[k], *acc) : powers[k];
  }
  return *acc;
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

const std::set<std::string>& atom_starts() {
  static const std::set<std::string> s{"numeral", "identifier", "bot", "_|_", "(", "-", "cond"};
  return s;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Term expr() {
    Term t = product();
    while (peek() == '+') {
      ++pos_;
      t = Term::add(std::move(t), product());
    }
    return t;
  }

  ConditionalEquation conditional() {
    std::vector<Condition> parts;
    bool arrow = false;
    for (;;) {
      Term lhs = expr();
      Polarity pol = Polarity::equal;
      skip_ws();
      if (starts_with("!=")) {
        pos_ += 2;
        pol = Polarity::not_equal;
      } else if (peek() == '=') {
        ++pos_;
      } else {
        fail({"=", "!=", "+", "*", "/"});
      }
      Term rhs = expr();
      parts.push_back({Equation{std::move(lhs), std::move(rhs), std::nullopt}, pol});
      skip_ws();
      if (starts_with("/\\")) {
        pos_ += 2;
        continue;
      }
      if (starts_with("->")) {
        pos_ += 2;
        arrow = true;
      }
      break;
    }
    if (arrow) {
      Equation concl = equation();
      return ConditionalEquation{std::move(parts), std::move(concl), std::nullopt};
    }
    if (parts.size() != 1 || parts.front().polarity != Polarity::equal) fail({"->"});
    return ConditionalEquation{{}, std::move(parts.front().eq), std::nullopt};
  }

  Equation equation() {
    Term lhs = expr();
    skip_ws();
    if (peek() != '=') fail({"=", "+", "*", "/"});
    ++pos_;
    Term rhs = expr();
    return Equation{std::move(lhs), std::move(rhs), std::nullopt};
  }

  void expect_end(std::set<std::string> expected) {
    skip_ws();
    if (pos_ != text_.size()) fail(std::move(expected));
  }

 private:
  Term product() {
    Term t = quotient();
    while (peek() == '*') {
      ++pos_;
      t = Term::mul(std::move(t), quotient());
    }
    return t;
  }

  Term quotient() {
    Term t = unary();
    while (peek() == '/' && !starts_with("/\\")) {
      ++pos_;
      t = Term::div(std::move(t), unary());
    }
    return t;
  }

  Term unary() {
    if (peek() == '-' && !starts_with("->")) {
      ++pos_;
      return Term::neg(unary());
    }
    return atom();
  }

  Term atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Term t = expr();
      if (peek() != ')') fail({")", "+", "*", "/"});
      ++pos_;
      return t;
    }
    if (starts_with("_|_")) {
      pos_ += 3;
      return Term::bot();
    }
    if (c >= '0' && c <= '9') {
      std::size_t start = pos_;
      std::uint64_t n = 0;
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
        n = n * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
        if (n > max_numeral) {
          pos_ = start;
          fail({"numeral <= " + std::to_string(max_numeral)});
        }
        ++pos_;
      }
      return numeral(n);
    }
    if (is_ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      std::string id(text_.substr(start, pos_ - start));
      if (id == "bot") return Term::bot();
      if (id == "cond") {
        if (peek() != '(') fail({"("});
        ++pos_;
        Term x = expr();
        if (peek() != ';') fail({";"});
        ++pos_;
        Term y = expr();
        if (peek() != ';') fail({";"});
        ++pos_;
        Term z = expr();
        if (peek() != ')') fail({")"});
        ++pos_;
        return Term::cond(std::move(x), std::move(y), std::move(z));
      }
      return Term::var(std::move(id));
    }
    fail(atom_starts());
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool starts_with(std::string_view s) {
    skip_ws();
    return text_.substr(pos_).starts_with(s);
  }

  [[noreturn]] void fail(std::set<std::string> expected) {
    skip_ws();
    std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
    throw ParseError(pos_, std::move(expected), found);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse(std::string_view text) {
  Parser p(text);
  Term t = p.expr();
  p.expect_end({"+", "*", "/", "end of input"});
  return t;
}

Equation parse_equation(std::string_view text) {
  Parser p(text);
  Equation e = p.equation();
  p.expect_end({"+", "*", "/", "end of input"});
  return e;
}

ConditionalEquation parse_conditional(std::string_view text) {
  Parser p(text);
  ConditionalEquation ce = p.conditional();
  p.expect_end({"/\\", "->", "end of input"});
  return ce;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

enum Prec { sum = 1, product = 2, quotient = 3, prefix = 4, atomic = 5 };

Prec prec_of(Op op) {
  switch (op) {
    case Op::add: return sum;
    case Op::mul: return product;
    case Op::div: return quotient;
    case Op::neg: return prefix;
    default: return atomic;
  }
}

void render_into(std::string& out, const Term& t, int min_prec) {
  const Prec p = prec_of(t.op());
  const bool parens = p < min_prec;
  if (parens) out += '(';
  switch (t.op()) {
    case Op::var: out += t.name(); break;
    case Op::zero: out += '0'; break;
    case Op::one: out += '1'; break;
    case Op::bot: out += "bot"; break;
    case Op::neg:
      out += '-';
      render_into(out, t.arg(0), atomic);
      break;
    case Op::add:
      render_into(out, t.arg(0), sum);
      out += " + ";
      render_into(out, t.arg(1), product);
      break;
    case Op::mul:
      render_into(out, t.arg(0), product);
      out += '*';
      render_into(out, t.arg(1), quotient);
      break;
    case Op::div:
      render_into(out, t.arg(0), quotient);
      out += '/';
      render_into(out, t.arg(1), prefix);
      break;
    case Op::cond:
      out += "cond(";
      render_into(out, t.arg(0), sum);
      out += "; ";
      render_into(out, t.arg(1), sum);
      out += "; ";
      render_into(out, t.arg(2), sum);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string render(const Term& t) {
  std::string out;
  render_into(out, t, sum);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << render(t); }

// ---------------------------------------------------------------------------
// Structural operations

Term substitute(const Term& t, const Substitution& s) {
  std::unordered_map<const void*, Term> memo;
  auto go = [&](auto& self, const Term& u) -> Term {
    if (u.op() == Op::var) {
      auto it = s.find(u.name());
      return it == s.end() ? u : it->second;
    }
    if (u.args().empty()) return u;
    if (auto it = memo.find(u.id()); it != memo.end()) return it->second;
    std::vector<Term> args;
    args.reserve(u.args().size());
    bool changed = false;
    for (const Term& a : u.args()) {
      args.push_back(self(self, a));
      changed = changed || args.back().id() != a.id();
    }
    Term r = changed ? Term::make(u.op(), std::move(args)) : u;
    memo.emplace(u.id(), r);
    return r;
  };
  return go(go, t);
}

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  std::set<const void*> seen;
  auto go = [&](auto& self, const Term& u) -> void {
    if (!seen.insert(u.id()).second) return;
    if (u.op() == Op::var) out.insert(u.name());
    for (const Term& a : u.args()) self(self, a);
  };
  go(go, t);
  return out;
}

bool is_free_of(const Term& t, std::initializer_list<Op> ops) {
  std::set<const void*> seen;
  auto go = [&](auto& self, const Term& u) -> bool {
    if (!seen.insert(u.id()).second) return true;
    if (std::find(ops.begin(), ops.end(), u.op()) != ops.end()) return false;
    for (const Term& a : u.args())
      if (!self(self, a)) return false;
    return true;
  };
  return go(go, t);
}

bool is_flat_fracterm(const Term& t) {
  if (t.op() != Op::div) return false;
  return is_free_of(t.arg(0), {Op::div, Op::bot, Op::cond}) &&
         is_free_of(t.arg(1), {Op::div, Op::bot, Op::cond});
}

std::optional<Term> subterm_at(const Term& t, std::span<const std::size_t> path) {
  const Term* cur = &t;
  for (std::size_t i : path) {
    if (i >= cur->args().size()) return std::nullopt;
    cur = &cur->arg(i);
  }
  return *cur;
}

std::optional<Term> replace_at(const Term& t, std::span<const std::size_t> path, const Term& with) {
  if (path.empty()) return with;
  if (path.front() >= t.args().size()) return std::nullopt;
  auto inner = replace_at(t.arg(path.front()), path.subspan(1), with);
  if (!inner) return std::nullopt;
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[path.front()] = std::move(*inner);
  return Term::make(t.op(), std::move(args));
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const Term& t) {
  nlohmann::json j;
  j["op"] = std::string(op_name(t.op()));
  if (t.op() == Op::var) {
    j["name"] = t.name();
  } else if (!t.args().empty()) {
    nlohmann::json args = nlohmann::json::array();
    for (const Term& a : t.args()) args.push_back(to_json(a));
    j["args"] = std::move(args);
  }
  return j;
}

Term term_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse(j.get<std::string>());
  if (!j.is_object() || !j.contains("op") || !j["op"].is_string())
    throw std::invalid_argument("term JSON must be a string or an object with an \"op\" field");
  const std::string op = j["op"].get<std::string>();
  if (op == "var") {
    if (!j.contains("name") || !j["name"].is_string()) throw std::invalid_argument("var term needs a string \"name\"");
    std::string name = j["name"].get<std::string>();
    if (name.empty() || !is_ident_start(name.front()) ||
        !std::all_of(name.begin(), name.end(), is_ident_char) || name == "bot" || name == "cond")
      throw std::invalid_argument("invalid variable name '" + name + "'");
    return Term::var(std::move(name));
  }
  static const std::map<std::string, Op> ops{{"zero", Op::zero}, {"one", Op::one}, {"bot", Op::bot},
                                             {"neg", Op::neg},   {"add", Op::add}, {"mul", Op::mul},
                                             {"div", Op::div},   {"cond", Op::cond}};
  auto it = ops.find(op);
  if (it == ops.end()) throw std::invalid_argument("unknown term op '" + op + "'");
  std::vector<Term> args;
  if (j.contains("args")) {
    if (!j["args"].is_array()) throw std::invalid_argument("\"args\" must be an array");
    for (const auto& a : j["args"]) args.push_back(term_from_json(a));
  }
  if (args.size() != op_arity(it->second))
    throw std::invalid_argument("op '" + op + "' expects " + std::to_string(op_arity(it->second)) + " args");
  return Term::make(it->second, std::move(args));
}

// ---------------------------------------------------------------------------
// Equations

bool ConditionalEquation::has_negated_condition() const {
  return std::any_of(conditions.begin(), conditions.end(),
                     [](const Condition& c) { return c.polarity == Polarity::not_equal; });
}

std::string render(const Equation& e) { return render(e.lhs) + " = " + render(e.rhs); }

std::string render(const ConditionalEquation& ce) {
  std::string out;
  for (std::size_t i = 0; i < ce.conditions.size(); ++i) {
    const auto& c = ce.conditions[i];
    if (i > 0) out += " /\\ ";
    out += render(c.eq.lhs) + (c.polarity == Polarity::equal ? " = " : " != ") + render(c.eq.rhs);
  }
  if (!ce.conditions.empty()) out += " -> ";
  return out + render(ce.conclusion);
}

std::set<std::string> free_vars(const Equation& e) {
  auto vs = free_vars(e.lhs);
  vs.merge(free_vars(e.rhs));
  return vs;
}

std::set<std::string> free_vars(const ConditionalEquation& ce) {
  auto vs = free_vars(ce.conclusion);
  for (const auto& c : ce.conditions) vs.merge(free_vars(c.eq));
  return vs;
}

Equation substitute(const Equation& e, const Substitution& s) {
  return Equation{substitute(e.lhs, s), substitute(e.rhs, s), e.name};
}

nlohmann::json to_json(const Equation& e) { return {{"lhs", to_json(e.lhs)}, {"rhs", to_json(e.rhs)}}; }

Equation equation_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_equation(j.get<std::string>());
  if (!j.is_object() || !j.contains("lhs") || !j.contains("rhs"))
    throw std::invalid_argument("equation JSON needs \"lhs\" and \"rhs\"");
  return Equation{term_from_json(j["lhs"]), term_from_json(j["rhs"]), std::nullopt};
}

}  // namespace meadow
