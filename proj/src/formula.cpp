#include "pnts/formula.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <vector>

#include "pnts/error.hpp"

namespace pnts {

Op Formula::op() const { return node_->op; }

Formula Formula::one() {
  static const Formula f(std::make_shared<const FormulaNode>(FormulaNode{Op::one, {}, {}, {}, {}}));
  return f;
}
Formula Formula::zero() {
  static const Formula f(std::make_shared<const FormulaNode>(FormulaNode{Op::zero, {}, {}, {}, {}}));
  return f;
}
Formula Formula::constant(const Rational& q) {
  if (q == Rational(1)) return one();
  if (q.sign() == 0) return zero();
  return scale(q, one());
}
Formula Formula::scale(const Rational& q, Formula a) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{Op::scale, q, {}, std::move(a), {}}));
}
Formula Formula::plus(Formula a, Formula b) {
  return Formula(
      std::make_shared<const FormulaNode>(FormulaNode{Op::plus, {}, {}, std::move(a), std::move(b)}));
}
Formula Formula::join(Formula a, Formula b) {
  return Formula(
      std::make_shared<const FormulaNode>(FormulaNode{Op::join, {}, {}, std::move(a), std::move(b)}));
}
Formula Formula::meet(Formula a, Formula b) {
  return Formula(
      std::make_shared<const FormulaNode>(FormulaNode{Op::meet, {}, {}, std::move(a), std::move(b)}));
}
Formula Formula::diamond(std::string label, Formula a) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{Op::diamond, {}, std::move(label), std::move(a), {}}));
}
Formula Formula::neg(Formula a) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{Op::neg, {}, {}, std::move(a), {}}));
}
Formula Formula::prod(Formula a, Formula b) {
  return Formula(
      std::make_shared<const FormulaNode>(FormulaNode{Op::prod, {}, {}, std::move(a), std::move(b)}));
}
Formula Formula::minus(Formula a, const Rational& q) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{Op::minus, q, {}, std::move(a), {}}));
}
Formula Formula::oplus(Formula a, Formula b) {
  return Formula(
      std::make_shared<const FormulaNode>(FormulaNode{Op::oplus, {}, {}, std::move(a), std::move(b)}));
}
Formula Formula::var(std::string name) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{Op::var, {}, std::move(name), {}, {}}));
}
Formula Formula::mu(std::string var, Formula body) {
  return Formula(
      std::make_shared<const FormulaNode>(FormulaNode{Op::mu, {}, std::move(var), std::move(body), {}}));
}
Formula Formula::nu(std::string var, Formula body) {
  return Formula(
      std::make_shared<const FormulaNode>(FormulaNode{Op::nu, {}, std::move(var), std::move(body), {}}));
}
Formula Formula::prop(std::string name) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{Op::prop, {}, std::move(name), {}, {}}));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (!a.valid() || !b.valid()) return false;
  const auto& x = a.node();
  const auto& y = b.node();
  return x.op == y.op && x.q == y.q && x.name == y.name && x.a == y.a && x.b == y.b;
}

// ----------------------------------------------------------------------- logic

Logic parse_logic(std::string_view name) {
  static const std::map<std::string_view, Logic> table{
      {"r", {LogicBase::r, false}},
      {"ql", {LogicBase::ql, false}},
      {"ql-minus", {LogicBase::ql_minus, false}},
      {"ql-prod", {LogicBase::ql_prod, false}},
      {"luk", {LogicBase::luk, false}},
      {"mu", {LogicBase::unit, true}},
      {"ql-mu", {LogicBase::ql, true}},
      {"ql-minus-mu", {LogicBase::ql_minus, true}},
      {"ql-prod-mu", {LogicBase::ql_prod, true}},
      {"luk-mu", {LogicBase::luk, true}},
  };
  auto it = table.find(name);
  if (it == table.end()) throw ParseError("unknown logic '" + std::string(name) + "'", 0);
  return it->second;
}

std::string to_string(const Logic& logic) {
  std::string base;
  switch (logic.base) {
    case LogicBase::r: return "r";
    case LogicBase::unit: return logic.fixpoints ? "mu" : "unit";
    case LogicBase::ql: base = "ql"; break;
    case LogicBase::ql_minus: base = "ql-minus"; break;
    case LogicBase::ql_prod: base = "ql-prod"; break;
    case LogicBase::luk: base = "luk"; break;
  }
  return logic.fixpoints ? base + "-mu" : base;
}

namespace {

bool in_unit(const Rational& q) { return q.sign() >= 0 && q <= Rational(1); }

std::string op_name(Op op) {
  switch (op) {
    case Op::one: return "1";
    case Op::zero: return "0";
    case Op::scale: return "scaling";
    case Op::plus: return "+";
    case Op::join: return "\\/";
    case Op::meet: return "/\\";
    case Op::diamond: return "diamond";
    case Op::neg: return "~";
    case Op::prod: return ".";
    case Op::minus: return "(-)";
    case Op::oplus: return "(+)";
    case Op::var: return "variable";
    case Op::mu: return "mu";
    case Op::nu: return "nu";
    case Op::prop: return "prop";
  }
  return "?";
}

void admissible(const Formula& f, const Logic& logic,
                std::unordered_map<const FormulaNode*, bool>& seen) {
  if (!seen.emplace(f.get(), true).second) return;
  const auto& n = f.node();
  const bool unit = logic.unit_valued();
  const auto reject = [&](const std::string& why) {
    throw LogicError("'" + op_name(n.op) + "' is not allowed in logic " + to_string(logic) + why);
  };
  switch (n.op) {
    case Op::one:
    case Op::zero:
    case Op::join:
    case Op::meet:
    case Op::diamond:
    case Op::prop: break;
    case Op::scale:
      if (unit && !in_unit(n.q)) reject(" (scalar " + n.q.str() + " outside [0,1])");
      break;
    case Op::plus:
      if (unit) reject("");
      break;
    case Op::neg:
      if (!unit) reject(" (use (-1)*phi for additive inverse)");
      break;
    case Op::prod:
      if (logic.base != LogicBase::ql_prod && logic.base != LogicBase::unit) reject("");
      break;
    case Op::minus:
      if (logic.base != LogicBase::ql_minus && logic.base != LogicBase::luk &&
          logic.base != LogicBase::unit)
        reject("");
      if (!in_unit(n.q)) reject(" (constant " + n.q.str() + " outside [0,1])");
      break;
    case Op::oplus:
      if (logic.base != LogicBase::luk && logic.base != LogicBase::unit) reject("");
      break;
    case Op::var:
    case Op::mu:
    case Op::nu:
      if (!logic.fixpoints) reject(" (no fixpoints)");
      break;
  }
  if (n.a.valid()) admissible(n.a, logic, seen);
  if (n.b.valid()) admissible(n.b, logic, seen);
}

bool positive(const Formula& f, int negations, std::vector<std::pair<std::string, int>>& bound) {
  const auto& n = f.node();
  switch (n.op) {
    case Op::var:
      for (auto it = bound.rbegin(); it != bound.rend(); ++it)
        if (it->first == n.name) return (negations - it->second) % 2 == 0;
      return true;
    case Op::neg: return positive(n.a, negations + 1, bound);
    case Op::mu:
    case Op::nu: {
      bound.emplace_back(n.name, negations);
      const bool ok = positive(n.a, negations, bound);
      bound.pop_back();
      return ok;
    }
    default:
      if (n.a.valid() && !positive(n.a, negations, bound)) return false;
      if (n.b.valid() && !positive(n.b, negations, bound)) return false;
      return true;
  }
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  const auto& n = f.node();
  if (n.op == Op::var) {
    if (std::find(bound.begin(), bound.end(), n.name) == bound.end()) out.insert(n.name);
    return;
  }
  if (n.op == Op::mu || n.op == Op::nu) {
    bound.push_back(n.name);
    collect_free(n.a, bound, out);
    bound.pop_back();
    return;
  }
  if (n.a.valid()) collect_free(n.a, bound, out);
  if (n.b.valid()) collect_free(n.b, bound, out);
}

template <class Combine>
std::size_t fold(const Formula& f, std::unordered_map<const FormulaNode*, std::size_t>& memo,
                 Combine combine) {
  if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
  const auto& n = f.node();
  const std::size_t a = n.a.valid() ? fold(n.a, memo, combine) : 0;
  const std::size_t b = n.b.valid() ? fold(n.b, memo, combine) : 0;
  const std::size_t v = combine(n, a, b);
  memo.emplace(f.get(), v);
  return v;
}

std::string scalar(const Rational& q) {
  if (q.sign() < 0) return "(" + q.str() + ")";
  return q.str();
}

void print(const Formula& f, std::string& out) {
  const auto& n = f.node();
  const auto binary = [&](const char* sym) {
    out += '(';
    print(n.a, out);
    out += sym;
    print(n.b, out);
    out += ')';
  };
  switch (n.op) {
    case Op::one: out += '1'; break;
    case Op::zero: out += '0'; break;
    case Op::scale:
      out += scalar(n.q);
      out += '*';
      print(n.a, out);
      break;
    case Op::plus: binary(" + "); break;
    case Op::join: binary(" \\/ "); break;
    case Op::meet: binary(" /\\ "); break;
    case Op::prod: binary(" . "); break;
    case Op::oplus: binary(" (+) "); break;
    case Op::minus:
      out += '(';
      print(n.a, out);
      out += " (-) ";
      out += scalar(n.q);
      out += ')';
      break;
    case Op::diamond:
      out += '<';
      out += n.name;
      out += '>';
      print(n.a, out);
      break;
    case Op::neg:
      out += '~';
      print(n.a, out);
      break;
    case Op::var: out += n.name; break;
    case Op::mu:
    case Op::nu:
      out += n.op == Op::mu ? "(mu " : "(nu ";
      out += n.name;
      out += ". ";
      print(n.a, out);
      out += ')';
      break;
    case Op::prop:
      out += "prop(";
      out += n.name;
      out += ')';
      break;
  }
}

}  // namespace

void check_admissible(const Formula& f, const Logic& logic) {
  std::unordered_map<const FormulaNode*, bool> seen;
  admissible(f, logic, seen);
  if (logic.fixpoints && !check_positivity(f))
    throw LogicError("fixpoint variable occurs under an odd number of negations");
}

bool is_admissible(const Formula& f, const Logic& logic) {
  try {
    check_admissible(f, logic);
    return true;
  } catch (const LogicError&) {
    return false;
  }
}

bool check_positivity(const Formula& f) {
  std::vector<std::pair<std::string, int>> bound;
  return positive(f, 0, bound);
}

std::set<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

bool has_fixpoints(const Formula& f) {
  std::unordered_map<const FormulaNode*, std::size_t> memo;
  return fold(f, memo, [](const FormulaNode& n, std::size_t a, std::size_t b) -> std::size_t {
           return (n.op == Op::mu || n.op == Op::nu || n.op == Op::var || a || b) ? 1 : 0;
         }) != 0;
}

std::size_t modal_depth(const Formula& f) {
  std::unordered_map<const FormulaNode*, std::size_t> memo;
  return fold(f, memo, [](const FormulaNode& n, std::size_t a, std::size_t b) {
    return std::max(a, b) + (n.op == Op::diamond ? 1 : 0);
  });
}

std::size_t formula_size(const Formula& f) {
  std::unordered_map<const FormulaNode*, std::size_t> memo;
  return fold(f, memo, [](const FormulaNode&, std::size_t a, std::size_t b) {
    const std::size_t cap = std::size_t{1} << 62;
    return std::min(cap, 1 + a + b);
  });
}

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

}  // namespace pnts
