#pragma once

// Formulas of the Riesz modal logic R, the [0,1]-valued logics qL, qL(-),
// qL(.), Lukasiewicz, and their fixed-point extensions.
//
// ASCII grammar, loosest binding first:
//   mu v. phi | nu v. phi                     binder, body extends right
//   phi \/ psi                                join
//   phi /\ psi                                meet
//   phi + psi | phi (+) psi                   sum, truncated sum
//   phi . psi | phi (-) q                     product, truncated subtraction
//   ~phi | <a>phi | <>phi | q*phi             negation, diamond, scaling
//   1 | 0 | q | prop(name) | v | (phi)        a bare rational q means q*1

#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "pnts/rational.hpp"

namespace pnts {

enum class Op {
  one,
  zero,
  scale,    // q * a
  plus,     // a + b
  join,     // a \/ b
  meet,     // a /\ b
  diamond,  // <name> a; empty name is the sole label
  neg,      // 1 - a
  prod,     // a * b
  minus,    // max(0, a - q)
  oplus,    // min(1, a + b)
  var,
  mu,
  nu,
  prop,
};

struct FormulaNode;

/// Immutable, cheaply copyable formula handle. Subformulas may be shared.
class Formula {
public:
  Formula() = default;

  static Formula one();
  static Formula zero();
  static Formula constant(const Rational& q);
  static Formula scale(const Rational& q, Formula a);
  static Formula plus(Formula a, Formula b);
  static Formula join(Formula a, Formula b);
  static Formula meet(Formula a, Formula b);
  static Formula pos_part(Formula a) { return join(std::move(a), zero()); }
  static Formula diamond(std::string label, Formula a);
  static Formula neg(Formula a);
  static Formula prod(Formula a, Formula b);
  static Formula minus(Formula a, const Rational& q);
  static Formula oplus(Formula a, Formula b);
  static Formula var(std::string name);
  static Formula mu(std::string var, Formula body);
  static Formula nu(std::string var, Formula body);
  static Formula prop(std::string name);

  bool valid() const { return node_ != nullptr; }
  const FormulaNode& node() const { return *node_; }
  const FormulaNode* get() const { return node_.get(); }
  Op op() const;

  friend bool operator==(const Formula& a, const Formula& b);

private:
  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
  Op op;
  Rational q;        // scale, minus
  std::string name;  // diamond label, var, binder var, prop
  Formula a;
  Formula b;
};

enum class LogicBase { r, ql, ql_minus, ql_prod, luk, unit };

struct Logic {
  LogicBase base = LogicBase::r;
  bool fixpoints = false;

  bool unit_valued() const { return base != LogicBase::r; }
  friend bool operator==(const Logic&, const Logic&) = default;
};

/// r, ql, ql-minus, ql-prod, luk, mu (every [0,1] connective with fixpoints),
/// and ql-mu, ql-minus-mu, ql-prod-mu, luk-mu.
Logic parse_logic(std::string_view name);
std::string to_string(const Logic& logic);

/// Throws LogicError when `f` uses a connective or scalar outside `logic`, or a
/// fixpoint body is not positive in its variable.
void check_admissible(const Formula& f, const Logic& logic);
bool is_admissible(const Formula& f, const Logic& logic);

/// Every bound variable occurs under an even number of negations.
bool check_positivity(const Formula& f);

std::set<std::string> free_variables(const Formula& f);
bool has_fixpoints(const Formula& f);
std::size_t modal_depth(const Formula& f);
std::size_t formula_size(const Formula& f);

/// Parses `text`; throws ParseError (with position) or LogicError.
Formula parse_formula(std::string_view text, const Logic& logic = {});
/// Fully parenthesized rendering that parse_formula reads back.
std::string to_string(const Formula& f);

}  // namespace pnts
