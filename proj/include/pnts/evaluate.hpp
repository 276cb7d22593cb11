#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pnts/formula.hpp"
#include "pnts/model.hpp"

namespace pnts {

/// Interpretation of free fixpoint variables; values must lie in [0,1].
using Environment = std::map<std::string, Valuation>;

struct EvalOptions {
  /// When set, the formula must be admissible for this logic and, for the
  /// [0,1]-valued logics, every subformula value is checked to lie in [0,1].
  std::optional<Logic> logic;
  /// Sup-norm tolerance for float fixpoint iteration.
  double epsilon = 1e-9;
  std::size_t max_iterations = 1'000'000;
  /// Iterate fixpoints in exact arithmetic until two iterates coincide.
  bool exact_fixpoints = false;
  /// Invoked after each fixpoint iterate (float mode) with the binder,
  /// whether it is a least fixpoint, and the new iterate.
  std::function<void(const std::string&, bool, std::span<const double>)> on_iterate;
};

struct EvalResult {
  bool exact = true;
  std::optional<Valuation> values;   // set when exact
  std::vector<double> approx;        // always set
  std::size_t iterations = 0;        // total fixpoint iterations
  double residual = 0.0;             // largest final sup-norm step over all fixpoints

  double operator[](StateId x) const { return approx[x]; }
};

/// Semantics of `f` on `m`. Fixpoint-free formulas (and fixpoints under
/// exact_fixpoints) are evaluated exactly; other fixpoints by Knaster-Tarski
/// iteration from the bottom (mu) or top (nu) valuation.
EvalResult evaluate(const Pnts& m, const Formula& f, const Environment& env = {},
                    const EvalOptions& options = {});

/// Exact semantics of a fixpoint-free formula.
Valuation evaluate_exact(const Pnts& m, const Formula& f, const Environment& env = {});

/// (diamond_a f)(x) = max over alpha_a(x) of E_mu(f), 0 when alpha_a(x) is empty.
Valuation diamond(const Pnts& m, LabelId a, const Valuation& f);

}  // namespace pnts
