#pragma once

// Exact two-phase simplex over the rationals with Bland's anti-cycling rule.

#include <optional>
#include <span>
#include <vector>

#include "pnts/rational.hpp"

namespace pnts::lp {

enum class Sense { maximize, minimize };
enum class Relation { less_equal, equal, greater_equal };
enum class Status { optimal, infeasible, unbounded };

struct Constraint {
  std::vector<Rational> coeffs;
  Relation relation = Relation::less_equal;
  Rational rhs;
};

/// Bounds of one variable; nullopt means unbounded on that side.
struct Bounds {
  std::optional<Rational> lower = Rational(0);
  std::optional<Rational> upper;
};

struct Instance {
  Sense sense = Sense::maximize;
  std::vector<Rational> objective;  // one coefficient per variable
  std::vector<Constraint> constraints;
  std::vector<Bounds> bounds;       // empty means x >= 0 for every variable

  explicit Instance(std::size_t num_vars = 0, Sense s = Sense::maximize)
      : sense(s), objective(num_vars) {}

  std::size_t num_vars() const { return objective.size(); }
  void add(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
    constraints.push_back(Constraint{std::move(coeffs), rel, std::move(rhs)});
  }
  void set_bounds(std::size_t var, std::optional<Rational> lower, std::optional<Rational> upper);
};

struct Result {
  Status status = Status::infeasible;
  Rational value;          // optimal objective value (meaningful when optimal)
  std::vector<Rational> x; // feasible optimal witness (when optimal)
};

/// Solves `p` exactly. Throws DimensionError on inconsistent dimensions.
Result solve(const Instance& p);

/// True when `x` satisfies every constraint and bound of `p` exactly.
bool is_feasible(const Instance& p, std::span<const Rational> x);
Rational objective_value(const Instance& p, std::span<const Rational> x);

}  // namespace pnts::lp
