#pragma once

// Total-variation Hausdorff behavioral metric on the UE quotient, and a lower
// estimate of the logical distance through [0,1]-valued Lukasiewicz formulas.

#include <optional>
#include <vector>

#include "pnts/formula.hpp"
#include "pnts/model.hpp"

namespace pnts {

struct MetricMatrix {
  Partition blocks;  // UE-bisimilarity of the input model
  LabelId label = 0;
  std::vector<std::vector<Rational>> d;  // over blocks, symmetric, zero diagonal

  const Rational& between(StateId x, StateId y) const {
    return d[blocks.block_of(x)][blocks.block_of(y)];
  }
};

/// d([x],[y]) = Hausdorff distance of alpha_label([x]) and alpha_label([y]) on
/// the quotient by UE-bisimilarity.
MetricMatrix behavioral_metric(const Pnts& m, LabelId label);

struct MetricEstimate {
  Rational value;                // max |<l>phi(x) - <l>phi(y)| over the family
  std::optional<Formula> best;   // a formula attaining it
  std::size_t evaluated = 0;     // formulas tried
};

/// The family starts with scalar-free Lukasiewicz formulas of depth at most
/// two (deduplicated by value, constants excluded), followed by
/// alpha \/ q*beta and alpha (+) q*beta for atom pairs in order of their
/// larger index and q from a Stern-Brocot prefix of [0,1]. The first `budget`
/// members are tried, so the estimate is nondecreasing in the budget.
MetricEstimate formula_metric_estimate(const Pnts& m, StateId x, StateId y, std::size_t budget,
                                       LabelId label);

/// The first `budget` members of the family above, with their values on m.
std::vector<std::pair<Formula, Valuation>> luk_family(const Pnts& m, std::size_t budget);

}  // namespace pnts
