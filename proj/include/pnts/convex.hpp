#pragma once

// Convex-geometry queries on finite generator sets, each reduced to an exact
// LP: hull membership with separating experiments, hull equality, upper
// expectations and (directed) L1 / Hausdorff distances.
//
// A GeneratorSet stands for its convex hull H(A). For finite A the hull is
// already closed, so no closure step is needed anywhere below.

#include <optional>
#include <vector>

#include "pnts/model.hpp"

namespace pnts {

struct Membership {
  bool inside = false;
  std::vector<Rational> weights;  // inside: convex weights over the generators
  Valuation separator;            // outside: f with max|f| = 1
  Rational gap;                   // outside: E_mu(f) - max_gen E_gen(f) > 0
};

Membership hull_membership(const Distribution& mu, const GeneratorSet& a);

bool hull_equal(const GeneratorSet& a, const GeneratorSet& b);

/// An experiment telling two hulls apart: ue_A(f) - ue_B(f) = gap > 0 when
/// `a_larger`, ue_B(f) - ue_A(f) = gap otherwise.
struct HullSeparation {
  Valuation f;
  Rational gap;
  bool a_larger = true;
};
std::optional<HullSeparation> separate_hulls(const GeneratorSet& a, const GeneratorSet& b);

/// max over generators of E_gen(f); the empty set maps every f to 0.
Rational upper_expectation(const GeneratorSet& a, const Valuation& f);
double upper_expectation(const GeneratorSet& a, std::span<const double> f);

/// Upper probability of the event `event` (indicator over states).
Rational upper_probability(const GeneratorSet& a, const std::vector<bool>& event);

/// min over nu in H(B) of sum_x |mu(x) - nu(x)|. Throws ModelError for empty B.
Rational l1_distance_to_hull(const Distribution& mu, const GeneratorSet& b);

/// Total-variation (L1) Hausdorff distance between H(A) and H(B). Both empty
/// gives 0; exactly one empty gives 2, the L1 diameter of the simplex.
Rational hausdorff_distance(const GeneratorSet& a, const GeneratorSet& b);
Rational directed_distance(const GeneratorSet& a, const GeneratorSet& b);

inline const Rational empty_set_distance{2};

}  // namespace pnts
