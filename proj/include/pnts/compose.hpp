#pragma once

// Parallel composition of labeled PNTS's and a congruence harness for
// UE-bisimilarity.
//
// Each rule maps component transitions to composite generators:
//   (||L)    x -a-> mu          gives  (x,y) -a-> i(mu x delta_y)
//   (||R)    y -a-> nu          gives  (x,y) -a-> i(delta_x x nu)
//   (||Comm) x -b-> mu, y -~b-> nu  gives  (x,y) -tau-> i(mu x nu)
// where i is the pairing (x, y) -> x * |Y| + y. Further operators can be added
// as new rule functions over the same component data.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pnts/bisim.hpp"
#include "pnts/model.hpp"

namespace pnts {

/// Flattened index of the composite state (x, y).
inline StateId pair_index(StateId x, StateId y, std::size_t right_states) {
  return x * right_states + y;
}

/// Labels are merged by name; complement declarations must not conflict (ModelError
/// otherwise). A "tau" label is added when any complementary pair exists.
/// Composite states are named "x|y"; propositions become "l.p" and "r.p".
Pnts parallel_compose(const Pnts& left, const Pnts& right);

struct CongruenceViolation {
  std::string partner;     // which partner model, e.g. "given" or "random 3"
  bool partner_on_left = false;
  StateId x = 0;           // UE-bisimilar pair in the first model
  StateId x2 = 0;
  StateId y = 0;           // partner state
  std::optional<Experiment> experiment;  // separates the composite states
};

struct CongruenceReport {
  bool holds = true;
  std::size_t partners = 0;
  std::size_t pairs_checked = 0;
  std::vector<CongruenceViolation> violations;
};

/// For all x ~ x' (UE) in m1 and every state y of a partner: (x,y) ~ (x',y) in
/// m1 || partner and (y,x) ~ (y,x') in partner || m1. The partners are m2 and
/// `trials` random models over the labels of m1.
CongruenceReport congruence_check(const Pnts& m1, const Pnts& m2, std::size_t trials = 0,
                                  std::uint64_t seed = 1);

}  // namespace pnts
