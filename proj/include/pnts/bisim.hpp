#pragma once

// Partition-refinement deciders for standard, upper-expectation (convex) and
// upper-probability bisimilarity, together with checkers and distinguishing
// experiments.

#include <optional>
#include <string>
#include <vector>

#include "pnts/model.hpp"

namespace pnts {

enum class BisimKind { standard, ue, up };

BisimKind parse_bisim_kind(const std::string& s);
std::string to_string(BisimKind k);

/// Largest number of blocks for which UP refinement enumerates all unions.
inline constexpr std::size_t up_block_limit = 20;

/// States grouped by the values of their atomic propositions.
Partition initial_partition(const Pnts& m);

/// Successive partitions of the refinement, from initial_partition(m) to the
/// stable one (never more than num_states + 1 entries).
std::vector<Partition> refinement_trace(const Pnts& m, BisimKind kind);

/// Coarsest bisimulation of the requested kind.
Partition bisimilarity(const Pnts& m, BisimKind kind);

/// One step of refinement applied to `p`.
Partition refine_once(const Pnts& m, const Partition& p, BisimKind kind);

/// Observation telling x from y: either a proposition value or, for `label`,
/// a P-invariant experiment f with |ue_{alpha_label(x)}(f) - ue_{alpha_label(y)}(f)| = gap.
struct Experiment {
  std::optional<LabelId> label;
  std::optional<std::string> prop;
  Valuation f;
  Rational gap;
};

struct BisimCheck {
  bool holds = true;
  StateId x = 0;
  StateId y = 0;
  std::optional<Experiment> counterexample;
};

BisimCheck is_ue_bisimulation(const Pnts& m, const Partition& p);
/// Same check for the standard (set equality modulo p) notion.
bool is_standard_bisimulation(const Pnts& m, const Partition& p);
bool is_up_bisimulation(const Pnts& m, const Partition& p);

/// nullopt when x and y are UE-bisimilar. The experiment comes from the
/// refinement round that split them, so it is constant on the final blocks.
std::optional<Experiment> distinguishing_experiment(const Pnts& m, StateId x, StateId y);

/// |ue_{alpha_a(x)}(f) - ue_{alpha_a(y)}(f)|, or the proposition difference.
Rational experiment_gap(const Pnts& m, StateId x, StateId y, const Experiment& e);

/// Accepts `e` as a certificate that x and y are not UE-bisimilar: f must be
/// constant on the blocks of `invariance` and its gap must be positive.
/// Returns the gap on success.
std::optional<Rational> check_certificate(const Pnts& m, StateId x, StateId y, const Experiment& e,
                                          const Partition& invariance);

}  // namespace pnts
