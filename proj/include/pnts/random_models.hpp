#pragma once

// Random models and generator sets for property tests and the congruence
// harness.

#include "pnts/model.hpp"
#include "pnts/random.hpp"

namespace pnts {

struct RandomModelParams {
  std::size_t min_states = 1;
  std::size_t max_states = 4;
  std::size_t labels = 1;
  std::size_t max_generators = 3;
  long max_denominator = 6;
  /// Chance (percent) that a state reuses an earlier state's generator set,
  /// optionally adding a convex combination. Produces nontrivial merges.
  int reuse_percent = 35;
  /// Chance (percent) that a (state, label) pair has no transitions.
  int empty_percent = 15;
  /// Adds one [0,1]-valued proposition "p" with values in {0, 1/2, 1}.
  bool proposition = false;
  /// Declare labels 0 and 1 complementary (needs labels >= 2).
  bool complementary_pair = false;
};

Distribution random_distribution(SplitMix64& rng, std::size_t n, long max_den);
GeneratorSet random_generator_set(SplitMix64& rng, std::size_t n, std::size_t max_generators,
                                  long max_den);
/// Convex combination of two generators of `a` (a itself when |a| < 2).
Distribution random_mixture(SplitMix64& rng, const GeneratorSet& a, long max_den);
Pnts random_model(SplitMix64& rng, const RandomModelParams& params = {});
/// Random NTS as successor lists.
std::vector<std::vector<StateId>> random_nts(SplitMix64& rng, std::size_t n);

}  // namespace pnts
