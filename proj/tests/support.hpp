#pragma once

// Shared fixtures and independent oracles for the test suites.

#include <functional>
#include <string>
#include <vector>

#include "pnts/formula.hpp"
#include "pnts/model.hpp"
#include "pnts/random.hpp"

namespace pnts::testing {

Rational q(const char* text);
Distribution dist(std::initializer_list<const char*> entries);

/// x, y over leaves x1 (a-self-loop) and x2 (terminal).
/// alpha(x) = {mu1, mu2}, alpha(y) = {mu1, mu2, mu3 = (mu1 + mu2) / 2}.
Pnts fig1();
/// x, y over leaves x1 (a-self-loop), x2 (b-self-loop), x3 (terminal).
/// alpha_a(x) = {mu1, mu2}, alpha_a(y) = {mu1, mu2, mu3}.
Pnts fig2();

/// Every set partition of {0..n-1} (restricted growth strings).
std::vector<Partition> all_partitions(std::size_t n);

/// Coarsest partition satisfying `is_bisim`, found by exhaustive search.
/// Also checks that every other accepted partition refines it.
Partition brute_force_coarsest(std::size_t n, const std::function<bool(const Partition&)>& is_bisim,
                               bool* unique = nullptr);

/// Milner-Park bisimilarity of a plain NTS by exhaustive search.
Partition milner_park_bisimilarity(const std::vector<std::vector<StateId>>& successors);

struct FormulaGenParams {
  std::size_t max_depth = 4;
  std::vector<std::string> labels{"a"};
  std::vector<std::string> props;
};

/// Random formula admissible in `logic`; fixpoint logics get mu/nu binders
/// whose variables occur positively.
Formula random_formula(SplitMix64& rng, const Logic& logic, const FormulaGenParams& params);

/// The logics exercised by the soundness suites.
std::vector<Logic> all_logics();

}  // namespace pnts::testing
