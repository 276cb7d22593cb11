#pragma once

// Monte Carlo testing: a scheduler resolves the nondeterministic choice, a
// successor is drawn from the chosen distribution, and the experiment's value
// there is recorded.
//
// Randomness comes from SplitMix64. Sampling is by inverse CDF against exact
// thresholds ceil(F_i * 2^64), so a 64-bit draw u selects the first i with
// u < threshold_i without rounding error.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pnts/model.hpp"
#include "pnts/random.hpp"

namespace pnts {

/// Either a fixed generator index or convex weights over the generators.
using SchedulerChoice = std::variant<std::size_t, std::vector<Rational>>;

class Scheduler {
public:
  /// Every (state, label) picks generator `index` unless overridden.
  static Scheduler deterministic(std::size_t index = 0);
  static Scheduler weighted(std::vector<Rational> weights);

  void set(StateId x, LabelId a, SchedulerChoice choice);
  const SchedulerChoice& choice(StateId x, LabelId a) const;

private:
  SchedulerChoice fallback_ = std::size_t{0};
  std::map<std::pair<StateId, LabelId>, SchedulerChoice> choices_;
};

/// Index drawn from `p` using one 64-bit value.
std::size_t sample_index(std::span<const Rational> p, SplitMix64& rng);

struct Trial {
  std::size_t generator = 0;
  StateId successor = 0;
  Rational value;
  double running_average = 0.0;
};

struct TrialLog {
  std::uint64_t seed = 0;
  StateId state = 0;
  LabelId label = 0;
  std::vector<Trial> trials;
  Rational average;  // exact (1/n) sum of values

  std::size_t n() const { return trials.size(); }
  /// One JSON object per line: a header, one line per trial, a summary.
  std::string to_json_lines(const Pnts& m) const;
};

/// Runs n trials of the push-button experiment at x under label.
/// ModelError when alpha_label(x) is empty or the scheduler is malformed.
TrialLog run_trials(const Pnts& m, StateId x, LabelId label, const Scheduler& sigma,
                    const Valuation& f, std::size_t n, std::uint64_t seed);

/// Max over generators of the average of n trials each; 0 when alpha_label(x)
/// is empty. Generator i uses the stream split(i) of `seed`.
double estimate_upper_expectation(const Pnts& m, StateId x, LabelId label, const Valuation& f,
                                  std::size_t n, std::uint64_t seed);

}  // namespace pnts
