#include "pnts/experiments.hpp"

#include <algorithm>

#include <json.hpp>

#include "pnts/error.hpp"

namespace pnts {

Scheduler Scheduler::deterministic(std::size_t index) {
  Scheduler s;
  s.fallback_ = index;
  return s;
}

Scheduler Scheduler::weighted(std::vector<Rational> weights) {
  Scheduler s;
  s.fallback_ = std::move(weights);
  return s;
}

void Scheduler::set(StateId x, LabelId a, SchedulerChoice choice) { choices_[{x, a}] = std::move(choice); }

const SchedulerChoice& Scheduler::choice(StateId x, LabelId a) const {
  auto it = choices_.find({x, a});
  return it == choices_.end() ? fallback_ : it->second;
}

namespace {

using u128 = unsigned __int128;

// ceil(F_i * 2^64) for the cumulative sums F_i; zero-probability entries get
// the previous threshold and are never selected.
std::vector<u128> cdf_thresholds(std::span<const Rational> p) {
  std::vector<u128> out;
  out.reserve(p.size());
  mpq_class cum = 0;
  for (const auto& q : p) {
    cum += q.raw();
    mpz_class scaled = cum.get_num();
    scaled <<= 64;
    mpz_class t;
    mpz_cdiv_q(t.get_mpz_t(), scaled.get_mpz_t(), cum.get_den().get_mpz_t());
    out.push_back(mpz_sizeinbase(t.get_mpz_t(), 2) > 64 ? (u128{1} << 64) : u128{t.get_ui()});
  }
  return out;
}

std::size_t draw(const std::vector<u128>& thresholds, SplitMix64& rng) {
  const u128 u = rng();
  const auto it = std::upper_bound(thresholds.begin(), thresholds.end(), u);
  return static_cast<std::size_t>(it - thresholds.begin());
}

}  // namespace

std::size_t sample_index(std::span<const Rational> p, SplitMix64& rng) {
  return draw(cdf_thresholds(p), rng);
}

namespace {

std::vector<Rational> scheduler_weights(const SchedulerChoice& c, std::size_t generators) {
  std::vector<Rational> w(generators);
  if (const auto* idx = std::get_if<std::size_t>(&c)) {
    if (*idx >= generators)
      throw ModelError("scheduler picks generator " + std::to_string(*idx) + " of " +
                       std::to_string(generators));
    w[*idx] = 1;
    return w;
  }
  const auto& given = std::get<std::vector<Rational>>(c);
  if (given.size() != generators)
    throw ModelError("scheduler weights do not match the number of generators");
  Rational sum;
  for (const auto& q : given) {
    if (q.sign() < 0) throw ModelError("negative scheduler weight");
    sum += q;
  }
  if (sum != Rational(1)) throw ModelError("scheduler weights do not sum to 1");
  return given;
}

}  // namespace

TrialLog run_trials(const Pnts& m, StateId x, LabelId label, const Scheduler& sigma,
                    const Valuation& f, std::size_t n, std::uint64_t seed) {
  if (x >= m.num_states()) throw ModelError("state index out of range");
  if (label >= m.num_labels()) throw ModelError("unknown label index");
  if (f.size() != m.num_states()) throw DimensionError("experiment does not match the model");
  if (n == 0) throw ModelError("run_trials needs at least one trial");
  const GeneratorSet& gens = m.successors(x, label);
  if (gens.empty())
    throw ModelError("state " + m.state_name(x) + " has no " + m.label(label).name + "-transitions");
  const std::vector<Rational> w = scheduler_weights(sigma.choice(x, label), gens.size());
  const bool fixed = std::count_if(w.begin(), w.end(), [](const Rational& q) { return q.sign() != 0; }) == 1;
  const std::size_t fixed_index =
      static_cast<std::size_t>(std::find_if(w.begin(), w.end(), [](const Rational& q) { return q.sign() != 0; }) - w.begin());

  TrialLog log;
  log.seed = seed;
  log.state = x;
  log.label = label;
  log.trials.reserve(n);
  std::vector<std::vector<u128>> cdf;
  for (const auto& mu : gens) cdf.push_back(cdf_thresholds(mu.probabilities()));
  const std::vector<u128> choice_cdf = cdf_thresholds(w);
  SplitMix64 rng(seed);
  mpq_class sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Trial t;
    t.generator = fixed ? fixed_index : draw(choice_cdf, rng);
    t.successor = draw(cdf[t.generator], rng);
    t.value = f[t.successor];
    sum += t.value.raw();
    t.running_average = sum.get_d() / static_cast<double>(i + 1);
    log.trials.push_back(std::move(t));
  }
  log.average = Rational(mpq_class(sum / static_cast<unsigned long>(n)));
  return log;
}

std::string TrialLog::to_json_lines(const Pnts& m) const {
  using Json = nlohmann::ordered_json;
  std::string out;
  Json head;
  head["seed"] = seed;
  head["state"] = m.state_name(state);
  head["label"] = m.label(label).name;
  head["n"] = trials.size();
  out += head.dump() + "\n";
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const Trial& t = trials[i];
    Json line;
    line["trial"] = i + 1;
    line["generator"] = t.generator;
    line["successor"] = m.state_name(t.successor);
    line["value"] = t.value.str();
    line["running_average"] = t.running_average;
    out += line.dump() + "\n";
  }
  Json tail;
  tail["average"] = average.str();
  tail["average_float"] = average.to_double();
  out += tail.dump() + "\n";
  return out;
}

double estimate_upper_expectation(const Pnts& m, StateId x, LabelId label, const Valuation& f,
                                  std::size_t n, std::uint64_t seed) {
  if (x >= m.num_states()) throw ModelError("state index out of range");
  if (label >= m.num_labels()) throw ModelError("unknown label index");
  const GeneratorSet& gens = m.successors(x, label);
  if (gens.empty()) return 0.0;
  const SplitMix64 root(seed);
  double best = 0.0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const TrialLog log = run_trials(m, x, label, Scheduler::deterministic(i), f, n, root.split(i).seed());
    const double avg = log.average.to_double();
    if (i == 0 || avg > best) best = avg;
  }
  return best;
}

}  // namespace pnts
