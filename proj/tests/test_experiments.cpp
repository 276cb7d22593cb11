#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "pnts/convex.hpp"
#include "pnts/error.hpp"
#include "pnts/experiments.hpp"
#include "pnts/random_models.hpp"
#include "support.hpp"

using namespace pnts;
using namespace pnts::testing;

namespace {

const Valuation g5({0, 0, 60, 0, 50});

}  // namespace

TEST_CASE("splitmix64 reference values") {
  // first outputs for seed 1234567, as in the reference implementation
  SplitMix64 r(1234567);
  CHECK(r() == 6457827717110365317ULL);
  CHECK(r() == 3203168211198807973ULL);
  CHECK(r() == 9817491932198370423ULL);
  SplitMix64 a(9), b(9);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
  CHECK(a.split(1).seed() != a.split(2).seed());
  CHECK(a.split(1).seed() == b.split(1).seed());
}

TEST_CASE("uniform integers and rationals stay in range") {
  SplitMix64 r(3);
  for (int i = 0; i < 2000; ++i) {
    const auto v = r.uniform_int(-3, 5);
    CHECK(v >= -3);
    CHECK(v <= 5);
    const Rational q = r.rational(-2, 2, 5);
    CHECK(q >= Rational(-2));
    CHECK(q <= Rational(2));
  }
}

TEST_CASE("sample_index frequencies") {
  const std::vector<Rational> p{Rational(1, 6), Rational(0), Rational(1, 2), Rational(1, 3)};
  SplitMix64 r(5);
  std::vector<std::size_t> count(4);
  const std::size_t n = 60000;
  for (std::size_t i = 0; i < n; ++i) ++count[sample_index(p, r)];
  CHECK(count[1] == 0);
  for (std::size_t i = 0; i < 4; ++i) {
    const double expect = p[i].to_double() * n;
    CHECK(std::fabs(count[i] - expect) <= 5 * std::sqrt(expect + 1));
  }
  SplitMix64 r2(6);
  const std::vector<Rational> dirac{Rational(0), Rational(1), Rational(0)};
  for (int i = 0; i < 500; ++i) CHECK(sample_index(dirac, r2) == 1);
}

TEST_CASE("trial logs") {
  const Pnts m = fig2();
  const TrialLog log = run_trials(m, 1, 0, Scheduler::deterministic(2), g5, 500, 42);
  CHECK(log.n() == 500);
  Rational sum;
  for (const auto& t : log.trials) {
    CHECK(t.generator == 2);
    CHECK(t.value == g5[t.successor]);
    CHECK(m.successors(1, 0)[2][t.successor].sign() > 0);
    sum += t.value;
  }
  CHECK(log.average == sum / Rational(500));
  CHECK(log.trials.back().running_average == doctest::Approx(log.average.to_double()));

  const std::string text = log.to_json_lines(m);
  std::istringstream in(text);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    CHECK(nlohmann::json::parse(line).is_object());
    ++lines;
  }
  CHECK(lines == 502);
  const auto head = nlohmann::json::parse(text.substr(0, text.find('\n')));
  CHECK(head["seed"] == 42);
  CHECK(head["state"] == "y");
}

TEST_CASE("identical seeds reproduce, different seeds differ") {
  const Pnts m = fig2();
  const auto sigma = Scheduler::weighted({Rational(1, 2), Rational(1, 4), Rational(1, 4)});
  const std::string a = run_trials(m, 1, 0, sigma, g5, 300, 7).to_json_lines(m);
  const std::string b = run_trials(m, 1, 0, sigma, g5, 300, 7).to_json_lines(m);
  const std::string c = run_trials(m, 1, 0, sigma, g5, 300, 8).to_json_lines(m);
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("weighted scheduler mixes generators") {
  const Pnts m = fig2();
  auto sigma = Scheduler::deterministic(0);
  sigma.set(1, 0, std::vector<Rational>{Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  const TrialLog log = run_trials(m, 1, 0, sigma, g5, 30000, 9);
  std::vector<std::size_t> used(3);
  for (const auto& t : log.trials) ++used[t.generator];
  for (std::size_t u : used) CHECK(std::fabs(static_cast<double>(u) - 10000.0) < 500.0);
  // expected value of the uniform mixture is (38 + 35 + 39) / 3
  CHECK(std::fabs(log.average.to_double() - 112.0 / 3) < 0.6);
}

TEST_CASE("scheduler and argument errors") {
  const Pnts m = fig2();
  CHECK_THROWS_AS(run_trials(m, 1, 0, Scheduler::deterministic(3), g5, 10, 1), ModelError);
  CHECK_THROWS_AS(run_trials(m, 1, 0, Scheduler::weighted({Rational(1, 2), Rational(1, 2)}), g5, 10, 1), ModelError);
  CHECK_THROWS_AS(run_trials(m, 1, 0, Scheduler::weighted({Rational(1), Rational(1), Rational(-1)}), g5, 10, 1),
                  ModelError);
  CHECK_THROWS_AS(run_trials(m, 4, 0, Scheduler::deterministic(), g5, 10, 1), ModelError);
  CHECK_THROWS_AS(run_trials(m, 1, 0, Scheduler::deterministic(), Valuation({1, 2}), 10, 1), DimensionError);
}

TEST_CASE("upper expectation estimates converge") {
  const Pnts m = fig2();
  const double est = estimate_upper_expectation(m, 1, 0, g5, 20000, 3);
  CHECK(std::fabs(est - 39.0) < 1.0);
  CHECK(estimate_upper_expectation(m, 4, 0, g5, 100, 3) == 0.0);

  SplitMix64 rng(81);
  for (int i = 0; i < 10; ++i) {
    const Pnts r = random_model(rng);
    const Valuation f = Valuation::constant(r.num_states(), Rational(1));
    for (StateId x = 0; x < r.num_states(); ++x)
      CHECK(estimate_upper_expectation(r, x, 0, f, 50, 1) == upper_expectation(r.successors(x, 0), f).to_double());
  }
}
