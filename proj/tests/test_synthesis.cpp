#include <doctest.h>

#include "pnts/bisim.hpp"
#include "pnts/convex.hpp"
#include "pnts/error.hpp"
#include "pnts/evaluate.hpp"
#include "pnts/logic_tools.hpp"
#include "pnts/random_models.hpp"
#include "support.hpp"

using namespace pnts;
using namespace pnts::testing;

TEST_CASE("fig2 target") {
  const Pnts m = fig2();
  const Valuation target({0, 0, 60, 0, 50});
  const Formula f = synthesize_formula(m, target);
  CHECK(evaluate_exact(m, f) == target);
  CHECK(is_admissible(f, Logic{}));
  CHECK(modal_depth(f) <= 6);
}

TEST_CASE("block indicators") {
  const Pnts m = fig2();
  const auto ind = block_indicators(m);
  const Partition ue = bisimilarity(m, BisimKind::ue);
  REQUIRE(ind.size() == ue.num_blocks());
  for (std::size_t b = 0; b < ind.size(); ++b) {
    const Valuation v = evaluate_exact(m, ind[b]);
    for (StateId x = 0; x < m.num_states(); ++x) CHECK(v[x] == Rational(ue.block_of(x) == b ? 1 : 0));
  }
}

TEST_CASE("constant and non-invariant targets") {
  const Pnts m = fig1();
  const Formula c = synthesize_formula(m, Valuation::constant(4, Rational(-7, 2)));
  CHECK(evaluate_exact(m, c) == Valuation::constant(4, Rational(-7, 2)));
  CHECK_THROWS_AS(synthesize_formula(m, Valuation({1, 0, 0, 0})), LogicError);
  CHECK_THROWS_AS(synthesize_formula(m, Valuation({1, 1})), DimensionError);
}

TEST_CASE("depth cap") {
  // chain s0 -> s1 -> ... -> s7 needs separators of depth 7
  PntsBuilder b;
  const std::size_t n = 8;
  for (std::size_t i = 0; i < n; ++i) b.add_state("s" + std::to_string(i));
  const LabelId a = b.add_label("a");
  for (StateId i = 0; i + 1 < n; ++i) b.add_transition(i, a, Distribution::dirac(i + 1, n));
  const Pnts m = b.build();
  std::vector<Rational> t;
  for (std::size_t i = 0; i < n; ++i) t.emplace_back(static_cast<long>(i));
  CHECK_THROWS_AS(synthesize_formula(m, Valuation(t)), ResourceError);
  SynthesisOptions deep;
  deep.max_depth = 8;
  CHECK(evaluate_exact(m, synthesize_formula(m, Valuation(t), deep)) == Valuation(t));
}

TEST_CASE("random models with propositions") {
  SplitMix64 rng(51);
  for (int i = 0; i < 60; ++i) {
    RandomModelParams p;
    p.min_states = 2;
    p.max_states = 6;
    p.labels = 2;
    p.proposition = i % 2 == 0;
    const Pnts m = random_model(rng, p);
    const Partition ue = bisimilarity(m, BisimKind::ue);
    std::vector<Rational> per_block;
    for (std::size_t k = 0; k < ue.num_blocks(); ++k) per_block.push_back(rng.rational(-5, 5, 4));
    const Valuation target = lift(Valuation(per_block), ue);
    try {
      CHECK(evaluate_exact(m, synthesize_formula(m, target)) == target);
    } catch (const ResourceError&) {
      CHECK(refinement_trace(m, BisimKind::ue).size() > 7);
    }
  }
}

TEST_CASE("axioms hold for the diamond of any PNTS") {
  SplitMix64 rng(52);
  for (int i = 0; i < 40; ++i) {
    const Pnts m = random_model(rng);
    const AxiomReport r = check_modal_riesz_axioms(m, 0, 50, ModelType::pnts, rng());
    CHECK(r.all_passed());
    CHECK(r.find("monotone"));
    CHECK(r.find("sublinear"));
    CHECK(r.find("positive-affine-homogeneous"));
    CHECK(r.find("boolean-one"));
    CHECK_FALSE(r.find("linear"));
  }
}

TEST_CASE("Markov processes are linear, NTS are sup-preserving") {
  SplitMix64 rng(53);
  for (int i = 0; i < 30; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 4));
    std::vector<std::optional<Distribution>> steps;
    for (std::size_t x = 0; x < n; ++x)
      if (rng.coin(1, 4))
        steps.emplace_back();
      else
        steps.emplace_back(random_distribution(rng, n, 6));
    const AxiomReport mp = check_modal_riesz_axioms(embed_mp(steps), 0, 50, ModelType::mp, rng());
    CHECK(mp.all_passed());
    REQUIRE(mp.find("linear"));

    const AxiomReport nts = check_modal_riesz_axioms(embed_nts(random_nts(rng, n)), 0, 50, ModelType::nts, rng());
    CHECK(nts.all_passed());
    REQUIRE(nts.find("sup-preserving"));
  }
}

TEST_CASE("wrong claims are refuted with re-checkable witnesses") {
  const Pnts m = fig2();
  const AxiomReport r = check_modal_riesz_axioms(m, 0, 500, ModelType::nts, 3);
  CHECK_FALSE(r.all_passed());
  const AxiomResult* sup = r.find("sup-preserving");
  REQUIRE(sup);
  REQUIRE_FALSE(sup->passed);
  REQUIRE(sup->counterexample);
  const AxiomWitness& w = *sup->counterexample;
  std::vector<Rational> j;
  for (StateId z = 0; z < w.f.size(); ++z) j.push_back(max(w.f[z], w.g[z]));
  const Rational lhs = diamond(m, 0, Valuation(j))[w.state];
  const Rational rhs = max(diamond(m, 0, w.f)[w.state], diamond(m, 0, w.g)[w.state]);
  CHECK(lhs == w.lhs);
  CHECK(rhs == w.rhs);
  CHECK(lhs != rhs);
  // the remaining axioms still hold
  CHECK(r.find("monotone")->passed);
  CHECK(r.find("sublinear")->passed);

  const AxiomReport lin = check_modal_riesz_axioms(fig1(), 0, 200, ModelType::mp, 3);
  CHECK_FALSE(lin.find("linear")->passed);
}

TEST_CASE("model type names") {
  CHECK(parse_model_type("nts") == ModelType::nts);
  CHECK(to_string(ModelType::mp) == "mp");
  CHECK_THROWS(parse_model_type("dtmc"));
  CHECK_THROWS_AS(check_modal_riesz_axioms(fig1(), 0, 0, ModelType::pnts), ResourceError);
}
