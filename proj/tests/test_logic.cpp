#include <doctest.h>

#include <cmath>

#include "pnts/bisim.hpp"
#include "pnts/error.hpp"
#include "pnts/evaluate.hpp"
#include "pnts/logic_tools.hpp"
#include "pnts/random_models.hpp"
#include "support.hpp"

using namespace pnts;
using namespace pnts::testing;

namespace {

const Logic R{};
const Logic QL{LogicBase::ql, false};
const Logic QL_MU{LogicBase::ql, true};
const Logic LUK{LogicBase::luk, false};
const Logic LUK_MU{LogicBase::luk, true};
const Logic MU{LogicBase::unit, true};

Valuation vals(std::initializer_list<const char*> v) {
  std::vector<Rational> out;
  for (const char* s : v) out.push_back(q(s));
  return Valuation(std::move(out));
}

}  // namespace

TEST_CASE("parser precedence") {
  CHECK(to_string(parse_formula("1 + 0 \\/ 1 /\\ 0")) == to_string(parse_formula("(1 + 0) \\/ (1 /\\ 0)")));
  CHECK(parse_formula("<a>1 + 1") == Formula::plus(Formula::diamond("a", Formula::one()), Formula::one()));
  CHECK(parse_formula("2*<a>1") == Formula::scale(Rational(2), Formula::diamond("a", Formula::one())));
  CHECK(parse_formula("1/2") == Formula::constant(Rational(1, 2)));
  CHECK(parse_formula("mu v. <a>v \\/ 0", QL_MU) ==
        Formula::mu("v", Formula::join(Formula::diamond("a", Formula::var("v")), Formula::zero())));
  CHECK(parse_formula("~<a>1 . 1", {LogicBase::ql_prod, false}) ==
        Formula::prod(Formula::neg(Formula::diamond("a", Formula::one())), Formula::one()));
  CHECK(parse_formula("<a>1 (-) 1/3", {LogicBase::ql_minus, false}) ==
        Formula::minus(Formula::diamond("a", Formula::one()), Rational(1, 3)));
  CHECK(parse_formula("prop(p) (+) 1", LUK) == Formula::oplus(Formula::prop("p"), Formula::one()));
  CHECK(parse_formula("<>1").node().name.empty());
}

TEST_CASE("parse errors carry positions") {
  const auto position = [](const char* text) -> std::size_t {
    try {
      parse_formula(text);
    } catch (const ParseError& e) {
      return e.position();
    }
    return static_cast<std::size_t>(-1);
  };
  CHECK(position("1 + ") == 4);
  CHECK(position("(1 + 0") == 6);
  CHECK(position("1 ) ") == 2);
  CHECK(position("<a 1") == 0);
  CHECK(position("1 # 0") == 2);
  CHECK(position("mu 1. v") == 3);
  CHECK(position("prop(") == 5);
}

TEST_CASE("admissibility per logic") {
  CHECK_NOTHROW(parse_formula("<a>1 + (-1)*<a>1"));
  CHECK_THROWS_AS(parse_formula("<a>1 + <a>1", QL), LogicError);
  CHECK_THROWS_AS(parse_formula("2*<a>1", QL), LogicError);
  CHECK_NOTHROW(parse_formula("1/2*<a>1", QL));
  CHECK_THROWS_AS(parse_formula("~1"), LogicError);
  CHECK_THROWS_AS(parse_formula("1 . 1", QL), LogicError);
  CHECK_THROWS_AS(parse_formula("mu v. <a>v"), LogicError);
  CHECK_THROWS_AS(parse_formula("mu v. ~<a>v", QL_MU), LogicError);
  CHECK_NOTHROW(parse_formula("mu v. ~~<a>v", QL_MU));
  CHECK_NOTHROW(parse_formula("mu v. ~(nu w. ~v /\\ <a>w)", QL_MU));
  CHECK_FALSE(check_positivity(Formula::nu("v", Formula::neg(Formula::diamond("a", Formula::var("v"))))));
}

TEST_CASE("random formulas round-trip through the printer") {
  SplitMix64 rng(41);
  FormulaGenParams fp;
  fp.labels = {"a", "b"};
  fp.props = {"p"};
  for (const Logic& lg : all_logics())
    for (int i = 0; i < 200; ++i) {
      const Formula f = random_formula(rng, lg, fp);
      const std::string text = to_string(f);
      const Formula back = parse_formula(text, lg);
      CHECK(back == f);
      CHECK(to_string(back) == text);
    }
}

TEST_CASE("formula metrics") {
  const Formula f = parse_formula("<a>(<b>1 \\/ 1) + <a>1");
  CHECK(modal_depth(f) == 2);
  CHECK(formula_size(f) == 8);
  CHECK(free_variables(parse_formula("mu v. <a>w \\/ v", QL_MU)) == std::set<std::string>{"w"});
  CHECK(has_fixpoints(parse_formula("nu v. v", QL_MU)));
}

TEST_CASE("fig2 experiment formula") {
  const Pnts m = fig2();
  const Formula g = parse_formula("<a>(60*<a>1 + 50*(1 + (-1)*<a>1 + (-1)*<b>1))");
  const Valuation v = evaluate_exact(m, g);
  CHECK(v[0] == Rational(38));
  CHECK(v[1] == Rational(39));
  const Valuation inner = evaluate_exact(m, parse_formula("60*<a>1 + 50*(1 + (-1)*<a>1 + (-1)*<b>1)"));
  CHECK(inner == Valuation({60, 60, 60, 0, 50}));
}

TEST_CASE("diamond semantics") {
  const Pnts m = fig1();
  const Valuation f = vals({"0", "0", "1", "0"});
  CHECK(diamond(m, 0, f) == vals({"4/5", "4/5", "1", "0"}));
  CHECK(evaluate_exact(m, parse_formula("<>1")) == vals({"1", "1", "1", "0"}));
  CHECK_THROWS_AS(evaluate_exact(fig2(), parse_formula("<>1")), LogicError);
  CHECK_THROWS_AS(evaluate_exact(m, parse_formula("<zz>1")), LogicError);
  CHECK_THROWS_AS(evaluate_exact(m, parse_formula("prop(q)")), LogicError);
  CHECK_THROWS_AS(evaluate_exact(m, parse_formula("v")), LogicError);
}

TEST_CASE("environments") {
  const Pnts m = fig1();
  Environment env{{"v", vals({"1/2", "0", "1", "1/4"})}};
  CHECK(evaluate_exact(m, parse_formula("<a>v", QL_MU), env) == vals({"17/20", "17/20", "1", "0"}));
}

TEST_CASE("fixpoints on fig1") {
  const Pnts m = fig1();
  EvalOptions exact;
  exact.logic = QL_MU;
  exact.exact_fixpoints = true;
  const EvalResult nu = evaluate(m, parse_formula("nu v. <a>v", QL_MU), {}, exact);
  REQUIRE(nu.exact);
  CHECK(*nu.values == vals({"4/5", "4/5", "1", "0"}));
  const EvalResult mu = evaluate(m, parse_formula("mu v. <a>v", QL_MU), {}, exact);
  CHECK(*mu.values == vals({"0", "0", "0", "0"}));

  EvalOptions fl;
  fl.logic = QL_MU;
  const EvalResult nf = evaluate(m, parse_formula("nu v. <a>v", QL_MU), {}, fl);
  CHECK_FALSE(nf.exact);
  CHECK(nf.approx[0] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(nf.residual <= 1e-9);
}

TEST_CASE("iterates are monotone and converge") {
  const Pnts m = fig1();
  const Formula f = parse_formula("mu v. 1/2*<a>v (+) 1/2", LUK_MU);
  std::vector<std::vector<double>> iterates;
  EvalOptions opt;
  opt.logic = LUK_MU;
  opt.on_iterate = [&](const std::string& var, bool least, std::span<const double> it) {
    CHECK(var == "v");
    CHECK(least);
    iterates.emplace_back(it.begin(), it.end());
  };
  const EvalResult r = evaluate(m, f, {}, opt);
  REQUIRE(iterates.size() > 10);
  for (std::size_t k = 1; k < iterates.size(); ++k)
    for (std::size_t x = 0; x < 4; ++x) CHECK(iterates[k][x] >= iterates[k - 1][x]);
  CHECK(r.approx[2] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.approx[3] == doctest::Approx(0.5));
  CHECK(r.residual <= 1e-9);

  // the exact iteration never stabilizes here
  EvalOptions ex = opt;
  ex.on_iterate = nullptr;
  ex.exact_fixpoints = true;
  CHECK_THROWS_AS(evaluate(m, f, {}, ex), ResourceError);

  // greatest fixpoint iterates decrease
  iterates.clear();
  const Formula g = parse_formula("nu v. 1/2*<a>v", QL_MU);
  EvalOptions o2;
  o2.logic = QL_MU;
  o2.on_iterate = [&](const std::string&, bool least, std::span<const double> it) {
    CHECK_FALSE(least);
    iterates.emplace_back(it.begin(), it.end());
  };
  const EvalResult r2 = evaluate(m, g, {}, o2);
  for (std::size_t k = 1; k < iterates.size(); ++k)
    for (std::size_t x = 0; x < 4; ++x) CHECK(iterates[k][x] <= iterates[k - 1][x]);
  CHECK(std::fabs(r2.approx[2]) <= 1e-8);
}

TEST_CASE("iteration cap") {
  const Pnts m = fig1();
  EvalOptions opt;
  opt.logic = LUK_MU;
  opt.max_iterations = 5;
  CHECK_THROWS_AS(evaluate(m, parse_formula("mu v. 1/2*<a>v (+) 1/2", LUK_MU), {}, opt), ResourceError);
}

TEST_CASE("unit-valued logics stay in [0,1]") {
  SplitMix64 rng(42);
  FormulaGenParams fp;
  fp.labels = {"a", "b"};
  fp.props = {"p"};
  for (int i = 0; i < 40; ++i) {
    RandomModelParams p;
    p.labels = 2;
    p.proposition = true;
    const Pnts m = random_model(rng, p);
    for (const Logic& lg : all_logics()) {
      if (!lg.unit_valued()) continue;
      for (int k = 0; k < 10; ++k) {
        EvalOptions opt;
        opt.logic = lg;
        const EvalResult r = evaluate(m, random_formula(rng, lg, fp), {}, opt);
        for (double v : r.approx) {
          CHECK(v >= -1e-12);
          CHECK(v <= 1 + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("exact and float fixpoints agree") {
  SplitMix64 rng(43);
  FormulaGenParams fp;
  fp.max_depth = 3;
  std::size_t compared = 0;
  for (int i = 0; i < 40; ++i) {
    const Pnts m = random_model(rng);
    for (int k = 0; k < 10; ++k) {
      const Formula f = random_formula(rng, QL_MU, fp);
      EvalOptions fl;
      fl.logic = QL_MU;
      EvalOptions ex = fl;
      ex.exact_fixpoints = true;
      EvalResult e;
      try {
        e = evaluate(m, f, {}, ex);
      } catch (const ResourceError&) {
        continue;  // not finitely reached in exact arithmetic
      }
      const EvalResult a = evaluate(m, f, {}, fl);
      ++compared;
      for (StateId x = 0; x < m.num_states(); ++x)
        CHECK(std::fabs((*e.values)[x].to_double() - a.approx[x]) <= 2e-9);
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("stern-brocot prefix") {
  CHECK(stern_brocot(7) == std::vector<Rational>{1, Rational(1, 2), 2, Rational(1, 3), Rational(2, 3),
                                                 Rational(3, 2), 3});
  CHECK(stern_brocot(4, true) ==
        std::vector<Rational>{Rational(1, 2), Rational(1, 3), Rational(2, 3), Rational(1, 4)});
}

TEST_CASE("formula enumeration") {
  const Pnts m = fig1();
  const auto fs = enumerate_r_formulas(m, 200);
  REQUIRE_FALSE(fs.empty());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    CHECK(evaluate_exact(m, fs[i].formula) == fs[i].value);
    CHECK(is_admissible(fs[i].formula, R));
    for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(fs[i].value == fs[j].value);
  }
  // deterministic
  const auto again = enumerate_r_formulas(m, 200);
  REQUIRE(again.size() == fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) CHECK(again[i].formula == fs[i].formula);
}

TEST_CASE("semantic kernel") {
  CHECK(semantic_kernel(fig1(), 300) == Partition::from_blocks({{0, 1}, {2}, {3}}, 4));
  // x and y need a formula reaching two steps deep into both labels
  const Pnts f2 = fig2();
  const Formula g = parse_formula("<a>(60*<a>1 + 50*(1 + (-1)*<a>1 + (-1)*<b>1))");
  CHECK(semantic_kernel(f2, 1, {g}).same_block(0, 1) == false);
  CHECK(semantic_kernel(f2, 2000) == Partition::discrete(5));
  CHECK_THROWS_AS(semantic_kernel(f2, 0), ResourceError);

  SplitMix64 rng(44);
  for (int i = 0; i < 60; ++i) {
    RandomModelParams p;
    p.max_states = 5;
    p.labels = 2;
    p.reuse_percent = 50;
    const Pnts m = random_model(rng, p);
    const Partition ue = bisimilarity(m, BisimKind::ue);
    const Partition kernel = semantic_kernel(m, 150);
    CHECK(ue.refines(kernel));
    CHECK(semantic_kernel(m, 150, block_indicators(m)) == ue);
  }
}

TEST_CASE("logic names") {
  for (const char* n : {"r", "ql", "ql-minus", "ql-prod", "luk", "mu", "ql-mu", "ql-minus-mu", "ql-prod-mu", "luk-mu"})
    CHECK(to_string(parse_logic(n)) == n);
  CHECK(parse_logic("mu") == MU);
  CHECK_THROWS(parse_logic("ltl"));
}
