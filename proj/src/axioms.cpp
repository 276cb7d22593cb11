#include <algorithm>

#include "pnts/error.hpp"
#include "pnts/logic_tools.hpp"
#include "pnts/random.hpp"

namespace pnts {

ModelType parse_model_type(const std::string& s) {
  if (s == "pnts") return ModelType::pnts;
  if (s == "mp") return ModelType::mp;
  if (s == "nts") return ModelType::nts;
  throw ParseError("unknown model type '" + s + "' (pnts, mp, nts)", 0);
}

std::string to_string(ModelType t) {
  switch (t) {
    case ModelType::pnts: return "pnts";
    case ModelType::mp: return "mp";
    case ModelType::nts: return "nts";
  }
  return "?";
}

bool AxiomReport::all_passed() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& r) { return r.passed; });
}

const AxiomResult* AxiomReport::find(const std::string& name) const {
  for (const auto& r : axioms)
    if (r.name == name) return &r;
  return nullptr;
}

namespace {

Valuation random_valuation(SplitMix64& rng, std::size_t n) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(rng.rational(-10, 10, 6));
  return Valuation(std::move(v));
}

template <class Op>
Valuation combine(const Valuation& f, const Valuation& g, Op op) {
  std::vector<Rational> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) v[i] = op(f[i], g[i]);
  return Valuation(std::move(v));
}

enum class Cmp { le, eq };

}  // namespace

AxiomReport check_modal_riesz_axioms(const Pnts& m, LabelId label, std::size_t samples,
                                     ModelType claimed, std::uint64_t seed) {
  if (samples == 0) throw ResourceError("axiom check needs at least one sample");
  if (label >= m.num_labels()) throw ModelError("unknown label index");
  const std::size_t n = m.num_states();
  AxiomReport report{claimed, label, {}};
  std::vector<std::string> names{"monotone", "sublinear", "positive-affine-homogeneous", "boolean-one"};
  if (claimed == ModelType::mp) names.push_back("linear");
  if (claimed == ModelType::nts) names.push_back("sup-preserving");
  for (auto& nm : names) report.axioms.push_back({nm, true, 0, std::nullopt});

  const auto record = [&](std::size_t k, Cmp cmp, const Valuation& lhs, const Valuation& rhs,
                          AxiomWitness w) {
    auto& r = report.axioms[k];
    ++r.checked;
    if (!r.passed) return;
    for (StateId x = 0; x < n; ++x) {
      const bool ok = cmp == Cmp::le ? lhs[x] <= rhs[x] : lhs[x] == rhs[x];
      if (ok) continue;
      r.passed = false;
      w.state = x;
      w.lhs = lhs[x];
      w.rhs = rhs[x];
      r.counterexample = std::move(w);
      return;
    }
  };

  SplitMix64 rng(seed);
  const Valuation one = Valuation::constant(n, 1);
  const Valuation d1 = diamond(m, label, one);
  const auto dia = [&](const Valuation& v) { return diamond(m, label, v); };
  const auto plus = [](const Rational& a, const Rational& b) { return a + b; };

  for (std::size_t s = 0; s < samples; ++s) {
    const Valuation f = random_valuation(rng, n);
    Valuation h = random_valuation(rng, n);
    const Rational lambda1 = rng.rational(0, 5, 6);
    const Rational lambda2 = rng.rational(-5, 5, 6);
    const Valuation df = dia(f);

    // monotone: g = f + |h| >= f
    const Valuation g = combine(f, h, [](const Rational& a, const Rational& b) { return a + abs(b); });
    record(0, Cmp::le, df, dia(g), {f, g, 0, 0, 0, 0, 0});

    const Valuation dh = dia(h);
    record(1, Cmp::le, dia(combine(f, h, plus)), combine(df, dh, plus), {f, h, 0, 0, 0, 0, 0});

    const Valuation affine =
        combine(f, one, [&](const Rational& a, const Rational& b) { return lambda1 * a + lambda2 * b; });
    const Valuation expect =
        combine(df, d1, [&](const Rational& a, const Rational& b) { return lambda1 * a + lambda2 * b; });
    record(2, Cmp::eq, dia(affine), expect, {f, one, lambda1, lambda2, 0, 0, 0});

    // boolean: <>1 (+) <>1 = <>1, i.e. min(1, 2 <>1) = <>1
    const Valuation truncated = combine(d1, d1, [](const Rational& a, const Rational& b) {
      return min(Rational(1), a + b);
    });
    record(3, Cmp::eq, truncated, d1, {one, one, 0, 0, 0, 0, 0});

    if (claimed == ModelType::mp) {
      const Rational mu = rng.rational(-5, 5, 6);
      const Valuation lin = combine(f, h, [&](const Rational& a, const Rational& b) { return lambda2 * a + mu * b; });
      const Valuation rhs = combine(df, dh, [&](const Rational& a, const Rational& b) { return lambda2 * a + mu * b; });
      record(4, Cmp::eq, dia(lin), rhs, {f, h, lambda2, mu, 0, 0, 0});
    }
    if (claimed == ModelType::nts) {
      const auto hi = [](const Rational& a, const Rational& b) { return max(a, b); };
      record(4, Cmp::eq, dia(combine(f, h, hi)), combine(df, dh, hi), {f, h, 0, 0, 0, 0, 0});
    }
  }
  return report;
}

}  // namespace pnts
