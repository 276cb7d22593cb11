#include "pnts/random_models.hpp"

#include <string>

namespace pnts {

Distribution random_distribution(SplitMix64& rng, std::size_t n, long max_den) {
  const long d = static_cast<long>(rng.uniform_int(1, max_den));
  std::vector<long> units(n, 0);
  for (long k = 0; k < d; ++k) ++units[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1))];
  std::vector<Rational> p;
  p.reserve(n);
  for (long u : units) p.emplace_back(u, d);
  return Distribution(std::move(p));
}

GeneratorSet random_generator_set(SplitMix64& rng, std::size_t n, std::size_t max_generators,
                                  long max_den) {
  const auto count = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(max_generators)));
  std::vector<Distribution> gens;
  for (std::size_t i = 0; i < count; ++i) gens.push_back(random_distribution(rng, n, max_den));
  return GeneratorSet(n, std::move(gens));
}

Distribution random_mixture(SplitMix64& rng, const GeneratorSet& a, long max_den) {
  if (a.size() < 2) return a[0];
  const auto i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(a.size()) - 1));
  auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(a.size()) - 2));
  if (j >= i) ++j;
  const long d = static_cast<long>(rng.uniform_int(2, std::max(2L, max_den)));
  const Rational w(static_cast<long>(rng.uniform_int(1, d - 1)), d);
  std::vector<Rational> p(a.dimension());
  for (std::size_t z = 0; z < p.size(); ++z) p[z] = w * a[i][z] + (Rational(1) - w) * a[j][z];
  return Distribution(std::move(p));
}

Pnts random_model(SplitMix64& rng, const RandomModelParams& params) {
  const auto n = static_cast<std::size_t>(
      rng.uniform_int(static_cast<std::int64_t>(params.min_states), static_cast<std::int64_t>(params.max_states)));
  PntsBuilder b;
  for (std::size_t x = 0; x < n; ++x) b.add_state("s" + std::to_string(x));
  for (std::size_t a = 0; a < params.labels; ++a) b.add_label(std::string(1, static_cast<char>('a' + a)));
  if (params.complementary_pair && params.labels >= 2) b.set_complement(0, 1);
  for (LabelId a = 0; a < params.labels; ++a) {
    std::vector<GeneratorSet> sets;
    for (StateId x = 0; x < n; ++x) {
      GeneratorSet gens;
      if (rng.coin(params.empty_percent, 100)) {
        gens = GeneratorSet(n, {});
      } else if (!sets.empty() && rng.coin(params.reuse_percent, 100)) {
        const auto& src = sets[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(sets.size()) - 1))];
        std::vector<Distribution> g = src.generators();
        if (!g.empty() && rng.coin(1, 2)) g.push_back(random_mixture(rng, src, params.max_denominator));
        gens = GeneratorSet(n, std::move(g));
      } else {
        gens = random_generator_set(rng, n, params.max_generators, params.max_denominator);
      }
      for (const auto& mu : gens) b.add_transition(x, a, mu);
      sets.push_back(std::move(gens));
    }
  }
  if (params.proposition) {
    std::vector<Rational> v;
    for (std::size_t x = 0; x < n; ++x) v.emplace_back(static_cast<long>(rng.uniform_int(0, 2)), 2);
    b.set_prop("p", Valuation(std::move(v), true));
  }
  return b.build();
}

std::vector<std::vector<StateId>> random_nts(SplitMix64& rng, std::size_t n) {
  std::vector<std::vector<StateId>> succ(n);
  for (auto& s : succ)
    for (StateId y = 0; y < n; ++y)
      if (rng.coin(2, 5)) s.push_back(y);
  return succ;
}

}  // namespace pnts
