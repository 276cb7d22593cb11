#include "pnts/convex.hpp"

#include <algorithm>

#include "pnts/error.hpp"
#include "pnts/lp.hpp"

namespace pnts {

namespace {

void check_dimension(const Distribution& mu, const GeneratorSet& a) {
  if (!a.empty() && mu.size() != a.dimension())
    throw DimensionError("distribution of dimension " + std::to_string(mu.size()) +
                         " against generators of dimension " + std::to_string(a.dimension()));
}

// Feasibility of sum_i l_i gen_i = mu, sum l = 1, l >= 0.
std::optional<std::vector<Rational>> convex_weights(const Distribution& mu, const GeneratorSet& a) {
  const std::size_t k = a.size();
  const std::size_t n = mu.size();
  lp::Instance p(k, lp::Sense::maximize);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<Rational> row(k);
    bool any = false;
    for (std::size_t i = 0; i < k; ++i) {
      row[i] = a[i][x];
      any = any || row[i].sign() != 0;
    }
    if (!any && mu[x].sign() == 0) continue;
    p.add(std::move(row), lp::Relation::equal, mu[x]);
  }
  p.add(std::vector<Rational>(k, Rational(1)), lp::Relation::equal, Rational(1));
  auto res = lp::solve(p);
  if (res.status != lp::Status::optimal) return std::nullopt;
  return std::move(res.x);
}

// max t s.t. E_mu(f) - E_gen(f) >= t for every generator, -1 <= f <= 1.
std::pair<Valuation, Rational> separating_experiment(const Distribution& mu, const GeneratorSet& a) {
  const std::size_t n = mu.size();
  lp::Instance p(n + 1, lp::Sense::maximize);
  p.objective[n] = 1;
  for (std::size_t x = 0; x < n; ++x) p.set_bounds(x, Rational(-1), Rational(1));
  p.set_bounds(n, std::nullopt, std::nullopt);
  for (const auto& g : a) {
    std::vector<Rational> row(n + 1);
    for (std::size_t x = 0; x < n; ++x) row[x] = mu[x] - g[x];
    row[n] = -1;
    p.add(std::move(row), lp::Relation::greater_equal, Rational(0));
  }
  auto res = lp::solve(p);
  if (res.status != lp::Status::optimal) throw Error("separation LP did not reach an optimum");
  std::vector<Rational> f(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(n));
  Rational norm;
  for (const auto& v : f) norm = max(norm, abs(v));
  if (norm.sign() > 0 && norm != Rational(1))
    for (auto& v : f) v /= norm;
  Valuation fv(std::move(f));
  const Rational gap = expected_value(mu, fv) - upper_expectation(a, fv);
  return {std::move(fv), gap};
}

}  // namespace

Membership hull_membership(const Distribution& mu, const GeneratorSet& a) {
  check_dimension(mu, a);
  Membership out;
  if (a.empty()) {
    // ue of the empty set is 0 everywhere, E_mu(1) = 1.
    out.separator = Valuation::constant(mu.size(), Rational(1));
    out.gap = 1;
    return out;
  }
  auto it = std::find(a.begin(), a.end(), mu);
  if (it != a.end()) {
    out.inside = true;
    out.weights.assign(a.size(), Rational(0));
    out.weights[static_cast<std::size_t>(it - a.begin())] = 1;
    return out;
  }
  if (auto w = convex_weights(mu, a)) {
    out.inside = true;
    out.weights = std::move(*w);
    return out;
  }
  auto [f, gap] = separating_experiment(mu, a);
  out.separator = std::move(f);
  out.gap = std::move(gap);
  return out;
}

std::optional<HullSeparation> separate_hulls(const GeneratorSet& a, const GeneratorSet& b) {
  if (!a.empty() && !b.empty() && a.dimension() != b.dimension())
    throw DimensionError("hull comparison between different dimensions");
  if (a == b) return std::nullopt;
  // the membership gap only bounds ue_A(f) - ue_B(f) from below
  for (const auto& mu : a) {
    auto m = hull_membership(mu, b);
    if (!m.inside) {
      Rational gap = upper_expectation(a, m.separator) - upper_expectation(b, m.separator);
      return HullSeparation{std::move(m.separator), std::move(gap), true};
    }
  }
  for (const auto& nu : b) {
    auto m = hull_membership(nu, a);
    if (!m.inside) {
      Rational gap = upper_expectation(b, m.separator) - upper_expectation(a, m.separator);
      return HullSeparation{std::move(m.separator), std::move(gap), false};
    }
  }
  return std::nullopt;
}

bool hull_equal(const GeneratorSet& a, const GeneratorSet& b) { return !separate_hulls(a, b); }

Rational upper_expectation(const GeneratorSet& a, const Valuation& f) {
  if (a.empty()) return Rational(0);
  if (a.dimension() != f.size())
    throw DimensionError("upper_expectation: valuation of dimension " + std::to_string(f.size()) +
                         " against generators of dimension " + std::to_string(a.dimension()));
  Rational best = expected_value(a[0], f);
  for (std::size_t i = 1; i < a.size(); ++i) best = max(best, expected_value(a[i], f));
  return best;
}

double upper_expectation(const GeneratorSet& a, std::span<const double> f) {
  if (a.empty()) return 0.0;
  double best = expected_value(a[0], f);
  for (std::size_t i = 1; i < a.size(); ++i) best = std::max(best, expected_value(a[i], f));
  return best;
}

Rational upper_probability(const GeneratorSet& a, const std::vector<bool>& event) {
  if (a.empty()) return Rational(0);
  if (event.size() != a.dimension()) throw DimensionError("upper_probability: dimension mismatch");
  Rational best;
  for (const auto& mu : a) {
    Rational p;
    for (std::size_t x = 0; x < event.size(); ++x)
      if (event[x]) p += mu[x];
    best = max(best, p);
  }
  return best;
}

Rational l1_distance_to_hull(const Distribution& mu, const GeneratorSet& b) {
  if (b.empty()) throw ModelError("l1_distance_to_hull: distance to the empty set is undefined");
  check_dimension(mu, b);
  if (std::find(b.begin(), b.end(), mu) != b.end()) return Rational(0);
  // Variables: weights l_1..l_k, then slacks s_1..s_n with s_x >= |mu(x) - (sum l gen)(x)|.
  const std::size_t k = b.size();
  const std::size_t n = mu.size();
  lp::Instance p(k + n, lp::Sense::minimize);
  for (std::size_t x = 0; x < n; ++x) p.objective[k + x] = 1;
  std::vector<Rational> sum(k + n);
  for (std::size_t i = 0; i < k; ++i) sum[i] = 1;
  p.add(std::move(sum), lp::Relation::equal, Rational(1));
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<Rational> up(k + n), down(k + n);
    for (std::size_t i = 0; i < k; ++i) {
      up[i] = b[i][x];
      down[i] = -b[i][x];
    }
    up[k + x] = 1;
    down[k + x] = 1;
    p.add(std::move(up), lp::Relation::greater_equal, mu[x]);     // s + nu >= mu
    p.add(std::move(down), lp::Relation::greater_equal, -mu[x]);  // s - nu >= -mu
  }
  auto res = lp::solve(p);
  if (res.status != lp::Status::optimal) throw Error("L1 distance LP did not reach an optimum");
  return res.value;
}

Rational directed_distance(const GeneratorSet& a, const GeneratorSet& b) {
  if (a.empty()) return Rational(0);
  if (b.empty()) return empty_set_distance;
  // d(., H(B)) is convex, so its maximum over H(A) sits at a generator.
  Rational best;
  for (const auto& mu : a) best = max(best, l1_distance_to_hull(mu, b));
  return best;
}

Rational hausdorff_distance(const GeneratorSet& a, const GeneratorSet& b) {
  if (a.empty() && b.empty()) return Rational(0);
  if (a.empty() || b.empty()) return empty_set_distance;
  return max(directed_distance(a, b), directed_distance(b, a));
}

}  // namespace pnts
