#include "pnts/metric.hpp"

#include <set>

#include "pnts/bisim.hpp"
#include "pnts/convex.hpp"
#include "pnts/error.hpp"
#include "pnts/evaluate.hpp"
#include "pnts/logic_tools.hpp"

namespace pnts {

MetricMatrix behavioral_metric(const Pnts& m, LabelId label) {
  if (label >= m.num_labels()) throw ModelError("unknown label index");
  MetricMatrix out;
  out.label = label;
  out.blocks = bisimilarity(m, BisimKind::ue);
  const Pnts q = quotient_model(m, out.blocks);
  const std::size_t k = q.num_states();
  out.d.assign(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      out.d[i][j] = out.d[j][i] = hausdorff_distance(q.successors(i, label), q.successors(j, label));
  return out;
}

namespace {

using Values = std::vector<Rational>;

std::vector<std::pair<Formula, Values>> luk_atoms(const Pnts& m) {
  const std::size_t n = m.num_states();
  std::vector<std::pair<Formula, Values>> pool;
  std::set<Values> seen{Values(n, Rational(0)), Values(n, Rational(1))};
  std::vector<std::pair<Formula, Values>> level{{Formula::one(), Values(n, Rational(1))}};
  for (const auto& [name, v] : m.props()) {
    Values vals(v.values().begin(), v.values().end());
    if (seen.insert(vals).second) {
      pool.emplace_back(Formula::prop(name), vals);
      level.emplace_back(Formula::prop(name), vals);
    }
  }
  for (int depth = 0; depth < 2; ++depth) {
    std::vector<std::pair<Formula, Values>> next;
    const auto offer = [&](Formula f, Values v) {
      if (!seen.insert(v).second) return;
      pool.emplace_back(f, v);
      next.emplace_back(std::move(f), std::move(v));
    };
    for (const auto& [f, v] : level) {
      for (LabelId a = 0; a < m.num_labels(); ++a) {
        const Valuation d = diamond(m, a, Valuation(v));
        offer(Formula::diamond(m.label(a).name, f), Values(d.values().begin(), d.values().end()));
      }
      Values neg(n);
      for (std::size_t x = 0; x < n; ++x) neg[x] = Rational(1) - v[x];
      offer(Formula::neg(f), std::move(neg));
    }
    // binary connectives over everything produced so far
    const auto base = pool;
    for (std::size_t j = 0; j < base.size(); ++j)
      for (std::size_t i = 0; i < j; ++i) {
        const auto& [fa, va] = base[i];
        const auto& [fb, vb] = base[j];
        Values s(n), hi(n), lo(n);
        for (std::size_t x = 0; x < n; ++x) {
          s[x] = min(Rational(1), va[x] + vb[x]);
          hi[x] = max(va[x], vb[x]);
          lo[x] = min(va[x], vb[x]);
        }
        offer(Formula::oplus(fa, fb), std::move(s));
        offer(Formula::join(fa, fb), std::move(hi));
        offer(Formula::meet(fa, fb), std::move(lo));
      }
    for (auto& e : next) level.push_back(std::move(e));
  }
  return pool;
}

// Members of the family in order, produced lazily.
template <class Visit>
void for_each_member(const Pnts& m, std::size_t budget, Visit visit) {
  if (budget == 0) return;
  std::size_t used = 0;
  const auto atoms = luk_atoms(m);
  const std::size_t n = m.num_states();
  for (const auto& [f, v] : atoms) {
    visit(f, v);
    if (++used == budget) return;
  }
  std::vector<Rational> qs{Rational(1)};
  for (const auto& q : stern_brocot(5, true)) qs.push_back(q);
  for (std::size_t j = 1; j < atoms.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      for (const auto& [ia, ib] : {std::pair{i, j}, std::pair{j, i}})
        for (const auto& q : qs) {
          const auto& [fa, va] = atoms[ia];
          const auto& [fb, vb] = atoms[ib];
          const Formula sb = q == Rational(1) ? fb : Formula::scale(q, fb);
          Values hi(n), s(n);
          for (std::size_t x = 0; x < n; ++x) {
            hi[x] = max(va[x], q * vb[x]);
            s[x] = min(Rational(1), va[x] + q * vb[x]);
          }
          visit(Formula::join(fa, sb), hi);
          if (++used == budget) return;
          visit(Formula::oplus(fa, sb), s);
          if (++used == budget) return;
        }
}

}  // namespace

std::vector<std::pair<Formula, Valuation>> luk_family(const Pnts& m, std::size_t budget) {
  std::vector<std::pair<Formula, Valuation>> out;
  for_each_member(m, budget, [&](const Formula& f, const Values& v) {
    out.emplace_back(f, Valuation(v, true));
  });
  return out;
}

MetricEstimate formula_metric_estimate(const Pnts& m, StateId x, StateId y, std::size_t budget,
                                       LabelId label) {
  if (x >= m.num_states() || y >= m.num_states()) throw ModelError("state index out of range");
  if (label >= m.num_labels()) throw ModelError("unknown label index");
  MetricEstimate out;
  const auto& ax = m.successors(x, label);
  const auto& ay = m.successors(y, label);
  for_each_member(m, budget, [&](const Formula& f, const Values& v) {
    ++out.evaluated;
    const Valuation val(v);
    const Rational gap = abs(upper_expectation(ax, val) - upper_expectation(ay, val));
    if (!out.best || out.value < gap) {
      out.value = gap;
      out.best = f;
    }
  });
  return out;
}

}  // namespace pnts
