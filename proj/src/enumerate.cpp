#include <map>
#include <set>

#include "pnts/error.hpp"
#include "pnts/logic_tools.hpp"

namespace pnts {

std::vector<Rational> stern_brocot(std::size_t count, bool unit_only) {
  struct Node {
    long a, b, c, d;  // interval (a/b, c/d), mediant is the node value
  };
  std::vector<Rational> out;
  std::vector<Node> level{unit_only ? Node{0, 1, 1, 1} : Node{0, 1, 1, 0}};
  while (out.size() < count) {
    std::vector<Node> next;
    for (const auto& n : level) {
      const long p = n.a + n.c;
      const long q = n.b + n.d;
      out.emplace_back(p, q);
      if (out.size() == count) return out;
      next.push_back({n.a, n.b, p, q});
      next.push_back({p, q, n.c, n.d});
    }
    level = std::move(next);
  }
  return out;
}

std::vector<EnumeratedFormula> enumerate_r_formulas(const Pnts& m, std::size_t budget,
                                                    std::size_t constants) {
  std::vector<EnumeratedFormula> out;
  std::set<std::vector<Rational>> seen;
  const auto offer = [&](Formula f, Valuation v) {
    if (out.size() >= budget) return;
    std::vector<Rational> key(v.values().begin(), v.values().end());
    if (!seen.insert(std::move(key)).second) return;
    out.push_back({std::move(f), std::move(v)});
  };
  const auto pointwise = [&](const Valuation& a, const Valuation& b, auto op) {
    std::vector<Rational> r(a.size());
    for (StateId x = 0; x < a.size(); ++x) r[x] = op(a[x], b[x]);
    return Valuation(std::move(r));
  };
  const auto add = [](const Rational& p, const Rational& q) { return p + q; };
  const auto hi_of = [](const Rational& p, const Rational& q) { return max(p, q); };
  const auto lo_of = [](const Rational& p, const Rational& q) { return min(p, q); };

  std::vector<Rational> scalars;
  for (const auto& q : stern_brocot(constants)) {
    if (q != Rational(1)) scalars.push_back(q);
    scalars.push_back(-q);
  }

  offer(Formula::one(), Valuation::constant(m.num_states(), 1));
  for (const auto& [name, v] : m.props()) offer(Formula::prop(name), v);
  std::size_t lo = 0;
  while (out.size() < budget) {
    const std::size_t hi = out.size();
    if (lo == hi) break;
    for (std::size_t i = lo; i < hi; ++i)
      for (LabelId a = 0; a < m.num_labels(); ++a)
        offer(Formula::diamond(m.label(a).name, out[i].formula), diamond(m, a, out[i].value));
    for (std::size_t i = lo; i < hi; ++i)
      for (const auto& q : scalars) {
        const Valuation v = out[i].value;
        offer(Formula::scale(q, out[i].formula), pointwise(v, v, [&](const Rational& p, const Rational&) { return q * p; }));
      }
    for (std::size_t j = lo; j < hi && out.size() < budget; ++j)
      for (std::size_t i = 0; i <= j && out.size() < budget; ++i) {
        const Formula a = out[i].formula;
        const Formula b = out[j].formula;
        const Valuation va = out[i].value;
        const Valuation vb = out[j].value;
        offer(Formula::plus(a, b), pointwise(va, vb, add));
        offer(Formula::join(a, b), pointwise(va, vb, hi_of));
        offer(Formula::meet(a, b), pointwise(va, vb, lo_of));
      }
    lo = hi;
  }
  return out;
}

Partition semantic_kernel(const Pnts& m, std::size_t budget, const std::vector<Formula>& extra) {
  if (budget == 0) throw ResourceError("semantic_kernel needs a budget of at least one formula");
  std::vector<std::vector<Rational>> rows(m.num_states());
  const auto add = [&](const Valuation& v) {
    for (StateId x = 0; x < m.num_states(); ++x) rows[x].push_back(v[x]);
  };
  for (const auto& e : enumerate_r_formulas(m, budget)) add(e.value);
  for (const auto& f : extra) add(evaluate_exact(m, f));
  std::map<std::vector<Rational>, std::size_t> ids;
  std::vector<std::size_t> keys(m.num_states());
  for (StateId x = 0; x < m.num_states(); ++x)
    keys[x] = ids.try_emplace(rows[x], ids.size()).first->second;
  return Partition::from_keys(keys);
}

}  // namespace pnts
