#include "pnts/compose.hpp"

#include <algorithm>
#include <map>

#include "pnts/error.hpp"
#include "pnts/random_models.hpp"

namespace pnts {

namespace {

struct Alphabet {
  std::vector<std::string> names;
  std::map<std::string, std::string> complement;

  LabelId id(const std::string& n) const {
    return static_cast<LabelId>(std::find(names.begin(), names.end(), n) - names.begin());
  }
};

Alphabet merge_labels(const Pnts& l, const Pnts& r) {
  Alphabet out;
  const auto absorb = [&](const Pnts& m) {
    for (const auto& lab : m.labels()) {
      if (std::find(out.names.begin(), out.names.end(), lab.name) == out.names.end())
        out.names.push_back(lab.name);
      if (!lab.complement) continue;
      const std::string& co = m.label(*lab.complement).name;
      auto it = out.complement.find(lab.name);
      if (it != out.complement.end() && it->second != co)
        throw ModelError("label '" + lab.name + "' has complement '" + it->second +
                         "' in one model and '" + co + "' in the other");
      out.complement[lab.name] = co;
    }
  };
  absorb(l);
  absorb(r);
  for (const auto& [a, co] : out.complement)
    if (out.complement.count(co) && out.complement.at(co) != a)
      throw ModelError("complement declarations for '" + a + "' and '" + co + "' disagree");
  if (!out.complement.empty() && std::find(out.names.begin(), out.names.end(), "tau") == out.names.end())
    out.names.push_back("tau");
  return out;
}

}  // namespace

Pnts parallel_compose(const Pnts& left, const Pnts& right) {
  const Alphabet alpha = merge_labels(left, right);
  const std::size_t nl = left.num_states();
  const std::size_t nr = right.num_states();
  const std::size_t n = nl * nr;
  const auto pairing = [nr](StateId x, StateId y) { return pair_index(x, y, nr); };

  PntsBuilder b;
  for (StateId x = 0; x < nl; ++x)
    for (StateId y = 0; y < nr; ++y) b.add_state(left.state_name(x) + "|" + right.state_name(y));
  for (const auto& name : alpha.names) b.add_label(name);
  for (const auto& [a, co] : alpha.complement)
    if (a < co) b.set_complement(alpha.id(a), alpha.id(co));

  for (StateId x = 0; x < nl; ++x)
    for (StateId y = 0; y < nr; ++y) {
      const StateId z = pairing(x, y);
      const Distribution dx = Distribution::dirac(x, nl);
      const Distribution dy = Distribution::dirac(y, nr);
      for (LabelId a = 0; a < left.num_labels(); ++a)
        for (const auto& mu : left.successors(x, a))
          b.add_transition(z, alpha.id(left.label(a).name), product_distribution(mu, dy, pairing, n));
      for (LabelId a = 0; a < right.num_labels(); ++a)
        for (const auto& nu : right.successors(y, a))
          b.add_transition(z, alpha.id(right.label(a).name), product_distribution(dx, nu, pairing, n));
      for (LabelId a = 0; a < left.num_labels(); ++a) {
        auto co = alpha.complement.find(left.label(a).name);
        if (co == alpha.complement.end()) continue;
        auto rb = right.find_label(co->second);
        if (!rb) continue;
        for (const auto& mu : left.successors(x, a))
          for (const auto& nu : right.successors(y, *rb))
            b.add_transition(z, alpha.id("tau"), product_distribution(mu, nu, pairing, n));
      }
    }

  const auto lift_prop = [&](const std::string& prefix, const Valuation& v, bool on_left) {
    std::vector<Rational> out(n);
    for (StateId x = 0; x < nl; ++x)
      for (StateId y = 0; y < nr; ++y) out[pairing(x, y)] = on_left ? v[x] : v[y];
    b.set_prop(prefix, Valuation(std::move(out), v.unit_interval()));
  };
  for (const auto& [name, v] : left.props()) lift_prop("l." + name, v, true);
  for (const auto& [name, v] : right.props()) lift_prop("r." + name, v, false);
  return b.build();
}

namespace {

void check_partner(const Pnts& m1, const Partition& e1, const Pnts& partner, const std::string& tag,
                   CongruenceReport& report) {
  const Pnts lr = parallel_compose(m1, partner);
  const Pnts rl = parallel_compose(partner, m1);
  const Partition elr = bisimilarity(lr, BisimKind::ue);
  const Partition erl = bisimilarity(rl, BisimKind::ue);
  const std::size_t n1 = m1.num_states();
  const std::size_t n2 = partner.num_states();
  ++report.partners;
  for (const auto& block : e1.blocks())
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = i + 1; j < block.size(); ++j)
        for (StateId y = 0; y < n2; ++y) {
          const StateId x = block[i];
          const StateId x2 = block[j];
          report.pairs_checked += 2;
          const StateId a = pair_index(x, y, n2), b = pair_index(x2, y, n2);
          if (!elr.same_block(a, b)) {
            report.holds = false;
            report.violations.push_back({tag, false, x, x2, y, distinguishing_experiment(lr, a, b)});
          }
          const StateId c = pair_index(y, x, n1), d = pair_index(y, x2, n1);
          if (!erl.same_block(c, d)) {
            report.holds = false;
            report.violations.push_back({tag, true, x, x2, y, distinguishing_experiment(rl, c, d)});
          }
        }
}

}  // namespace

CongruenceReport congruence_check(const Pnts& m1, const Pnts& m2, std::size_t trials,
                                  std::uint64_t seed) {
  CongruenceReport report;
  const Partition e1 = bisimilarity(m1, BisimKind::ue);
  check_partner(m1, e1, m2, "given", report);
  SplitMix64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto n2 = static_cast<std::size_t>(rng.uniform_int(1, 3));
    PntsBuilder b;
    for (StateId y = 0; y < n2; ++y) b.add_state("t" + std::to_string(y));
    for (const auto& lab : m1.labels()) b.add_label(lab.name, lab.kind);
    for (LabelId a = 0; a < m1.num_labels(); ++a)
      if (const auto& c = m1.label(a).complement; c && a < *c) b.set_complement(a, *c);
    for (LabelId a = 0; a < m1.num_labels(); ++a)
      for (StateId y = 0; y < n2; ++y) {
        if (rng.coin(1, 3)) continue;
        for (const auto& mu : random_generator_set(rng, n2, 2, 4))
          b.add_transition(y, a, mu);
      }
    check_partner(m1, e1, b.build(), "random " + std::to_string(t), report);
  }
  return report;
}

}  // namespace pnts
