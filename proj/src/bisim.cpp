#include "pnts/bisim.hpp"

#include <algorithm>
#include <map>

#include "pnts/convex.hpp"
#include "pnts/error.hpp"

namespace pnts {

BisimKind parse_bisim_kind(const std::string& s) {
  if (s == "standard") return BisimKind::standard;
  if (s == "ue" || s == "convex") return BisimKind::ue;
  if (s == "up") return BisimKind::up;
  throw ParseError("unknown bisimulation kind '" + s + "'", 0);
}

std::string to_string(BisimKind k) {
  switch (k) {
    case BisimKind::standard: return "standard";
    case BisimKind::ue: return "ue";
    case BisimKind::up: return "up";
  }
  return "?";
}

Partition initial_partition(const Pnts& m) {
  std::map<std::vector<Rational>, std::size_t> classes;
  std::vector<std::size_t> keys(m.num_states());
  for (StateId x = 0; x < m.num_states(); ++x) {
    std::vector<Rational> sig;
    for (const auto& [name, v] : m.props()) sig.push_back(v[x]);
    keys[x] = classes.try_emplace(std::move(sig), classes.size()).first->second;
  }
  return Partition::from_keys(keys);
}

namespace {

// Upper probability of every union of blocks, indexed by block bitmask.
std::vector<Rational> up_signature(const GeneratorSet& quotiented, std::size_t blocks) {
  const std::size_t masks = std::size_t{1} << blocks;
  std::vector<Rational> best(masks);
  std::vector<Rational> mass(masks);
  for (const auto& mu : quotiented) {
    mass[0] = 0;
    for (std::size_t s = 1; s < masks; ++s) {
      const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(s));
      mass[s] = mass[s & (s - 1)] + mu[low];
      if (best[s] < mass[s]) best[s] = mass[s];
    }
  }
  return best;
}

// Per-state observable used to compare states within one refinement round.
struct Signature {
  std::vector<GeneratorSet> quotiented;          // per label
  std::vector<std::vector<Rational>> up_values;  // per label, kind == up only
};

Signature signature_of(const Pnts& m, const Partition& p, StateId x, BisimKind kind) {
  Signature s;
  for (LabelId a = 0; a < m.num_labels(); ++a) {
    s.quotiented.push_back(quotient_generators(m.successors(x, a), p));
    if (kind == BisimKind::up) s.up_values.push_back(up_signature(s.quotiented.back(), p.num_blocks()));
  }
  return s;
}

bool same_behaviour(const Signature& s, const Signature& t, BisimKind kind) {
  switch (kind) {
    case BisimKind::standard: return s.quotiented == t.quotiented;
    case BisimKind::up: return s.up_values == t.up_values;
    case BisimKind::ue:
      for (std::size_t a = 0; a < s.quotiented.size(); ++a)
        if (s.quotiented[a] != t.quotiented[a] && !hull_equal(s.quotiented[a], t.quotiented[a]))
          return false;
      return true;
  }
  return false;
}

}  // namespace

Partition refine_once(const Pnts& m, const Partition& p, BisimKind kind) {
  if (kind == BisimKind::up && p.num_blocks() > up_block_limit)
    throw ResourceError("UP refinement enumerates 2^" + std::to_string(p.num_blocks()) +
                        " unions of blocks; the limit is " + std::to_string(up_block_limit) +
                        " blocks");
  std::vector<std::size_t> keys(m.num_states());
  std::size_t next_key = 0;
  for (const auto& block : p.blocks()) {
    std::vector<std::pair<StateId, Signature>> groups;
    for (StateId x : block) {
      Signature sx = signature_of(m, p, x, kind);
      auto it = std::find_if(groups.begin(), groups.end(),
                             [&](const auto& g) { return same_behaviour(g.second, sx, kind); });
      if (it == groups.end()) {
        keys[x] = next_key + groups.size();
        groups.emplace_back(x, std::move(sx));
      } else {
        keys[x] = next_key + static_cast<std::size_t>(it - groups.begin());
      }
    }
    next_key += groups.size();
  }
  return Partition::from_keys(keys);
}

std::vector<Partition> refinement_trace(const Pnts& m, BisimKind kind) {
  std::vector<Partition> trace{initial_partition(m)};
  for (;;) {
    Partition next = refine_once(m, trace.back(), kind);
    if (next.num_blocks() == trace.back().num_blocks()) break;
    trace.push_back(std::move(next));
  }
  return trace;
}

Partition bisimilarity(const Pnts& m, BisimKind kind) { return refinement_trace(m, kind).back(); }

namespace {

std::optional<Experiment> prop_difference(const Pnts& m, StateId x, StateId y) {
  for (const auto& [name, v] : m.props())
    if (v[x] != v[y]) return Experiment{std::nullopt, name, v, abs(v[x] - v[y])};
  return std::nullopt;
}

std::optional<Experiment> hull_difference(const Pnts& m, const Partition& p, StateId x, StateId y) {
  for (LabelId a = 0; a < m.num_labels(); ++a) {
    auto sep = separate_hulls(quotient_generators(m.successors(x, a), p),
                              quotient_generators(m.successors(y, a), p));
    if (!sep) continue;
    Experiment e{a, std::nullopt, lift(sep->f, p), {}};
    e.gap = experiment_gap(m, x, y, e);
    return e;
  }
  return std::nullopt;
}

}  // namespace

BisimCheck is_ue_bisimulation(const Pnts& m, const Partition& p) {
  if (p.num_states() != m.num_states()) throw DimensionError("partition does not match the model");
  for (const auto& block : p.blocks()) {
    const StateId rep = block.front();
    for (std::size_t i = 1; i < block.size(); ++i) {
      const StateId y = block[i];
      auto e = prop_difference(m, rep, y);
      if (!e) e = hull_difference(m, p, rep, y);
      if (e) return BisimCheck{false, rep, y, std::move(e)};
    }
  }
  return BisimCheck{};
}

bool is_standard_bisimulation(const Pnts& m, const Partition& p) {
  return p.refines(initial_partition(m)) && refine_once(m, p, BisimKind::standard) == p;
}

bool is_up_bisimulation(const Pnts& m, const Partition& p) {
  return p.refines(initial_partition(m)) && refine_once(m, p, BisimKind::up) == p;
}

Rational experiment_gap(const Pnts& m, StateId x, StateId y, const Experiment& e) {
  if (!e.label) return abs(e.f[x] - e.f[y]);
  return abs(upper_expectation(m.successors(x, *e.label), e.f) -
             upper_expectation(m.successors(y, *e.label), e.f));
}

std::optional<Rational> check_certificate(const Pnts& m, StateId x, StateId y, const Experiment& e,
                                          const Partition& invariance) {
  if (e.f.size() != m.num_states()) return std::nullopt;
  if (e.label && *e.label >= m.num_labels()) return std::nullopt;
  if (!is_invariant(e.f, invariance)) return std::nullopt;
  Rational gap = experiment_gap(m, x, y, e);
  if (gap.sign() <= 0) return std::nullopt;
  return gap;
}

std::optional<Experiment> distinguishing_experiment(const Pnts& m, StateId x, StateId y) {
  if (x >= m.num_states() || y >= m.num_states()) throw ModelError("state index out of range");
  if (x == y) return std::nullopt;
  const auto trace = refinement_trace(m, BisimKind::ue);
  if (trace.back().same_block(x, y)) return std::nullopt;
  if (!trace.front().same_block(x, y)) return prop_difference(m, x, y);
  for (std::size_t k = 0; k + 1 < trace.size(); ++k)
    if (!trace[k + 1].same_block(x, y)) return hull_difference(m, trace[k], x, y);
  return std::nullopt;
}

}  // namespace pnts
