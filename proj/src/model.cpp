#include "pnts/model.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "pnts/error.hpp"

namespace pnts {

// ---------------------------------------------------------------- Distribution

Distribution::Distribution(std::vector<Rational> probabilities) : p_(std::move(probabilities)) {
  Rational total;
  for (const auto& v : p_) {
    if (v.sign() < 0) throw ModelError("distribution has a negative entry " + v.str());
    total += v;
  }
  if (total != Rational(1))
    throw ModelError("distribution sums to " + total.str() + " instead of 1");
}

Distribution Distribution::dirac(StateId x, std::size_t num_states) {
  if (x >= num_states)
    throw ModelError("dirac: state index " + std::to_string(x) + " out of range for " +
                     std::to_string(num_states) + " states");
  std::vector<Rational> p(num_states);
  p[x] = 1;
  return Distribution(std::move(p));
}

Distribution dirac(StateId x, std::size_t num_states) { return Distribution::dirac(x, num_states); }

std::vector<StateId> Distribution::support() const {
  std::vector<StateId> s;
  for (StateId x = 0; x < p_.size(); ++x)
    if (p_[x].sign() > 0) s.push_back(x);
  return s;
}

// ------------------------------------------------------------------- Valuation

Valuation::Valuation(std::vector<Rational> values, bool unit_interval)
    : v_(std::move(values)), unit_(unit_interval) {
  if (unit_) {
    for (const auto& v : v_)
      if (v.sign() < 0 || v > Rational(1))
        throw ModelError("[0,1]-valued valuation has entry " + v.str());
  }
}

Valuation Valuation::constant(std::size_t n, const Rational& c) {
  return Valuation(std::vector<Rational>(n, c));
}

std::vector<double> Valuation::to_double() const {
  std::vector<double> out(v_.size());
  std::transform(v_.begin(), v_.end(), out.begin(), [](const Rational& r) { return r.to_double(); });
  return out;
}

// ---------------------------------------------------------------- GeneratorSet

GeneratorSet::GeneratorSet(std::size_t dimension, std::vector<Distribution> generators)
    : dim_(dimension), gens_(std::move(generators)) {
  for (const auto& g : gens_)
    if (g.size() != dim_)
      throw DimensionError("generator of dimension " + std::to_string(g.size()) +
                           " in a set of dimension " + std::to_string(dim_));
  std::sort(gens_.begin(), gens_.end());
  gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
}

// ------------------------------------------------------------------- Partition

Partition Partition::total(std::size_t n) {
  std::vector<std::size_t> keys(n, 0);
  return from_keys(keys);
}

Partition Partition::discrete(std::size_t n) {
  std::vector<std::size_t> keys(n);
  std::iota(keys.begin(), keys.end(), 0);
  return from_keys(keys);
}

Partition Partition::from_keys(std::span<const std::size_t> keys) {
  Partition p;
  std::map<std::size_t, std::size_t> index;
  p.block_of_.resize(keys.size());
  for (StateId x = 0; x < keys.size(); ++x) {
    auto [it, inserted] = index.try_emplace(keys[x], p.blocks_.size());
    if (inserted) p.blocks_.emplace_back();
    p.blocks_[it->second].push_back(x);
    p.block_of_[x] = it->second;
  }
  return p;
}

Partition Partition::from_blocks(std::vector<std::vector<StateId>> blocks, std::size_t n) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> keys(n, unset);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw ModelError("partition has an empty block");
    for (StateId x : blocks[b]) {
      if (x >= n) throw ModelError("partition mentions unknown state " + std::to_string(x));
      if (keys[x] != unset)
        throw ModelError("state " + std::to_string(x) + " occurs in two blocks");
      keys[x] = b;
    }
  }
  for (StateId x = 0; x < n; ++x)
    if (keys[x] == unset) throw ModelError("partition does not cover state " + std::to_string(x));
  return from_keys(keys);
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.num_states() != num_states()) return false;
  for (const auto& b : blocks_)
    for (StateId x : b)
      if (coarser.block_of(x) != coarser.block_of(b.front())) return false;
  return true;
}

// ----------------------------------------------------------------- PntsBuilder

StateId PntsBuilder::add_state(std::string name) {
  if (find_state(name)) throw ModelError("duplicate state name '" + name + "'");
  states_.push_back(std::move(name));
  return states_.size() - 1;
}

LabelId PntsBuilder::add_label(std::string name, LabelKind kind) {
  if (find_label(name)) throw ModelError("duplicate label name '" + name + "'");
  if (name == "tau") kind = LabelKind::tau;
  labels_.push_back(Label{std::move(name), kind, std::nullopt});
  return labels_.size() - 1;
}

void PntsBuilder::set_complement(LabelId a, LabelId b) {
  if (a >= labels_.size() || b >= labels_.size()) throw ModelError("unknown label in complement");
  if (a == b) throw ModelError("label '" + labels_[a].name + "' cannot be its own complement");
  for (LabelId l : {a, b}) {
    if (labels_[l].kind == LabelKind::tau) throw ModelError("tau has no complement");
  }
  if ((labels_[a].complement && *labels_[a].complement != b) ||
      (labels_[b].complement && *labels_[b].complement != a))
    throw ModelError("conflicting complement for '" + labels_[a].name + "'/'" + labels_[b].name +
                     "'");
  labels_[a].complement = b;
  labels_[b].complement = a;
  if (labels_[a].kind != LabelKind::co_name) labels_[b].kind = LabelKind::co_name;
}

void PntsBuilder::add_transition(StateId from, LabelId label, Distribution mu) {
  edges_.push_back(Edge{from, label, std::move(mu)});
}

void PntsBuilder::set_prop(std::string name, Valuation values) {
  props_[std::move(name)] = std::move(values);
}

std::optional<StateId> PntsBuilder::find_state(std::string_view name) const {
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end()) return std::nullopt;
  return static_cast<StateId>(it - states_.begin());
}

std::optional<LabelId> PntsBuilder::find_label(std::string_view name) const {
  for (LabelId a = 0; a < labels_.size(); ++a)
    if (labels_[a].name == name) return a;
  return std::nullopt;
}

Pnts PntsBuilder::build() const {
  const std::size_t n = states_.size();
  Pnts m;
  m.states_ = states_;
  m.labels_ = labels_;
  std::vector<std::vector<std::vector<Distribution>>> raw(
      labels_.size(), std::vector<std::vector<Distribution>>(n));
  for (const auto& e : edges_) {
    if (e.from >= n) throw ModelError("transition from unknown state " + std::to_string(e.from));
    if (e.label >= labels_.size())
      throw ModelError("transition with unknown label " + std::to_string(e.label));
    if (e.mu.size() != n)
      throw DimensionError("transition distribution has dimension " + std::to_string(e.mu.size()) +
                           ", model has " + std::to_string(n) + " states");
    raw[e.label][e.from].push_back(e.mu);
  }
  m.trans_.resize(labels_.size());
  for (LabelId a = 0; a < labels_.size(); ++a)
    for (StateId x = 0; x < n; ++x) m.trans_[a].emplace_back(n, std::move(raw[a][x]));
  for (const auto& [name, v] : props_)
    if (v.size() != n)
      throw DimensionError("proposition '" + name + "' has dimension " + std::to_string(v.size()));
  m.props_ = props_;
  return m;
}

// ------------------------------------------------------------------------ Pnts

std::optional<StateId> Pnts::find_state(std::string_view name) const {
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end()) return std::nullopt;
  return static_cast<StateId>(it - states_.begin());
}

std::optional<LabelId> Pnts::find_label(std::string_view name) const {
  for (LabelId a = 0; a < labels_.size(); ++a)
    if (labels_[a].name == name) return a;
  return std::nullopt;
}

StateId Pnts::state(std::string_view name) const {
  if (auto x = find_state(name)) return *x;
  throw ModelError("unknown state '" + std::string(name) + "'");
}

LabelId Pnts::label_id(std::string_view name) const {
  if (auto a = find_label(name)) return *a;
  throw ModelError("unknown label '" + std::string(name) + "'");
}

// ------------------------------------------------------------------ operations

Rational expected_value(const Distribution& mu, const Valuation& f) {
  if (mu.size() != f.size())
    throw DimensionError("expected_value: distribution of dimension " + std::to_string(mu.size()) +
                         " against valuation of dimension " + std::to_string(f.size()));
  Rational sum;
  for (StateId x = 0; x < mu.size(); ++x)
    if (mu[x].sign() != 0) sum += mu[x] * f[x];
  return sum;
}

double expected_value(const Distribution& mu, std::span<const double> f) {
  if (mu.size() != f.size()) throw DimensionError("expected_value: dimension mismatch");
  double sum = 0.0;
  for (StateId x = 0; x < mu.size(); ++x)
    if (mu[x].sign() != 0) sum += mu[x].to_double() * f[x];
  return sum;
}

Distribution quotient_distribution(const Distribution& mu, const Partition& p) {
  if (mu.size() != p.num_states())
    throw DimensionError("quotient_distribution: distribution of dimension " +
                         std::to_string(mu.size()) + " against partition of " +
                         std::to_string(p.num_states()) + " states");
  std::vector<Rational> q(p.num_blocks());
  for (StateId x = 0; x < mu.size(); ++x)
    if (mu[x].sign() != 0) q[p.block_of(x)] += mu[x];
  return Distribution(std::move(q));
}

GeneratorSet quotient_generators(const GeneratorSet& a, const Partition& p) {
  std::vector<Distribution> q;
  q.reserve(a.size());
  for (const auto& mu : a) q.push_back(quotient_distribution(mu, p));
  return GeneratorSet(p.num_blocks(), std::move(q));
}

namespace {

std::string block_name(const Pnts& m, const std::vector<StateId>& block) {
  if (block.size() == 1) return m.state_name(block.front());
  std::string s = "[";
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (i) s += ",";
    s += m.state_name(block[i]);
  }
  return s + "]";
}

}  // namespace

Pnts quotient_model(const Pnts& m, const Partition& p) {
  if (p.num_states() != m.num_states())
    throw DimensionError("quotient_model: partition of " + std::to_string(p.num_states()) +
                         " states for a model of " + std::to_string(m.num_states()));
  PntsBuilder b;
  for (const auto& block : p.blocks()) b.add_state(block_name(m, block));
  for (const auto& l : m.labels()) b.add_label(l.name, l.kind);
  for (LabelId a = 0; a < m.num_labels(); ++a)
    if (const auto& c = m.label(a).complement; c && a < *c) b.set_complement(a, *c);
  for (LabelId a = 0; a < m.num_labels(); ++a)
    for (std::size_t blk = 0; blk < p.num_blocks(); ++blk)
      for (StateId x : p.block(blk))
        for (const auto& mu : m.successors(x, a)) b.add_transition(blk, a, quotient_distribution(mu, p));
  for (const auto& [name, v] : m.props()) {
    std::vector<Rational> q;
    for (const auto& block : p.blocks()) q.push_back(v[block.front()]);
    b.set_prop(name, Valuation(std::move(q), v.unit_interval()));
  }
  return b.build();
}

Valuation lift(const Valuation& on_blocks, const Partition& p) {
  if (on_blocks.size() != p.num_blocks()) throw DimensionError("lift: valuation is not over blocks");
  std::vector<Rational> v(p.num_states());
  for (StateId x = 0; x < p.num_states(); ++x) v[x] = on_blocks[p.block_of(x)];
  return Valuation(std::move(v));
}

bool is_invariant(const Valuation& f, const Partition& p) {
  if (f.size() != p.num_states()) throw DimensionError("is_invariant: dimension mismatch");
  for (const auto& block : p.blocks())
    for (StateId x : block)
      if (f[x] != f[block.front()]) return false;
  return true;
}

Distribution product_distribution(const Distribution& mu, const Distribution& nu,
                                  const std::function<StateId(StateId, StateId)>& pairing,
                                  std::size_t target_size) {
  std::vector<Rational> out(target_size);
  for (StateId x : mu.support())
    for (StateId y : nu.support()) {
      const StateId z = pairing(x, y);
      if (z >= target_size)
        throw ModelError("product_distribution: pairing target " + std::to_string(z) +
                         " out of range");
      out[z] += mu[x] * nu[y];
    }
  return Distribution(std::move(out));
}

namespace {

std::vector<std::string> default_names(std::vector<std::string> names, std::size_t n) {
  if (names.empty())
    for (std::size_t i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
  if (names.size() != n) throw ModelError("state name table does not match the state count");
  return names;
}

}  // namespace

Pnts embed_nts(const std::vector<std::vector<StateId>>& successors, std::vector<std::string> names,
               const std::string& label) {
  const std::size_t n = successors.size();
  PntsBuilder b;
  for (auto& name : default_names(std::move(names), n)) b.add_state(std::move(name));
  const LabelId a = b.add_label(label);
  for (StateId x = 0; x < n; ++x)
    for (StateId y : successors[x]) b.add_transition(x, a, Distribution::dirac(y, n));
  return b.build();
}

Pnts embed_mp(const std::vector<std::optional<Distribution>>& steps, std::vector<std::string> names,
              const std::string& label) {
  const std::size_t n = steps.size();
  PntsBuilder b;
  for (auto& name : default_names(std::move(names), n)) b.add_state(std::move(name));
  const LabelId a = b.add_label(label);
  for (StateId x = 0; x < n; ++x)
    if (steps[x]) b.add_transition(x, a, *steps[x]);
  return b.build();
}

}  // namespace pnts
