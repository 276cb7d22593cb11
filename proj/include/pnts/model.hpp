#pragma once

// Finite labeled probabilistic nondeterministic transition systems over exact
// rationals: distributions, valuations, partitions, quotients and embeddings.

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pnts/rational.hpp"

namespace pnts {

using StateId = std::size_t;
using LabelId = std::size_t;

/// Probability vector over a finite state table. Entries are nonnegative and
/// sum to exactly one.
class Distribution {
public:
  Distribution() = default;
  explicit Distribution(std::vector<Rational> probabilities);

  static Distribution dirac(StateId x, std::size_t num_states);

  std::size_t size() const { return p_.size(); }
  const Rational& operator[](StateId x) const { return p_[x]; }
  std::span<const Rational> probabilities() const { return p_; }
  std::vector<StateId> support() const;

  friend bool operator==(const Distribution&, const Distribution&) = default;
  friend auto operator<=>(const Distribution& a, const Distribution& b) {
    return std::lexicographical_compare_three_way(a.p_.begin(), a.p_.end(), b.p_.begin(),
                                                  b.p_.end());
  }

private:
  std::vector<Rational> p_;
};

Distribution dirac(StateId x, std::size_t num_states);

/// Exact real-valued function on states. `unit_interval` marks valuations
/// that must stay inside [0,1].
class Valuation {
public:
  Valuation() = default;
  explicit Valuation(std::vector<Rational> values, bool unit_interval = false);

  static Valuation constant(std::size_t n, const Rational& c);

  std::size_t size() const { return v_.size(); }
  const Rational& operator[](StateId x) const { return v_[x]; }
  std::span<const Rational> values() const { return v_; }
  bool unit_interval() const { return unit_; }
  std::vector<double> to_double() const;

  friend bool operator==(const Valuation& a, const Valuation& b) { return a.v_ == b.v_; }

private:
  std::vector<Rational> v_;
  bool unit_ = false;
};

/// Finite duplicate-free list of distributions of equal dimension, kept in
/// lexicographic order. Stands for its (closed) convex hull.
class GeneratorSet {
public:
  GeneratorSet() = default;
  GeneratorSet(std::size_t dimension, std::vector<Distribution> generators);

  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return gens_.size(); }
  bool empty() const { return gens_.empty(); }
  const Distribution& operator[](std::size_t i) const { return gens_[i]; }
  const std::vector<Distribution>& generators() const { return gens_; }
  auto begin() const { return gens_.begin(); }
  auto end() const { return gens_.end(); }

  friend bool operator==(const GeneratorSet&, const GeneratorSet&) = default;

private:
  std::size_t dim_ = 0;
  std::vector<Distribution> gens_;
};

enum class LabelKind { plain, co_name, tau };

struct Label {
  std::string name;
  LabelKind kind = LabelKind::plain;
  std::optional<LabelId> complement;

  friend bool operator==(const Label&, const Label&) = default;
};

/// Partition of {0..n-1} into nonempty blocks. Blocks are sorted internally and
/// ordered by least member, so equal relations compare equal.
class Partition {
public:
  Partition() = default;

  static Partition total(std::size_t n);
  static Partition discrete(std::size_t n);
  static Partition from_blocks(std::vector<std::vector<StateId>> blocks, std::size_t n);
  /// Groups states by an arbitrary class key, one key per state.
  static Partition from_keys(std::span<const std::size_t> keys);

  std::size_t num_states() const { return block_of_.size(); }
  std::size_t num_blocks() const { return blocks_.size(); }
  std::size_t block_of(StateId x) const { return block_of_[x]; }
  const std::vector<StateId>& block(std::size_t b) const { return blocks_[b]; }
  const std::vector<std::vector<StateId>>& blocks() const { return blocks_; }
  bool same_block(StateId x, StateId y) const { return block_of_[x] == block_of_[y]; }
  /// True when every block of *this lies inside a block of `coarser`.
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }

private:
  std::vector<std::vector<StateId>> blocks_;
  std::vector<std::size_t> block_of_;
};

class Pnts;

class PntsBuilder {
public:
  StateId add_state(std::string name);
  LabelId add_label(std::string name, LabelKind kind = LabelKind::plain);
  /// Declares `a` and `b` complementary; the relation is symmetric.
  void set_complement(LabelId a, LabelId b);
  void add_transition(StateId from, LabelId label, Distribution mu);
  void set_prop(std::string name, Valuation values);

  std::size_t num_states() const { return states_.size(); }
  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<LabelId> find_label(std::string_view name) const;

  Pnts build() const;

private:
  struct Edge {
    StateId from;
    LabelId label;
    Distribution mu;
  };
  std::vector<std::string> states_;
  std::vector<Label> labels_;
  std::vector<Edge> edges_;
  std::map<std::string, Valuation> props_;
};

/// Immutable labeled PNTS. successors(x, a) is alpha_a(x).
class Pnts {
public:
  std::size_t num_states() const { return states_.size(); }
  std::size_t num_labels() const { return labels_.size(); }
  const std::string& state_name(StateId x) const { return states_[x]; }
  const std::vector<std::string>& state_names() const { return states_; }
  const Label& label(LabelId a) const { return labels_[a]; }
  const std::vector<Label>& labels() const { return labels_; }
  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<LabelId> find_label(std::string_view name) const;
  StateId state(std::string_view name) const;
  LabelId label_id(std::string_view name) const;

  const GeneratorSet& successors(StateId x, LabelId a) const { return trans_[a][x]; }
  const std::map<std::string, Valuation>& props() const { return props_; }

  friend bool operator==(const Pnts&, const Pnts&) = default;

private:
  friend class PntsBuilder;
  std::vector<std::string> states_;
  std::vector<Label> labels_;
  std::vector<std::vector<GeneratorSet>> trans_;  // [label][state]
  std::map<std::string, Valuation> props_;
};

Rational expected_value(const Distribution& mu, const Valuation& f);
double expected_value(const Distribution& mu, std::span<const double> f);

/// Pushes mu forward along x -> block_of(x).
Distribution quotient_distribution(const Distribution& mu, const Partition& p);
GeneratorSet quotient_generators(const GeneratorSet& a, const Partition& p);
/// States become blocks; a block's transitions are the union of its members'
/// quotiented transitions. Props take the value of the block's least member.
Pnts quotient_model(const Pnts& m, const Partition& p);

/// Valuation over blocks extended to states; constant on every block.
Valuation lift(const Valuation& on_blocks, const Partition& p);
bool is_invariant(const Valuation& f, const Partition& p);

/// Image of mu x nu under pairing: (x, y) -> target state in [0, target_size).
Distribution product_distribution(const Distribution& mu, const Distribution& nu,
                                  const std::function<StateId(StateId, StateId)>& pairing,
                                  std::size_t target_size);

/// Plain NTS (successor sets) as PNTS: alpha(x) = { dirac(y) | y in succ(x) }.
Pnts embed_nts(const std::vector<std::vector<StateId>>& successors,
               std::vector<std::string> names = {}, const std::string& label = "a");
/// Markov process as PNTS: terminal (nullopt) -> no transitions, mu -> {mu}.
Pnts embed_mp(const std::vector<std::optional<Distribution>>& steps,
              std::vector<std::string> names = {}, const std::string& label = "a");

}  // namespace pnts
