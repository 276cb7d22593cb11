#include <algorithm>

#include "pnts/bisim.hpp"
#include "pnts/convex.hpp"
#include "pnts/error.hpp"
#include "pnts/logic_tools.hpp"

namespace pnts {

namespace {

// (h /\ 1) \/ 0
Formula clamp(Formula h) { return Formula::join(Formula::meet(std::move(h), Formula::one()), Formula::zero()); }

// Formula equal to 1 where s = high and 0 where s = low (clamped elsewhere).
Formula normalized(const Formula& s, const Rational& high, const Rational& low) {
  Formula shifted = low.sign() == 0 ? s : Formula::plus(s, Formula::scale(-low, Formula::one()));
  const Rational k = Rational(1) / (high - low);
  return clamp(k == Rational(1) ? shifted : Formula::scale(k, std::move(shifted)));
}

struct Round {
  Partition p;
  std::vector<Formula> indicator;  // per block
};

class Synthesizer {
public:
  Synthesizer(const Pnts& m, const SynthesisOptions& opt) : m_(m), opt_(opt) {}

  std::vector<Formula> indicators() {
    const auto trace = refinement_trace(m_, BisimKind::ue);
    if (trace.size() - 1 > opt_.max_depth)
      throw ResourceError("separators need modal depth " + std::to_string(trace.size() - 1) +
                          "; the cap is " + std::to_string(opt_.max_depth));
    Round cur{trace.front(), initial_indicators(trace.front())};
    for (std::size_t r = 1; r < trace.size(); ++r) cur = refine(cur, trace[r]);
    return cur.indicator;
  }

private:
  std::vector<Formula> initial_indicators(const Partition& p) {
    std::vector<Formula> out;
    for (std::size_t b = 0; b < p.num_blocks(); ++b) {
      const StateId x = p.block(b).front();
      Formula ind;
      for (std::size_t c = 0; c < p.num_blocks(); ++c) {
        if (c == b) continue;
        const StateId y = p.block(c).front();
        for (const auto& [name, v] : m_.props()) {
          if (v[x] == v[y]) continue;
          Formula sep = normalized(Formula::prop(name), v[x], v[y]);
          ind = ind.valid() ? Formula::meet(std::move(ind), std::move(sep)) : std::move(sep);
          break;
        }
      }
      out.push_back(ind.valid() ? ind : Formula::one());
    }
    return out;
  }

  // <a>(sum_C f_C * I_C), equal to ue_{alpha_a}(lift f) at every state.
  Formula experiment_formula(LabelId a, const Valuation& f_on_blocks, const Round& prev) {
    Formula body;
    for (std::size_t c = 0; c < prev.p.num_blocks(); ++c) {
      const Rational& w = f_on_blocks[c];
      if (w.sign() == 0) continue;
      Formula term = w == Rational(1) ? prev.indicator[c] : Formula::scale(w, prev.indicator[c]);
      body = body.valid() ? Formula::plus(std::move(body), std::move(term)) : std::move(term);
    }
    if (!body.valid()) body = Formula::zero();
    return Formula::diamond(m_.label(a).name, std::move(body));
  }

  // Formula that is 1 on the block of x and 0 on the block of y, both blocks
  // of `next` inside one block of prev.p.
  Formula pair_separator(StateId x, StateId y, const Round& prev) {
    for (LabelId a = 0; a < m_.num_labels(); ++a) {
      auto sep = separate_hulls(quotient_generators(m_.successors(x, a), prev.p),
                                quotient_generators(m_.successors(y, a), prev.p));
      if (!sep) continue;
      const Valuation lifted = lift(sep->f, prev.p);
      const Rational vx = upper_expectation(m_.successors(x, a), lifted);
      const Rational vy = upper_expectation(m_.successors(y, a), lifted);
      return normalized(experiment_formula(a, sep->f, prev), vx, vy);
    }
    throw LogicError("synthesis: no label separates " + m_.state_name(x) + " from " +
                     m_.state_name(y));
  }

  Round refine(const Round& prev, const Partition& next) {
    Round out{next, {}};
    for (std::size_t b = 0; b < next.num_blocks(); ++b) {
      const StateId x = next.block(b).front();
      const std::size_t parent = prev.p.block_of(x);
      Formula ind = prev.indicator[parent];
      std::vector<Formula> used;
      for (std::size_t c = 0; c < next.num_blocks(); ++c) {
        const StateId y = next.block(c).front();
        if (c == b || prev.p.block_of(y) != parent) continue;
        Formula sep = pair_separator(x, y, prev);
        if (std::find(used.begin(), used.end(), sep) != used.end()) continue;
        used.push_back(sep);
        ind = ind.op() == Op::one ? sep : Formula::meet(std::move(ind), std::move(sep));
      }
      out.indicator.push_back(std::move(ind));
    }
    return out;
  }

  const Pnts& m_;
  const SynthesisOptions& opt_;
};

}  // namespace

std::vector<Formula> block_indicators(const Pnts& m, const SynthesisOptions& options) {
  return Synthesizer(m, options).indicators();
}

Formula synthesize_formula(const Pnts& m, const Valuation& target, const SynthesisOptions& options) {
  if (target.size() != m.num_states()) throw DimensionError("target does not match the model");
  const Partition ue = bisimilarity(m, BisimKind::ue);
  if (!is_invariant(target, ue))
    throw LogicError("target is not constant on UE-bisimilarity blocks");

  Formula f;
  bool constant = true;
  for (StateId x = 1; x < m.num_states(); ++x) constant = constant && target[x] == target[0];
  if (constant) {
    f = Formula::scale(m.num_states() ? target[0] : Rational(0), Formula::one());
  } else {
    const auto ind = block_indicators(m, options);
    for (std::size_t b = 0; b < ue.num_blocks(); ++b) {
      const Rational& t = target[ue.block(b).front()];
      if (t.sign() == 0) continue;
      Formula term = t == Rational(1) ? ind[b] : Formula::scale(t, ind[b]);
      f = f.valid() ? Formula::plus(std::move(f), std::move(term)) : std::move(term);
    }
  }
  if (!(evaluate_exact(m, f) == target))
    throw LogicError("synthesis self-check failed: formula does not evaluate to the target");
  return f;
}

}  // namespace pnts
