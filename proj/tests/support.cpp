#include "support.hpp"

#include <algorithm>

namespace pnts::testing {

Rational q(const char* text) { return Rational::parse(text); }

Distribution dist(std::initializer_list<const char*> entries) {
  std::vector<Rational> p;
  for (const char* e : entries) p.push_back(q(e));
  return Distribution(std::move(p));
}

Pnts fig1() {
  PntsBuilder b;
  const StateId x = b.add_state("x"), y = b.add_state("y"), x1 = b.add_state("x1");
  b.add_state("x2");
  const LabelId a = b.add_label("a");
  const auto mu1 = dist({"0", "0", "1/5", "4/5"});
  const auto mu2 = dist({"0", "0", "4/5", "1/5"});
  const auto mu3 = dist({"0", "0", "1/2", "1/2"});
  b.add_transition(x, a, mu1);
  b.add_transition(x, a, mu2);
  b.add_transition(y, a, mu1);
  b.add_transition(y, a, mu2);
  b.add_transition(y, a, mu3);
  b.add_transition(x1, a, Distribution::dirac(x1, 4));
  return b.build();
}

Pnts fig2() {
  PntsBuilder b;
  const StateId x = b.add_state("x"), y = b.add_state("y"), x1 = b.add_state("x1"),
                x2 = b.add_state("x2");
  b.add_state("x3");
  const LabelId a = b.add_label("a"), lb = b.add_label("b");
  const auto mu1 = dist({"0", "0", "3/10", "3/10", "2/5"});
  const auto mu2 = dist({"0", "0", "1/2", "2/5", "1/10"});
  const auto mu3 = dist({"0", "0", "2/5", "3/10", "3/10"});
  b.add_transition(x, a, mu1);
  b.add_transition(x, a, mu2);
  b.add_transition(y, a, mu1);
  b.add_transition(y, a, mu2);
  b.add_transition(y, a, mu3);
  b.add_transition(x1, a, Distribution::dirac(x1, 5));
  b.add_transition(x2, lb, Distribution::dirac(x2, 5));
  return b.build();
}

std::vector<Partition> all_partitions(std::size_t n) {
  std::vector<Partition> out;
  if (n == 0) return out;
  std::vector<std::size_t> rgs(n, 0);
  for (;;) {
    out.push_back(Partition::from_keys(rgs));
    // next restricted growth string
    std::size_t i = n - 1;
    for (;; --i) {
      if (i == 0) return out;
      const std::size_t mx = *std::max_element(rgs.begin(), rgs.begin() + static_cast<long>(i));
      if (rgs[i] <= mx) {
        ++rgs[i];
        std::fill(rgs.begin() + static_cast<long>(i) + 1, rgs.end(), 0);
        break;
      }
    }
  }
}

Partition brute_force_coarsest(std::size_t n, const std::function<bool(const Partition&)>& is_bisim,
                               bool* unique) {
  std::vector<Partition> accepted;
  for (auto& p : all_partitions(n))
    if (is_bisim(p)) accepted.push_back(std::move(p));
  auto best = std::min_element(accepted.begin(), accepted.end(), [](const Partition& a, const Partition& b) {
    return a.num_blocks() < b.num_blocks();
  });
  Partition result = best == accepted.end() ? Partition::discrete(n) : *best;
  if (unique) {
    *unique = true;
    for (const auto& p : accepted)
      if (!p.refines(result)) *unique = false;
  }
  return result;
}

Partition milner_park_bisimilarity(const std::vector<std::vector<StateId>>& succ) {
  const std::size_t n = succ.size();
  const auto matches = [&](const Partition& p, StateId x, StateId y) {
    for (StateId s : succ[x]) {
      bool found = false;
      for (StateId t : succ[y]) found = found || p.same_block(s, t);
      if (!found) return false;
    }
    return true;
  };
  return brute_force_coarsest(n, [&](const Partition& p) {
    for (StateId x = 0; x < n; ++x)
      for (StateId y = 0; y < n; ++y)
        if (p.same_block(x, y) && (!matches(p, x, y) || !matches(p, y, x))) return false;
    return true;
  });
}

namespace {

struct Gen {
  SplitMix64& rng;
  const Logic& logic;
  const FormulaGenParams& params;
  std::vector<std::string> vars;
  int next_var = 0;

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1)); }

  Rational scalar() {
    static const char* unit[] = {"0", "1/4", "1/3", "1/2", "2/3", "3/4", "1"};
    static const char* any[] = {"-2", "-1", "-1/2", "1/3", "1/2", "2", "3"};
    return logic.unit_valued() ? q(unit[pick(7)]) : q(any[pick(7)]);
  }

  Formula leaf() {
    const std::size_t options = 2 + (params.props.empty() ? 0 : 1) + (vars.empty() ? 0 : 2);
    const std::size_t c = pick(options);
    if (c == 0) return Formula::one();
    if (c == 1) return Formula::zero();
    if (!params.props.empty() && c == 2) return Formula::prop(params.props[pick(params.props.size())]);
    return Formula::var(vars[pick(vars.size())]);
  }

  std::vector<Op> ops() const {
    std::vector<Op> out{Op::join, Op::meet, Op::diamond, Op::diamond, Op::scale};
    if (!logic.unit_valued()) out.push_back(Op::plus);
    if (logic.unit_valued()) out.push_back(Op::neg);
    const auto b = logic.base;
    if (b == LogicBase::ql_prod || b == LogicBase::unit) out.push_back(Op::prod);
    if (b == LogicBase::ql_minus || b == LogicBase::luk || b == LogicBase::unit) out.push_back(Op::minus);
    if (b == LogicBase::luk || b == LogicBase::unit) out.push_back(Op::oplus);
    if (logic.fixpoints) {
      out.push_back(Op::mu);
      out.push_back(Op::nu);
    }
    return out;
  }

  Formula make(std::size_t depth) {
    if (depth == 0 || rng.coin(1, 5)) return leaf();
    const auto choices = ops();
    const Op op = choices[pick(choices.size())];
    switch (op) {
      case Op::scale: return Formula::scale(scalar(), make(depth - 1));
      case Op::plus: return Formula::plus(make(depth - 1), make(depth - 1));
      case Op::join: return Formula::join(make(depth - 1), make(depth - 1));
      case Op::meet: return Formula::meet(make(depth - 1), make(depth - 1));
      case Op::prod: return Formula::prod(make(depth - 1), make(depth - 1));
      case Op::oplus: return Formula::oplus(make(depth - 1), make(depth - 1));
      case Op::neg: return Formula::neg(make(depth - 1));
      case Op::minus: return Formula::minus(make(depth - 1), scalar());
      case Op::diamond: return Formula::diamond(params.labels[pick(params.labels.size())], make(depth - 1));
      case Op::mu:
      case Op::nu: {
        std::string v = "v" + std::to_string(next_var++);
        vars.push_back(v);
        Formula body = make(depth - 1);
        vars.pop_back();
        return op == Op::mu ? Formula::mu(v, body) : Formula::nu(v, body);
      }
      default: return leaf();
    }
  }
};

}  // namespace

Formula random_formula(SplitMix64& rng, const Logic& logic, const FormulaGenParams& params) {
  for (;;) {
    Gen g{rng, logic, params, {}, 0};
    Formula f = g.make(params.max_depth);
    if (is_admissible(f, logic) && free_variables(f).empty()) return f;
  }
}

std::vector<Logic> all_logics() {
  std::vector<Logic> out;
  for (LogicBase b : {LogicBase::r, LogicBase::ql, LogicBase::ql_minus, LogicBase::ql_prod, LogicBase::luk})
    out.push_back({b, false});
  for (LogicBase b : {LogicBase::ql, LogicBase::ql_minus, LogicBase::ql_prod, LogicBase::luk, LogicBase::unit})
    out.push_back({b, true});
  return out;
}

}  // namespace pnts::testing
