#include "pnts/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "pnts/error.hpp"

namespace pnts {

namespace {

template <class T>
T from_rational(const Rational& q) {
  if constexpr (std::is_same_v<T, double>)
    return q.to_double();
  else
    return q;
}

double as_double(const Rational& q) { return q.to_double(); }
double as_double(double d) { return d; }

template <class T>
struct SparseDist {
  std::vector<std::pair<StateId, T>> entries;
};

// Free variables per node, restricted to names bound somewhere in the root.
void collect_binders(const Formula& f, std::unordered_set<const FormulaNode*>& seen,
                     std::set<std::string>& out) {
  if (!f.valid() || !seen.insert(f.get()).second) return;
  const auto& n = f.node();
  if (n.op == Op::mu || n.op == Op::nu) out.insert(n.name);
  collect_binders(n.a, seen, out);
  collect_binders(n.b, seen, out);
}

template <class T>
class Evaluator {
public:
  using Vec = std::vector<T>;

  Evaluator(const Pnts& m, const Formula& root, const Environment& env, const EvalOptions& opt)
      : m_(m), opt_(opt) {
    std::unordered_set<const FormulaNode*> seen;
    collect_binders(root, seen, binders_);
    check_range_ = opt.logic && opt.logic->unit_valued();
    for (const auto& [name, v] : env) {
      if (v.size() != m.num_states())
        throw DimensionError("environment value for '" + name + "' does not match the model");
      Vec w(v.size());
      for (StateId x = 0; x < v.size(); ++x) w[x] = from_rational<T>(v[x]);
      if (check_range_) assert_unit(w, "variable " + name);
      fixed_env_[name] = std::move(w);
    }
    dists_.resize(m.num_labels());
    for (LabelId a = 0; a < m.num_labels(); ++a) {
      dists_[a].resize(m.num_states());
      for (StateId x = 0; x < m.num_states(); ++x)
        for (const auto& mu : m.successors(x, a)) {
          SparseDist<T> d;
          for (StateId z = 0; z < mu.size(); ++z)
            if (mu[z].sign() != 0) d.entries.emplace_back(z, from_rational<T>(mu[z]));
          dists_[a][x].push_back(std::move(d));
        }
    }
  }

  Vec run(const Formula& f) { return eval(f); }

  std::size_t iterations = 0;
  double residual = 0.0;

private:
  const std::set<std::string>& free_of(const Formula& f) {
    auto it = free_.find(f.get());
    if (it != free_.end()) return it->second;
    std::set<std::string> out;
    const auto& n = f.node();
    if (n.op == Op::var) {
      out.insert(n.name);
    } else {
      if (n.a.valid()) out = free_of(n.a);
      if (n.b.valid()) {
        const auto& fb = free_of(n.b);
        out.insert(fb.begin(), fb.end());
      }
      if (n.op == Op::mu || n.op == Op::nu) out.erase(n.name);
    }
    return free_.emplace(f.get(), std::move(out)).first->second;
  }

  bool cacheable(const Formula& f) {
    for (const auto& v : free_of(f))
      if (binders_.count(v)) return false;
    return true;
  }

  void assert_unit(const Vec& v, const std::string& what) const {
    for (const T& t : v) {
      const double d = as_double(t);
      if (d < -1e-12 || d > 1 + 1e-12)
        throw LogicError(what + " leaves [0,1] (value " + std::to_string(d) + ")");
    }
  }

  LabelId resolve_label(const std::string& name) const {
    if (name.empty()) {
      if (m_.num_labels() != 1)
        throw LogicError("'<>' needs a model with exactly one label");
      return 0;
    }
    auto a = m_.find_label(name);
    if (!a) throw LogicError("unknown label '" + name + "'");
    return *a;
  }

  Vec diamond(LabelId a, const Vec& f) const {
    Vec out(m_.num_states(), T(0));
    for (StateId x = 0; x < m_.num_states(); ++x) {
      bool first = true;
      for (const auto& d : dists_[a][x]) {
        T e(0);
        for (const auto& [z, p] : d.entries) e += p * f[z];
        if (first || out[x] < e) out[x] = e;
        first = false;
      }
    }
    return out;
  }

  Vec eval(const Formula& f) {
    const bool cache = cacheable(f);
    if (cache) {
      auto it = memo_.find(f.get());
      if (it != memo_.end()) return it->second;
    }
    Vec v = compute(f);
    if (check_range_) assert_unit(v, "subformula " + to_string(f));
    if (cache) memo_.emplace(f.get(), v);
    return v;
  }

  Vec compute(const Formula& f) {
    const auto& n = f.node();
    const std::size_t size = m_.num_states();
    switch (n.op) {
      case Op::one: return Vec(size, T(1));
      case Op::zero: return Vec(size, T(0));
      case Op::scale: {
        Vec a = eval(n.a);
        const T q = from_rational<T>(n.q);
        for (auto& t : a) t = q * t;
        return a;
      }
      case Op::plus:
      case Op::join:
      case Op::meet:
      case Op::prod:
      case Op::oplus: {
        Vec a = eval(n.a);
        const Vec b = eval(n.b);
        for (std::size_t i = 0; i < size; ++i) {
          switch (n.op) {
            case Op::plus: a[i] = a[i] + b[i]; break;
            case Op::join: if (a[i] < b[i]) a[i] = b[i]; break;
            case Op::meet: if (b[i] < a[i]) a[i] = b[i]; break;
            case Op::prod: a[i] = a[i] * b[i]; break;
            default: {
              T s = a[i] + b[i];
              a[i] = s < T(1) ? s : T(1);
            }
          }
        }
        return a;
      }
      case Op::neg: {
        Vec a = eval(n.a);
        for (auto& t : a) t = T(1) - t;
        return a;
      }
      case Op::minus: {
        Vec a = eval(n.a);
        const T q = from_rational<T>(n.q);
        for (auto& t : a) {
          T s = t - q;
          t = s < T(0) ? T(0) : s;
        }
        return a;
      }
      case Op::diamond: return diamond(resolve_label(n.name), eval(n.a));
      case Op::prop: {
        auto it = m_.props().find(n.name);
        if (it == m_.props().end()) throw LogicError("unknown proposition '" + n.name + "'");
        Vec out(size);
        for (StateId x = 0; x < size; ++x) out[x] = from_rational<T>(it->second[x]);
        return out;
      }
      case Op::var: {
        auto it = env_.find(n.name);
        if (it != env_.end() && !it->second.empty()) return it->second.back();
        auto jt = fixed_env_.find(n.name);
        if (jt == fixed_env_.end()) throw LogicError("unbound variable '" + n.name + "'");
        return jt->second;
      }
      case Op::mu:
      case Op::nu: return fixpoint(n);
    }
    throw LogicError("unknown connective");
  }

  Vec fixpoint(const FormulaNode& n) {
    const bool least = n.op == Op::mu;
    auto& stack = env_[n.name];
    stack.push_back(Vec(m_.num_states(), least ? T(0) : T(1)));
    std::vector<double> trace;
    for (std::size_t k = 0;; ++k) {
      if (k >= limit()) {
        const double r = step_size_;
        stack.pop_back();
        throw ResourceError("fixpoint " + std::string(least ? "mu " : "nu ") + n.name +
                            " did not stabilize within " + std::to_string(limit()) +
                            " iterations (residual " + std::to_string(r) + ")");
      }
      Vec next = eval(n.a);
      ++iterations;
      const Vec& cur = stack.back();
      double step = 0.0;
      bool same = true;
      for (std::size_t i = 0; i < next.size(); ++i) {
        step = std::max(step, std::fabs(as_double(next[i]) - as_double(cur[i])));
        if (!(next[i] == cur[i])) same = false;
      }
      step_size_ = step;
      if (opt_.on_iterate) {
        trace.resize(next.size());
        for (std::size_t i = 0; i < next.size(); ++i) trace[i] = as_double(next[i]);
        opt_.on_iterate(n.name, least, trace);
      }
      stack.back() = std::move(next);
      const bool done = std::is_same_v<T, double> ? (same || step < opt_.epsilon) : same;
      if (done) {
        residual = std::max(residual, step);
        Vec out = std::move(stack.back());
        stack.pop_back();
        return out;
      }
    }
  }

  std::size_t limit() const {
    if constexpr (std::is_same_v<T, double>)
      return opt_.max_iterations;
    else
      return std::min<std::size_t>(opt_.max_iterations, exact_iteration_limit);
  }

  static constexpr std::size_t exact_iteration_limit = 10'000;

  const Pnts& m_;
  const EvalOptions& opt_;
  bool check_range_ = false;
  std::set<std::string> binders_;
  std::map<std::string, Vec> fixed_env_;
  std::map<std::string, std::vector<Vec>> env_;
  std::vector<std::vector<std::vector<SparseDist<T>>>> dists_;
  std::unordered_map<const FormulaNode*, std::set<std::string>> free_;
  std::unordered_map<const FormulaNode*, Vec> memo_;
  double step_size_ = 0.0;
};

bool contains_binder(const Formula& f) {
  std::unordered_set<const FormulaNode*> seen;
  std::set<std::string> binders;
  collect_binders(f, seen, binders);
  return !binders.empty();
}

}  // namespace

EvalResult evaluate(const Pnts& m, const Formula& f, const Environment& env,
                    const EvalOptions& options) {
  if (!f.valid()) throw LogicError("empty formula");
  if (options.logic) check_admissible(f, *options.logic);
  EvalResult r;
  if (!contains_binder(f) || options.exact_fixpoints) {
    Evaluator<Rational> ev(m, f, env, options);
    std::vector<Rational> v = ev.run(f);
    r.exact = true;
    r.iterations = ev.iterations;
    r.residual = 0.0;
    r.values = Valuation(std::move(v));
    r.approx = r.values->to_double();
    return r;
  }
  Evaluator<double> ev(m, f, env, options);
  r.exact = false;
  r.approx = ev.run(f);
  r.iterations = ev.iterations;
  r.residual = ev.residual;
  return r;
}

Valuation evaluate_exact(const Pnts& m, const Formula& f, const Environment& env) {
  if (contains_binder(f)) throw LogicError("evaluate_exact: formula has fixpoints");
  return *evaluate(m, f, env).values;
}

Valuation diamond(const Pnts& m, LabelId a, const Valuation& f) {
  if (f.size() != m.num_states()) throw DimensionError("diamond: valuation does not match the model");
  std::vector<Rational> out(m.num_states());
  for (StateId x = 0; x < m.num_states(); ++x) {
    bool first = true;
    for (const auto& mu : m.successors(x, a)) {
      Rational e = expected_value(mu, f);
      if (first || out[x] < e) out[x] = e;
      first = false;
    }
  }
  return Valuation(std::move(out));
}

}  // namespace pnts
