#include "pnts/lp.hpp"

#include <string>

#include "pnts/error.hpp"

namespace pnts::lp {

void Instance::set_bounds(std::size_t var, std::optional<Rational> lower,
                          std::optional<Rational> upper) {
  if (bounds.empty()) bounds.resize(num_vars());
  bounds.at(var) = Bounds{std::move(lower), std::move(upper)};
}

namespace {

// x_i = offset + sign * y_pos  (- y_neg when free)
struct VarMap {
  Rational offset;
  int sign = 1;
  std::size_t pos = 0;
  std::optional<std::size_t> neg;
};

struct Row {
  std::vector<Rational> a;  // over standard-form columns
  Rational b;
};

class Tableau {
public:
  Tableau(std::vector<Row> rows, std::size_t num_cols, std::vector<std::size_t> basis)
      : rows_(std::move(rows)), cols_(num_cols), basis_(std::move(basis)) {}

  // Minimizes cost over the current feasible basis; columns with allowed[j] false
  // never enter. Returns false when unbounded.
  bool minimize(const std::vector<Rational>& cost, const std::vector<bool>& allowed) {
    for (;;) {
      const auto reduced = reduced_costs(cost);
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < cols_; ++j)
        if (allowed[j] && reduced[j].sign() < 0) {
          entering = j;
          break;
        }
      if (!entering) return true;
      const std::size_t e = *entering;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& aij = rows_[i].a[e];
        if (aij.sign() <= 0) continue;
        Rational ratio = rows_[i].b / aij;
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (!leave) return false;
      pivot(*leave, e);
    }
  }

  Rational value(const std::vector<Rational>& cost) const {
    Rational v;
    for (std::size_t i = 0; i < rows_.size(); ++i) v += cost[basis_[i]] * rows_[i].b;
    return v;
  }

  std::vector<Rational> solution() const {
    std::vector<Rational> y(cols_);
    for (std::size_t i = 0; i < rows_.size(); ++i) y[basis_[i]] = rows_[i].b;
    return y;
  }

  // Pivots basic artificial columns (index >= first_artificial) out of the basis,
  // dropping rows that are linear combinations of the others.
  void expel_artificials(std::size_t first_artificial) {
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < first_artificial) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < first_artificial; ++j)
        if (rows_[i].a[j].sign() != 0) {
          col = j;
          break;
        }
      if (col) {
        pivot(i, *col);
        ++i;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

private:
  std::vector<Rational> reduced_costs(const std::vector<Rational>& cost) const {
    std::vector<Rational> r = cost;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb.sign() == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        if (rows_[i].a[j].sign() != 0) r[j] -= cb * rows_[i].a[j];
    }
    return r;
  }

  void pivot(std::size_t r, std::size_t e) {
    const Rational inv = Rational(1) / rows_[r].a[e];
    for (auto& v : rows_[r].a)
      if (v.sign() != 0) v *= inv;
    rows_[r].b *= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || rows_[i].a[e].sign() == 0) continue;
      const Rational factor = rows_[i].a[e];
      for (std::size_t j = 0; j < cols_; ++j)
        if (rows_[r].a[j].sign() != 0) rows_[i].a[j] -= factor * rows_[r].a[j];
      rows_[i].b -= factor * rows_[r].b;
    }
    basis_[r] = e;
  }

  std::vector<Row> rows_;
  std::size_t cols_;
  std::vector<std::size_t> basis_;
};

void validate(const Instance& p) {
  const std::size_t n = p.num_vars();
  for (const auto& c : p.constraints)
    if (c.coeffs.size() != n)
      throw DimensionError("LP constraint has " + std::to_string(c.coeffs.size()) +
                           " coefficients, instance has " + std::to_string(n) + " variables");
  if (!p.bounds.empty() && p.bounds.size() != n)
    throw DimensionError("LP bounds do not match the variable count");
  for (const auto& b : p.bounds)
    if (b.lower && b.upper && *b.upper < *b.lower)
      throw DimensionError("LP variable with upper bound below lower bound");
}

}  // namespace

Result solve(const Instance& p) {
  validate(p);
  const std::size_t n = p.num_vars();
  const auto bounds_of = [&](std::size_t i) { return p.bounds.empty() ? Bounds{} : p.bounds[i]; };

  // Column layout: structural y's, then slacks, then artificials.
  std::vector<VarMap> vars(n);
  std::size_t cols = 0;
  std::vector<std::pair<std::size_t, Rational>> upper_rows;  // (y column, bound) for y <= bound
  for (std::size_t i = 0; i < n; ++i) {
    const Bounds b = bounds_of(i);
    VarMap& v = vars[i];
    v.pos = cols++;
    if (b.lower) {
      v.offset = *b.lower;
      if (b.upper) upper_rows.emplace_back(v.pos, *b.upper - *b.lower);
    } else if (b.upper) {
      v.offset = *b.upper;
      v.sign = -1;
    } else {
      v.neg = cols++;
    }
  }
  const std::size_t structural = cols;

  struct Pending {
    std::vector<Rational> a;
    Relation rel;
    Rational b;
  };
  std::vector<Pending> pending;
  for (const auto& c : p.constraints) {
    Pending row{std::vector<Rational>(structural), c.relation, c.rhs};
    for (std::size_t i = 0; i < n; ++i) {
      const Rational& coef = c.coeffs[i];
      if (coef.sign() == 0) continue;
      row.b -= coef * vars[i].offset;
      row.a[vars[i].pos] += vars[i].sign > 0 ? coef : -coef;
      if (vars[i].neg) row.a[*vars[i].neg] -= coef;
    }
    pending.push_back(std::move(row));
  }
  for (auto& [col, ub] : upper_rows) {
    Pending row{std::vector<Rational>(structural), Relation::less_equal, ub};
    row.a[col] = 1;
    pending.push_back(std::move(row));
  }

  const std::size_t m = pending.size();
  std::size_t num_slack = 0;
  for (const auto& r : pending)
    if (r.rel != Relation::equal) ++num_slack;
  const std::size_t first_artificial = structural + num_slack;

  // Decide the initial basis: a +1 slack when available, an artificial otherwise.
  std::vector<Row> rows;
  std::vector<std::size_t> basis;
  std::vector<std::size_t> artificial_rows;
  std::size_t slack = structural;
  std::vector<std::optional<std::size_t>> slack_of(m);
  for (std::size_t i = 0; i < m; ++i)
    if (pending[i].rel != Relation::equal) slack_of[i] = slack++;
  for (std::size_t i = 0; i < m; ++i) {
    bool negate = pending[i].b.sign() < 0;
    if (negate) {
      for (auto& v : pending[i].a) v = -v;
      pending[i].b = -pending[i].b;
    }
    int slack_sign = 0;
    if (pending[i].rel == Relation::less_equal) slack_sign = negate ? -1 : 1;
    if (pending[i].rel == Relation::greater_equal) slack_sign = negate ? 1 : -1;
    if (slack_sign > 0)
      basis.push_back(*slack_of[i]);
    else {
      basis.push_back(static_cast<std::size_t>(-1));
      artificial_rows.push_back(i);
    }
    rows.push_back(Row{std::move(pending[i].a), std::move(pending[i].b)});
    rows.back().a.resize(first_artificial);
    if (slack_of[i]) rows.back().a[*slack_of[i]] = slack_sign;
  }
  const std::size_t total_cols = first_artificial + artificial_rows.size();
  for (auto& r : rows) r.a.resize(total_cols);
  for (std::size_t k = 0; k < artificial_rows.size(); ++k) {
    rows[artificial_rows[k]].a[first_artificial + k] = 1;
    basis[artificial_rows[k]] = first_artificial + k;
  }

  Tableau t(std::move(rows), total_cols, std::move(basis));
  std::vector<bool> allowed(total_cols, true);

  if (!artificial_rows.empty()) {
    std::vector<Rational> phase1(total_cols);
    for (std::size_t j = first_artificial; j < total_cols; ++j) phase1[j] = 1;
    t.minimize(phase1, allowed);
    if (t.value(phase1).sign() != 0) return Result{Status::infeasible, {}, {}};
    t.expel_artificials(first_artificial);
    for (std::size_t j = first_artificial; j < total_cols; ++j) allowed[j] = false;
  }

  // Phase 2 minimizes; maximization negates the objective.
  std::vector<Rational> cost(total_cols);
  for (std::size_t i = 0; i < n; ++i) {
    Rational c = p.sense == Sense::maximize ? -p.objective[i] : p.objective[i];
    cost[vars[i].pos] += vars[i].sign > 0 ? c : -c;
    if (vars[i].neg) cost[*vars[i].neg] -= c;
  }
  if (!t.minimize(cost, allowed)) return Result{Status::unbounded, {}, {}};

  const auto y = t.solution();
  Result res;
  res.status = Status::optimal;
  res.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational v = vars[i].offset;
    v += vars[i].sign > 0 ? y[vars[i].pos] : -y[vars[i].pos];
    if (vars[i].neg) v -= y[*vars[i].neg];
    res.x[i] = std::move(v);
  }
  res.value = objective_value(p, res.x);
  return res;
}

Rational objective_value(const Instance& p, std::span<const Rational> x) {
  Rational v;
  for (std::size_t i = 0; i < p.num_vars(); ++i) v += p.objective[i] * x[i];
  return v;
}

bool is_feasible(const Instance& p, std::span<const Rational> x) {
  if (x.size() != p.num_vars()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Bounds b = p.bounds.empty() ? Bounds{} : p.bounds[i];
    if (b.lower && x[i] < *b.lower) return false;
    if (b.upper && x[i] > *b.upper) return false;
  }
  for (const auto& c : p.constraints) {
    Rational lhs;
    for (std::size_t i = 0; i < x.size(); ++i) lhs += c.coeffs[i] * x[i];
    switch (c.relation) {
      case Relation::less_equal:
        if (lhs > c.rhs) return false;
        break;
      case Relation::equal:
        if (lhs != c.rhs) return false;
        break;
      case Relation::greater_equal:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

}  // namespace pnts::lp
