#include "nilgrade/cones.hpp"

#include <algorithm>
#include <map>

namespace nilgrade {

namespace {

using Row = std::vector<Rational>;

// a . x >= b for every (a, b); positive scaling keeps the first nonzero coefficient at +-1.
using System = std::map<Row, Rational>;

// False when the inequality is a contradiction 0 >= b > 0.
bool insert(System& s, Row a, Rational b) {
  const auto it = std::find_if(a.begin(), a.end(), [](const Rational& x) { return !x.is_zero(); });
  if (it == a.end()) return b.sign() <= 0;
  const Rational scale = Rational(1) / abs(*it);
  for (auto& x : a) x *= scale;
  b *= scale;
  auto [pos, fresh] = s.emplace(std::move(a), b);
  if (!fresh && pos->second < b) pos->second = b;
  return true;
}

Rational dot(const Row& a, const Row& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) s += a[i] * x[i];
  return s;
}

// Value in [lo, hi] (either may be absent), preferring 0 and then small integers.
Rational pick(const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  const bool zero_ok = (!lo || lo->sign() <= 0) && (!hi || hi->sign() >= 0);
  if (zero_ok) return 0;
  if (lo && lo->sign() > 0) {
    const Rational c(ceil(*lo));
    return (!hi || c <= *hi) ? c : *lo;
  }
  const Rational f(floor(*hi));
  return (!lo || f >= *lo) ? f : *hi;
}

Row to_row(const Weight& w) {
  Row r;
  for (long x : w) r.emplace_back(x);
  return r;
}

std::vector<Weight> distinct(const std::vector<Weight>& weights) {
  std::vector<Weight> d = weights;
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

std::vector<long> primitive_integer(const Row& f) {
  Integer l = 1, g = 0;
  for (const auto& x : f) l = lcm(l, x.den());
  std::vector<Integer> v;
  for (const auto& x : f) {
    v.push_back((x * Rational(l)).num());
    g = gcd(g, v.back());
  }
  std::vector<long> out;
  for (auto& x : v) {
    if (g != 0) x /= g;
    if (!x.fits_slong_p()) throw DomainError("cocharacter does not fit in a machine integer");
    out.push_back(x.get_si());
  }
  return out;
}

bool feasible_positive(const std::vector<Weight>& w, const Weight& alpha, Row* witness) {
  std::vector<Row> a;
  std::vector<Rational> b;
  for (const auto& x : w) {
    a.push_back(to_row(x));
    b.emplace_back(0);
  }
  a.push_back(to_row(alpha));
  b.emplace_back(1);
  const auto f = solve_inequalities(a, b);
  if (f && witness) *witness = *f;
  return f.has_value();
}

}  // namespace

std::optional<std::vector<Rational>> solve_inequalities(const std::vector<std::vector<Rational>>& a,
                                                        const std::vector<Rational>& b, std::size_t budget) {
  if (a.size() != b.size()) throw DomainError("solve_inequalities: row count mismatch");
  const std::size_t m = a.empty() ? 0 : a.front().size();
  System s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != m) throw DomainError("solve_inequalities: ragged rows");
    if (!insert(s, a[i], b[i])) return std::nullopt;
  }
  // stages[k]: inequalities in the variables 0..k.
  std::vector<System> stages(m);
  for (std::size_t k = m; k-- > 0;) {
    stages[k] = s;
    std::vector<std::pair<Row, Rational>> pos, neg;
    System next;
    for (const auto& [row, rhs] : s) {
      const int sg = row[k].sign();
      if (sg > 0) pos.emplace_back(row, rhs);
      else if (sg < 0) neg.emplace_back(row, rhs);
      else next.emplace(row, rhs);
    }
    if (pos.size() * neg.size() + next.size() > budget) throw BudgetExhausted("inequality elimination budget exhausted");
    for (const auto& [p, pb] : pos)
      for (const auto& [q, qb] : neg) {
        const Rational cp = -q[k], cq = p[k];
        Row r(m);
        for (std::size_t j = 0; j < m; ++j) r[j] = cp * p[j] + cq * q[j];
        r[k] = 0;
        if (!insert(next, std::move(r), cp * pb + cq * qb)) return std::nullopt;
      }
    s = std::move(next);
  }
  for (const auto& [row, rhs] : s)
    if (rhs.sign() > 0) return std::nullopt;

  Row x(m, Rational(0));
  for (std::size_t k = 0; k < m; ++k) {
    std::optional<Rational> lo, hi;
    for (const auto& [row, rhs] : stages[k]) {
      if (row[k].is_zero()) continue;
      const Rational bound = (rhs - dot(row, x)) / row[k];  // x[k] is still 0 here
      if (row[k].sign() > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else if (!hi || bound < *hi) {
        hi = bound;
      }
    }
    if (lo && hi && *lo > *hi) throw InvariantViolation("solve_inequalities: back substitution failed");
    x[k] = pick(lo, hi);
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    if (dot(a[i], x) < b[i]) throw InvariantViolation("solve_inequalities: witness violates an inequality");
  return x;
}

std::vector<std::vector<Rational>> dual_cone_rays(const std::vector<Weight>& weights, std::size_t budget) {
  const std::vector<Weight> w = distinct(weights);
  if (w.empty()) return {};
  const Index r = static_cast<Index>(w.front().size());
  std::vector<QVector> rows;
  for (const auto& x : w) {
    QVector v(r);
    for (Index j = 0; j < r; ++j) v(j) = Rational(x[static_cast<std::size_t>(j)]);
    rows.push_back(v);
  }
  const Subspace u = Subspace::span(rows, r);
  const Index d = u.dim();
  if (d == 0) return {};
  const Index m = static_cast<Index>(w.size());
  QMatrix mm(m, d);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < d; ++j) mm(i, j) = rows[static_cast<std::size_t>(i)].dot(u.vector(j));

  std::map<Row, bool> found;
  std::vector<Index> pick(static_cast<std::size_t>(d - 1));
  for (Index i = 0; i < d - 1; ++i) pick[static_cast<std::size_t>(i)] = i;
  std::size_t visited = 0;
  for (;;) {
    if (++visited > budget) throw BudgetExhausted("dual cone enumeration budget exhausted");
    QMatrix t(d - 1, d);
    for (Index i = 0; i < d - 1; ++i) t.row(i) = mm.row(pick[static_cast<std::size_t>(i)]);
    const QMatrix k = d == 1 ? QMatrix(identity(1)) : kernel(t);
    if (k.rows() == 1) {
      QVector y = k.row(0).transpose();
      const QVector vals = mm * y;
      const bool nonneg = std::all_of(vals.begin(), vals.end(), [](const Rational& v) { return v.sign() >= 0; });
      const bool nonpos = std::all_of(vals.begin(), vals.end(), [](const Rational& v) { return v.sign() <= 0; });
      if (nonpos && !nonneg) y = -y;
      if (nonneg || nonpos) {
        QVector f = QVector::Constant(r, Rational(0));
        for (Index j = 0; j < d; ++j) f += y(j) * u.vector(j);
        Row fr(f.begin(), f.end());
        const auto it = std::find_if(fr.begin(), fr.end(), [](const Rational& x) { return !x.is_zero(); });
        const Rational s = Rational(1) / abs(*it);
        for (auto& x : fr) x *= s;
        found.emplace(std::move(fr), true);
      }
    }
    // next (d-1)-subset of 0..m-1
    Index i = d - 2;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - (d - 1) + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < d - 1; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  std::vector<Row> out;
  for (auto& [f, _] : found) out.push_back(f);
  return out;
}

std::vector<bool> positive_weights(const std::vector<Weight>& weights) {
  const auto rays = dual_cone_rays(weights);
  std::vector<bool> out;
  for (const auto& w : weights) {
    const Row x = to_row(w);
    out.push_back(std::any_of(rays.begin(), rays.end(), [&](const Row& f) { return dot(f, x).sign() > 0; }));
  }
  return out;
}

std::vector<bool> positive_weights_lp(const std::vector<Weight>& weights) {
  const std::vector<Weight> w = distinct(weights);
  std::vector<bool> out;
  for (const auto& alpha : weights) out.push_back(feasible_positive(w, alpha, nullptr));
  return out;
}

std::vector<long> fine_cocharacter(const std::vector<Weight>& weights) {
  const std::vector<Weight> w = distinct(weights);
  const std::size_t r = w.empty() ? 0 : w.front().size();
  Row sum(r, Rational(0));
  for (const auto& alpha : w) {
    Row f;
    if (!feasible_positive(w, alpha, &f)) continue;
    for (std::size_t j = 0; j < r; ++j) sum[j] += f[j];
  }
  return primitive_integer(sum);
}

std::vector<long> fine_cocharacter(const Grading& gr) {
  auto f = fine_cocharacter(gr.weights());
  f.resize(static_cast<std::size_t>(gr.rank()), 0);
  return f;
}

std::vector<Weight> principal_weights(const Grading& gr) {
  const Algebra& a = gr.algebra();
  const Subspace g2 = product_subspace(a, Subspace::full(a.dim()), Subspace::full(a.dim()));
  std::vector<Weight> out;
  for (const auto& c : gr.components())
    if (!g2.contains(c.space)) out.push_back(c.weight);
  return out;
}

ConeFlags cone_flags(const Grading& gr) {
  const auto w = gr.weights();
  const auto pos = positive_weights(w);
  ConeFlags f;
  f.contractable = std::all_of(pos.begin(), pos.end(), [](bool b) { return b; });
  f.semicontractable = std::any_of(pos.begin(), pos.end(), [](bool b) { return b; });
  f.flexible_split = gr.is_invertible();
  if (lower_series(gr.algebra()).nilpotent()) {
    const auto p = principal_weights(gr);
    QMatrix m(static_cast<Index>(p.size()), gr.rank());
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) m(i, j) = Rational(p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    try {
      solve_affine(m, QVector::Constant(m.rows(), Rational(1)));
      f.carnot_by_weights = true;
    } catch (const Infeasible&) {
      f.carnot_by_weights = false;
    }
  }
  return f;
}

ContractiveDecomposition contractive_decomposition(const Grading& gr) {
  const Algebra& a = gr.algebra();
  const auto w = gr.weights();
  const auto pos = positive_weights(w);
  ContractiveDecomposition cd{Subspace(a.dim()), Subspace(a.dim()), 0, 0, fine_cocharacter(gr)};
  for (std::size_t i = 0; i < w.size(); ++i) {
    Subspace& part = pos[i] ? cd.plus_part : cd.zero_part;
    part = part + gr.components()[i].space;
  }
  cd.uncontracted_dim = cd.zero_part.dim();
  cd.contracted_dim = cd.plus_part.dim();
  if (!is_subalgebra(a, cd.zero_part)) throw InvariantViolation("contractive decomposition: zero part is not a subalgebra");
  if (!is_ideal(a, cd.plus_part)) throw InvariantViolation("contractive decomposition: plus part is not an ideal");
  return cd;
}

Grading fine_nonneg_grading(const Grading& gr) { return gr.push_forward({fine_cocharacter(gr)}); }

Grading fine_nonneg_grading(const Algebra& a, const TorusOptions& opts) {
  return fine_nonneg_grading(weight_decomposition(maximal_split_torus(a, opts)));
}

}  // namespace nilgrade
