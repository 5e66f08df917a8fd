#include "nilgrade/carnot.hpp"

#include "nilgrade/derivations.hpp"

#include <set>

namespace nilgrade {

namespace {

// Basis of `level` extending `below` (a subspace of it): standard vectors first, then RREF rows.
std::vector<QVector> complement_basis(const Subspace& level, const Subspace& below) {
  const Index n = level.ambient_dim();
  std::vector<QVector> out;
  Subspace acc = below;
  auto try_add = [&](const QVector& v) {
    if (acc.dim() == level.dim() || acc.contains(v)) return;
    out.push_back(v);
    acc = acc + Subspace::span({v}, n);
  };
  for (Index k = 0; k < n; ++k) {
    const QVector e = unit_vector(n, k);
    if (level.contains(e)) try_add(e);
  }
  for (Index i = 0; i < level.dim(); ++i) try_add(level.vector(i));
  return out;
}

std::optional<Index> unit_index(const QVector& v) {
  std::optional<Index> idx;
  for (Index i = 0; i < v.size(); ++i) {
    if (v(i).is_zero()) continue;
    if (idx || v(i) != Rational(1)) return std::nullopt;
    idx = i;
  }
  return idx;
}

LowerSeries nilpotent_series(const Algebra& a) {
  LowerSeries ls = lower_series(a);
  if (!ls.nilpotent()) throw NotNilpotent();
  return ls;
}

// Affine system: Leibniz rows plus D = id on a / a^(2), right-hand side in `rhs`.
struct AffineSystem {
  SparseSystem sys;
  std::vector<Rational> rhs;

  void add(SparseRow row, const Rational& b) {
    if (row.empty() && b.is_zero()) return;
    sys.rows.push_back(std::move(row));
    rhs.push_back(b);
  }
  QVector b() const {
    QVector v(static_cast<Index>(rhs.size()));
    for (std::size_t i = 0; i < rhs.size(); ++i) v(static_cast<Index>(i)) = rhs[i];
    return v;
  }
};

AffineSystem carnot_system(const Algebra& a, const LowerSeries& ls) {
  const Index n = a.dim();
  AffineSystem s{leibniz_system(a), {}};
  s.rhs.assign(s.sys.rows.size(), Rational(0));
  const Subspace ann = ls.term(2).annihilator();
  for (Index t = 0; t < ann.dim(); ++t) {
    const QVector phi = ann.vector(t);
    for (Index k = 0; k < n; ++k) {
      SparseRow row;
      for (Index r = 0; r < n; ++r)
        if (!phi(r).is_zero()) row.emplace_back(r * n + k, phi(r));
      s.add(std::move(row), phi(k));
    }
  }
  return s;
}

CarnotVerdict solve(const Algebra& a, const LowerSeries& ls, const AffineSystem& s) {
  const Index n = a.dim();
  CarnotVerdict v;
  QVector cert;
  const auto sol = try_solve_affine(s.sys, s.b(), &cert);
  if (!sol) {
    v.certificate = std::move(cert);
    return v;
  }
  const QMatrix d = unflatten(sol->particular, n, n);
  std::vector<GradedComponent> comps;
  const int c = ls.nilpotency_class.value_or(0);
  for (int i = 1; i <= c; ++i)
    comps.push_back({{i}, Subspace(n, kernel(QMatrix(d - Rational(i) * identity(n))))});
  Grading g(a, 1, std::move(comps));
  if (!g.is_carnot_grading()) throw InvariantViolation("carnot_test: witness grading is not generated in degree one");
  v.carnot = true;
  v.witness = d;
  v.grading = std::move(g);
  return v;
}

}  // namespace

AssociatedGraded car(const Algebra& a) {
  const LowerSeries ls = nilpotent_series(a);
  const Index n = a.dim();
  const int c = *ls.nilpotency_class;
  std::vector<std::vector<QVector>> levels;
  for (int i = 1; i <= c; ++i) levels.push_back(complement_basis(ls.term(i), ls.term(i + 1)));

  QMatrix p(n, n);
  std::vector<int> level_of;
  std::vector<Index> first(static_cast<std::size_t>(c) + 2, 0);
  Index col = 0;
  for (int i = 1; i <= c; ++i) {
    first[static_cast<std::size_t>(i)] = col;
    for (const auto& v : levels[static_cast<std::size_t>(i - 1)]) {
      p.col(col++) = v;
      level_of.push_back(i);
    }
  }
  first[static_cast<std::size_t>(c) + 1] = col;

  std::vector<std::string> names;
  std::set<std::string> used;
  for (Index k = 0; k < n; ++k) {
    const auto u = unit_index(QVector(p.col(k)));
    std::string nm = u ? a.name(*u) : "u" + std::to_string(k + 1);
    while (!used.insert(nm).second) nm += "'";
    names.push_back(nm);
  }

  const QMatrix pinv = inverse(p);
  Algebra g(n, a.kind(), names);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const int lv = level_of[static_cast<std::size_t>(i)] + level_of[static_cast<std::size_t>(j)];
      if (lv > c) continue;
      const QVector z = pinv * a.product(QVector(p.col(i)), QVector(p.col(j)));
      for (Index k = first[static_cast<std::size_t>(lv)]; k < first[static_cast<std::size_t>(lv) + 1]; ++k)
        if (!z(k).is_zero()) g.set_sc(i, j, k, z(k));
    }

  std::vector<GradedComponent> comps;
  for (int i = 1; i <= c; ++i) {
    std::vector<Index> idx;
    for (Index k = first[static_cast<std::size_t>(i)]; k < first[static_cast<std::size_t>(i) + 1]; ++k) idx.push_back(k);
    comps.push_back({{i}, Subspace::coordinate(n, idx)});
  }
  Grading gr(g, 1, std::move(comps));
  return {std::move(g), std::move(gr), p};
}

CarnotVerdict carnot_test(const Algebra& a) {
  const LowerSeries ls = nilpotent_series(a);
  return solve(a, ls, carnot_system(a, ls));
}

CarnotVerdict carnot_with_prescribed_v1(const Algebra& a, const Subspace& v) {
  const Index n = a.dim();
  if (v.ambient_dim() != n) throw BadComplement("subspace lives in the wrong dimension");
  const LowerSeries ls = nilpotent_series(a);
  const Subspace g2 = ls.term(2);
  if (v.dim() + g2.dim() != n || !(v + g2).is_full())
    throw BadComplement("subspace is not a complement of the derived algebra");
  AffineSystem s = carnot_system(a, ls);
  for (Index t = 0; t < v.dim(); ++t) {
    const QVector x = v.vector(t);
    for (Index r = 0; r < n; ++r) {
      SparseRow row;
      for (Index c = 0; c < n; ++c)
        if (!x(c).is_zero()) row.emplace_back(r * n + c, x(c));
      s.add(std::move(row), x(r));
    }
  }
  return solve(a, ls, s);
}

bool is_automorphism(const Algebra& a, const QMatrix& s) {
  const Index n = a.dim();
  if (s.rows() != n || s.cols() != n || determinant(s).is_zero()) return false;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (s * a.product(i, j) != a.product(QVector(s.col(i)), QVector(s.col(j)))) return false;
  return true;
}

std::optional<Grading> invariant_carnot(const Algebra& a, const std::vector<QMatrix>& s) {
  const Index n = a.dim();
  for (std::size_t t = 0; t < s.size(); ++t)
    if (!is_automorphism(a, s[t])) throw NotAutomorphism("matrix " + std::to_string(t + 1) + " is not an automorphism");
  const LowerSeries ls = nilpotent_series(a);
  AffineSystem sys = carnot_system(a, ls);
  for (const auto& m : s)
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        // (mD - Dm)(i, j)
        std::map<Index, Rational> acc;
        for (Index k = 0; k < n; ++k) {
          if (!m(i, k).is_zero()) acc[k * n + j] += m(i, k);
          if (!m(k, j).is_zero()) acc[i * n + k] -= m(k, j);
        }
        SparseRow row;
        for (auto& [c, v] : acc)
          if (!v.is_zero()) row.emplace_back(c, v);
        sys.add(std::move(row), Rational(0));
      }
  CarnotVerdict v = solve(a, ls, sys);
  if (!v.carnot) return std::nullopt;
  return std::move(v.grading);
}

}  // namespace nilgrade
