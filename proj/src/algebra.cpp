#include "nilgrade/algebra.hpp"

#include <sstream>

namespace nilgrade {

std::string to_string(AlgebraKind k) { return k == AlgebraKind::lie ? "lie" : "general"; }

Algebra::Algebra(Index dim, AlgebraKind kind, std::vector<std::string> names)
    : n_(dim), kind_(kind), c_(static_cast<std::size_t>(dim * dim * dim), Rational(0)) {
  if (dim < 0) throw DomainError("negative dimension");
  if (names.empty())
    for (Index i = 0; i < dim; ++i) names.push_back("X" + std::to_string(i + 1));
  set_names(std::move(names));
}

Algebra Algebra::abelian(Index dim) { return Algebra(dim, AlgebraKind::lie); }

void Algebra::set_names(std::vector<std::string> names) {
  if (static_cast<Index>(names.size()) != n_) throw DomainError("basis name count does not match dimension");
  names_ = std::move(names);
}

void Algebra::set_product(Index i, Index j, const QVector& value) {
  for (Index k = 0; k < n_; ++k) {
    set_sc(i, j, k, value(k));
    if (is_lie()) set_sc(j, i, k, -value(k));
  }
}

QVector Algebra::product(Index i, Index j) const {
  QVector v(n_);
  for (Index k = 0; k < n_; ++k) v(k) = sc(i, j, k);
  return v;
}

QVector Algebra::product(const QVector& x, const QVector& y) const {
  QVector r = zero_vector(n_);
  for (Index i = 0; i < n_; ++i) {
    if (x(i).is_zero()) continue;
    for (Index j = 0; j < n_; ++j) {
      if (y(j).is_zero()) continue;
      const Rational f = x(i) * y(j);
      for (Index k = 0; k < n_; ++k)
        if (!sc(i, j, k).is_zero()) r(k) += f * sc(i, j, k);
    }
  }
  return r;
}

QMatrix Algebra::left_multiplication(const QVector& x) const {
  QMatrix m = zeros(n_, n_);
  for (Index i = 0; i < n_; ++i) {
    if (x(i).is_zero()) continue;
    for (Index j = 0; j < n_; ++j)
      for (Index k = 0; k < n_; ++k)
        if (!sc(i, j, k).is_zero()) m(k, j) += x(i) * sc(i, j, k);
  }
  return m;
}

QMatrix Algebra::right_multiplication(const QVector& x) const {
  QMatrix m = zeros(n_, n_);
  for (Index j = 0; j < n_; ++j) {
    if (x(j).is_zero()) continue;
    for (Index i = 0; i < n_; ++i)
      for (Index k = 0; k < n_; ++k)
        if (!sc(i, j, k).is_zero()) m(k, i) += x(j) * sc(i, j, k);
  }
  return m;
}

bool Algebra::is_abelian() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

std::string Violation::str() const {
  std::ostringstream os;
  os << axiom << " violation at (" << i + 1 << "," << j + 1 << "," << k + 1 << ")";
  if (axiom == "jacobi") os << " in coordinate " << coordinate + 1;
  os << ": " << value;
  return os.str();
}

ValidationReport validate(const Algebra& a) {
  ValidationReport rep;
  if (!a.is_lie()) return rep;
  const Index n = a.dim();
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j)
      for (Index k = 0; k < n; ++k) {
        const Rational s = a.sc(i, j, k) + a.sc(j, i, k);
        if (!s.is_zero()) rep.violations.push_back({"antisymmetry", i, j, k, k, s});
      }
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index k = j + 1; k < n; ++k) {
        const QVector ei = unit_vector(n, i), ej = unit_vector(n, j), ek = unit_vector(n, k);
        const QVector jac = a.product(a.product(ei, ej), ek) + a.product(a.product(ej, ek), ei) +
                            a.product(a.product(ek, ei), ej);
        for (Index m = 0; m < n; ++m)
          if (!jac(m).is_zero()) {
            rep.violations.push_back({"jacobi", i, j, k, m, jac(m)});
            break;
          }
      }
  return rep;
}

void require_lie(const Algebra& a) {
  if (!a.is_lie() || !validate(a).ok()) throw NotLie();
}

Subspace product_subspace(const Algebra& a, const Subspace& u, const Subspace& w) {
  const Index n = a.dim();
  if (u.ambient_dim() != n || w.ambient_dim() != n) throw DomainError("product_subspace: ambient mismatch");
  std::vector<QVector> prods;
  for (Index i = 0; i < u.dim(); ++i)
    for (Index j = 0; j < w.dim(); ++j) {
      QVector p = a.product(u.vector(i), w.vector(j));
      if (!is_zero(p)) prods.push_back(std::move(p));
    }
  return Subspace::span(prods, n);
}

Subspace generated_subalgebra(const Algebra& a, const Subspace& v) {
  Subspace s = v;
  while (true) {
    const Subspace next = s + product_subspace(a, s, s);
    if (next.dim() == s.dim()) return s;
    s = next;
  }
}

std::vector<Index> LowerSeries::dims() const {
  std::vector<Index> d;
  for (const auto& t : terms) d.push_back(t.dim());
  return d;
}

Subspace LowerSeries::term(int i) const {
  if (i < 1) throw DomainError("lower series is indexed from 1");
  if (i <= static_cast<int>(terms.size())) return terms[static_cast<std::size_t>(i - 1)];
  if (!nilpotent()) return terms.back();
  return Subspace(terms.front().ambient_dim());
}

LowerSeries lower_series(const Algebra& a) {
  LowerSeries ls;
  const Index n = a.dim();
  ls.terms.push_back(Subspace::full(n));
  if (n == 0) {
    ls.nilpotency_class = 0;
    return ls;
  }
  while (true) {
    const int k = static_cast<int>(ls.terms.size()) + 1;
    Subspace next(n);
    for (int i = 1; i < k; ++i)
      next = next + product_subspace(a, ls.terms[static_cast<std::size_t>(i - 1)],
                                     ls.terms[static_cast<std::size_t>(k - i - 1)]);
    if (next == ls.terms.back()) return ls;
    ls.terms.push_back(next);
    if (next.is_zero()) {
      ls.nilpotency_class = k - 1;
      return ls;
    }
  }
}

Subspace center(const Algebra& a) {
  const Index n = a.dim();
  // Rows: coordinates of z e_i and e_i z as linear forms in z.
  QMatrix m = zeros(2 * n * n, n);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < n; ++k)
      for (Index l = 0; l < n; ++l) {
        m(2 * (i * n + k), l) = a.sc(l, i, k);
        m(2 * (i * n + k) + 1, l) = a.sc(i, l, k);
      }
  return Subspace(n, kernel(m));
}

bool is_ideal(const Algebra& a, const Subspace& u) {
  const Index n = a.dim();
  for (Index b = 0; b < u.dim(); ++b) {
    const QVector x = u.vector(b);
    for (Index i = 0; i < n; ++i) {
      const QVector e = unit_vector(n, i);
      if (!u.contains(a.product(x, e)) || !u.contains(a.product(e, x))) return false;
    }
  }
  return true;
}

bool is_subalgebra(const Algebra& a, const Subspace& u) { return u.contains(product_subspace(a, u, u)); }

Subspace largest_invariant_subideal(const Algebra& a, const Subspace& u, const std::vector<QMatrix>& ops) {
  const Index n = a.dim();
  std::vector<QMatrix> maps = ops;
  for (Index i = 0; i < n; ++i) {
    const QVector e = unit_vector(n, i);
    maps.push_back(a.left_multiplication(e));
    maps.push_back(a.right_multiplication(e));
  }
  Subspace w = u;
  while (!w.is_zero()) {
    Subspace next = w;
    for (const auto& m : maps) {
      if (w.contains(w.image(m))) continue;
      next = next.intersect(w.preimage(m));
    }
    if (next.dim() == w.dim()) return w;
    w = next;
  }
  return w;
}

Algebra base_change(const Algebra& a, const QMatrix& p) {
  const Index n = a.dim();
  if (p.rows() != n || p.cols() != n) throw DomainError("base_change: matrix size mismatch");
  const QMatrix pinv = inverse(p);
  Algebra b(n, a.kind(), a.names());
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (a.is_lie() && j <= i) continue;
      const QVector v = pinv * a.product(QVector(p.col(i)), QVector(p.col(j)));
      b.set_product(i, j, v);
    }
  return b;
}

Algebra direct_product(const Algebra& a, const Algebra& b) {
  const Index n = a.dim(), m = b.dim();
  std::vector<std::string> names = a.names();
  names.insert(names.end(), b.names().begin(), b.names().end());
  const AlgebraKind kind = a.is_lie() && b.is_lie() ? AlgebraKind::lie : AlgebraKind::general;
  Algebra c(n + m, kind, names);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) c.set_sc(i, j, k, a.sc(i, j, k));
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index k = 0; k < m; ++k) c.set_sc(n + i, n + j, n + k, b.sc(i, j, k));
  return c;
}

}  // namespace nilgrade
