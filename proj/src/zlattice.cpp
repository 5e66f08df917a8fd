#include "nilgrade/zlattice.hpp"

#include <algorithm>

namespace nilgrade {

namespace {

void axpy_row(IntRow& dst, const Integer& f, const IntRow& src) {
  for (std::size_t j = 0; j < dst.size(); ++j)
    if (src[j] != 0) dst[j] -= f * src[j];
}

bool zero_row(const IntRow& r) {
  return std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; });
}

Integer fdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

IntMatrix hermite_normal_form(IntMatrix m) {
  m.erase(std::remove_if(m.begin(), m.end(), zero_row), m.end());
  if (m.empty()) return m;
  const std::size_t cols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    while (true) {
      // Smallest nonzero |entry| at or below row r becomes the pivot candidate.
      std::size_t best = m.size();
      for (std::size_t i = r; i < m.size(); ++i)
        if (m[i][c] != 0 && (best == m.size() || abs(m[i][c]) < abs(m[best][c]))) best = i;
      if (best == m.size()) break;
      std::swap(m[r], m[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < m.size(); ++i) {
        if (m[i][c] == 0) continue;
        axpy_row(m[i], fdiv(m[i][c], m[r][c]), m[r]);
        if (m[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (m[r][c] == 0) continue;
    if (m[r][c] < 0)
      for (auto& x : m[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i)
      if (m[i][c] != 0) axpy_row(m[i], fdiv(m[i][c], m[r][c]), m[r]);
    ++r;
  }
  m.resize(r);
  return m;
}

IntMatrix integer_left_kernel(const IntMatrix& m, std::size_t cols) {
  const std::size_t rows = m.size();
  IntMatrix aug(rows, IntRow(cols + rows, Integer(0)));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug[i][j] = m[i][j];
    aug[i][cols + i] = 1;
  }
  const IntMatrix h = hermite_normal_form(std::move(aug));
  IntMatrix out;
  for (const auto& row : h) {
    if (!std::all_of(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(cols),
                     [](const Integer& x) { return x == 0; }))
      continue;
    out.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(cols), row.end());
  }
  return out;
}

ZLattice::ZLattice(Index ambient_dim) : n_(ambient_dim) {}

ZLattice::ZLattice(Index n, IntMatrix rows, Integer scale) : n_(n), scale_(std::move(scale)) {
  hnf_ = hermite_normal_form(std::move(rows));
  Integer g = scale_;
  for (const auto& r : hnf_)
    for (const auto& x : r) g = gcd(g, x);
  if (hnf_.empty()) g = scale_;
  if (g > 1) {
    scale_ /= g;
    for (auto& r : hnf_)
      for (auto& x : r) x /= g;
  }
}

ZLattice ZLattice::from_rows(const QMatrix& m) {
  const Integer scale = common_denominator(m);
  IntMatrix rows(static_cast<std::size_t>(m.rows()), IntRow(static_cast<std::size_t>(m.cols())));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      const Rational s = m(i, j) * Rational(scale);
      rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s.num();
    }
  return ZLattice(m.cols(), std::move(rows), scale);
}

ZLattice ZLattice::from_generators(const std::vector<QVector>& generators, Index ambient_dim) {
  if (generators.empty()) return ZLattice(ambient_dim);
  return from_rows(nilgrade::from_rows(generators, ambient_dim));
}

ZLattice ZLattice::standard(Index n) { return from_rows(identity(n)); }

QMatrix ZLattice::basis() const {
  QMatrix b(rank(), n_);
  for (Index i = 0; i < rank(); ++i)
    for (Index j = 0; j < n_; ++j)
      b(i, j) = Rational(hnf_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], scale_);
  return b;
}

QVector ZLattice::basis_vector(Index i) const { return basis().row(i).transpose(); }

std::vector<Integer> ZLattice::coordinates(const QVector& v) const {
  if (v.size() != n_) throw DomainError("ZLattice: vector width mismatch");
  IntRow w(static_cast<std::size_t>(n_));
  for (Index j = 0; j < n_; ++j) {
    const Rational s = v(j) * Rational(scale_);
    if (!s.is_integer()) throw DomainError("vector not in lattice");
    w[static_cast<std::size_t>(j)] = s.num();
  }
  std::vector<Integer> x;
  x.reserve(hnf_.size());
  for (const auto& row : hnf_) {
    std::size_t p = 0;
    while (row[p] == 0) ++p;
    if (!mpz_divisible_p(w[p].get_mpz_t(), row[p].get_mpz_t())) throw DomainError("vector not in lattice");
    Integer q = w[p] / row[p];
    axpy_row(w, q, row);
    x.push_back(std::move(q));
  }
  if (!zero_row(w)) throw DomainError("vector not in lattice");
  return x;
}

bool ZLattice::contains(const QVector& v) const {
  try {
    coordinates(v);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

bool ZLattice::contains(const ZLattice& other) const {
  if (other.n_ != n_) return false;
  for (Index i = 0; i < other.rank(); ++i)
    if (!contains(other.basis_vector(i))) return false;
  return true;
}

ZLattice ZLattice::image(const QMatrix& map) const {
  if (map.cols() != n_) throw DomainError("ZLattice::image: width mismatch");
  if (rank() == 0) return ZLattice(map.rows());
  return from_rows(QMatrix(basis() * map.transpose()));
}

ZLattice ZLattice::operator+(const ZLattice& other) const {
  if (other.n_ != n_) throw DomainError("ZLattice: ambient mismatch");
  if (rank() == 0) return other;
  if (other.rank() == 0) return *this;
  return from_rows(vstack(basis(), other.basis()));
}

namespace {

IntMatrix scaled_integer(const QMatrix& m) {
  const Integer l = common_denominator(m);
  IntMatrix out(static_cast<std::size_t>(m.rows()), IntRow(static_cast<std::size_t>(m.cols())));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (m(i, j) * Rational(l)).num();
  return out;
}

ZLattice combine(const IntMatrix& coeffs, const QMatrix& basis) {
  std::vector<QVector> gens;
  for (const auto& row : coeffs) {
    QVector v = zero_vector(basis.cols());
    for (std::size_t i = 0; i < row.size(); ++i)
      if (row[i] != 0) v += Rational(row[i]) * basis.row(static_cast<Index>(i)).transpose();
    gens.push_back(std::move(v));
  }
  return ZLattice::from_generators(gens, basis.cols());
}

}  // namespace

ZLattice ZLattice::intersect(const ZLattice& other) const {
  if (other.n_ != n_) throw DomainError("ZLattice: ambient mismatch");
  if (rank() == 0 || other.rank() == 0) return ZLattice(n_);
  const QMatrix b1 = basis();
  const QMatrix stacked = vstack(b1, QMatrix(-other.basis()));
  const IntMatrix k = integer_left_kernel(scaled_integer(stacked), static_cast<std::size_t>(n_));
  IntMatrix head;
  for (const auto& row : k) head.emplace_back(row.begin(), row.begin() + rank());
  return combine(head, b1);
}

ZLattice ZLattice::intersect(const Subspace& w) const {
  if (w.ambient_dim() != n_) throw DomainError("ZLattice: ambient mismatch");
  if (rank() == 0) return *this;
  const Subspace ann = w.annihilator();
  if (ann.is_zero()) return *this;
  const QMatrix b = basis();
  const QMatrix m = b * ann.basis().transpose();
  const IntMatrix k = integer_left_kernel(scaled_integer(m), static_cast<std::size_t>(m.cols()));
  return combine(k, b);
}

Subspace ZLattice::span() const { return rank() == 0 ? Subspace(n_) : Subspace(n_, basis()); }

Rational ZLattice::covolume() const {
  if (!is_full()) throw DomainError("covolume of a non-full lattice");
  // HNF is upper triangular when full.
  Rational d = 1;
  for (Index i = 0; i < n_; ++i) d *= Rational(hnf_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)], scale_);
  return d;
}

ZLattice hnf_lattice(const std::vector<QVector>& generators, Index ambient_dim) {
  return ZLattice::from_generators(generators, ambient_dim);
}

bool membership(const ZLattice& l, const QVector& v) { return l.contains(v); }

Rational lattice_index(const ZLattice& l1, const ZLattice& l2) {
  if (l1.ambient_dim() != l2.ambient_dim() || !l1.contains(l2)) throw NotSublattice();
  if (l2.rank() != l1.rank()) throw DomainError("sublattice has infinite index");
  const Index r = l1.rank();
  QMatrix c(r, r);
  for (Index i = 0; i < r; ++i) {
    const auto x = l1.coordinates(l2.basis_vector(i));
    for (Index j = 0; j < r; ++j) c(i, j) = Rational(x[static_cast<std::size_t>(j)]);
  }
  return abs(determinant(c));
}

}  // namespace nilgrade
