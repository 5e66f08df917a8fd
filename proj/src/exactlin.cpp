#include "nilgrade/exactlin.hpp"

#include <algorithm>
#include <cstdint>

namespace nilgrade {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// ---------------------------------------------------------------------------
// Exact dense elimination

RrefResult exact_rref(QMatrix m) {
  RrefResult out;
  const Index rows = m.rows(), cols = m.cols();
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index piv = -1;
    for (Index i = r; i < rows; ++i)
      if (!m(i, c).is_zero()) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r) m.row(piv).swap(m.row(r));
    const Rational inv = Rational(1) / m(r, c);
    for (Index j = c; j < cols; ++j)
      if (!m(r, j).is_zero()) m(r, j) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Rational f = m(i, c);
      for (Index j = c; j < cols; ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.matrix = std::move(m);
  return out;
}

// ---------------------------------------------------------------------------
// Modular elimination

const std::vector<u64>& primes() {
  static const std::vector<u64> list = [] {
    std::vector<u64> ps;
    Integer p = Integer(1) << 62;
    for (int i = 0; i < 64; ++i) {
      mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
      ps.push_back(p.get_ui());
    }
    return ps;
  }();
  return list;
}

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}
u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

bool reduce_mod(const Rational& q, u64 p, u64& out) {
  const u64 d = mpz_fdiv_ui(q.raw().get_den_mpz_t(), p);
  if (d == 0) return false;
  const u64 n = mpz_fdiv_ui(q.raw().get_num_mpz_t(), p);
  out = mulmod(n, invmod(d, p), p);
  return true;
}

struct ModEchelon {
  std::vector<Index> accepted;        // indices of rows independent mod p
  std::vector<Index> pivots;
  std::vector<std::vector<u64>> rref;  // rank x cols, reduced
};

std::optional<ModEchelon> mod_rref(const SparseSystem& a, u64 p) {
  const Index cols = a.cols;
  ModEchelon out;
  // Echelon rows kept sorted by pivot; each stored row is normalized at its pivot.
  std::vector<std::vector<u64>> rows;
  std::vector<Index> piv;
  std::vector<u64> work(static_cast<std::size_t>(cols));
  for (std::size_t ri = 0; ri < a.rows.size(); ++ri) {
    std::fill(work.begin(), work.end(), 0);
    bool any = false;
    for (const auto& [c, v] : a.rows[ri]) {
      u64 x;
      if (!reduce_mod(v, p, x)) return std::nullopt;
      work[static_cast<std::size_t>(c)] = x;
      any = any || x != 0;
    }
    if (!any) continue;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const u64 f = work[static_cast<std::size_t>(piv[k])];
      if (f == 0) continue;
      const auto& row = rows[k];
      for (Index j = piv[k]; j < cols; ++j) {
        const u64 rv = row[static_cast<std::size_t>(j)];
        if (rv) work[static_cast<std::size_t>(j)] = submod(work[static_cast<std::size_t>(j)], mulmod(f, rv, p), p);
      }
    }
    Index lead = -1;
    for (Index j = 0; j < cols; ++j)
      if (work[static_cast<std::size_t>(j)]) { lead = j; break; }
    if (lead < 0) continue;
    const u64 inv = invmod(work[static_cast<std::size_t>(lead)], p);
    for (Index j = lead; j < cols; ++j) work[static_cast<std::size_t>(j)] = mulmod(work[static_cast<std::size_t>(j)], inv, p);
    const auto pos = std::lower_bound(piv.begin(), piv.end(), lead) - piv.begin();
    piv.insert(piv.begin() + pos, lead);
    rows.insert(rows.begin() + pos, work);
    out.accepted.push_back(static_cast<Index>(ri));
    if (static_cast<Index>(rows.size()) == cols) break;
  }
  // Back substitution to reduced form.
  for (std::size_t k = rows.size(); k-- > 0;) {
    for (std::size_t i = 0; i < k; ++i) {
      const u64 f = rows[i][static_cast<std::size_t>(piv[k])];
      if (f == 0) continue;
      for (Index j = piv[k]; j < cols; ++j) {
        const u64 rv = rows[k][static_cast<std::size_t>(j)];
        if (rv) rows[i][static_cast<std::size_t>(j)] = submod(rows[i][static_cast<std::size_t>(j)], mulmod(f, rv, p), p);
      }
    }
  }
  std::sort(out.accepted.begin(), out.accepted.end());
  out.pivots = std::move(piv);
  out.rref = std::move(rows);
  return out;
}

/// Rational reconstruction of u mod m with |num|, den <= sqrt(m/2).
bool rational_reconstruct(const Integer& u, const Integer& m, Rational& out) {
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
  Integer r0 = m, r1 = u, t0 = 0, t1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = std::move(r1); r1 = std::move(r2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  if (gcd(r1, t1) != 1) return false;
  out = Rational(r1, t1);
  return true;
}

/// Multi-prime reconstruction of the RREF of `a`. Returns the pivots and the reconstructed
/// entries of the non-pivot columns; the caller verifies.
class RrefReconstructor {
 public:
  explicit RrefReconstructor(const SparseSystem& a) : a_(a) {}

  template <class Verify>
  std::optional<std::pair<ModEchelon, QMatrix>> run(Verify&& verify, int max_primes = 48) {
    int used = 0;
    for (u64 p : primes()) {
      if (used++ >= max_primes) break;
      auto e = mod_rref(a_, p);
      if (!e) continue;
      if (!have_ || e->pivots.size() > best_.pivots.size()) {
        best_ = *e;
        have_ = true;
        init_crt(*e, p);
      } else if (e->pivots != best_.pivots) {
        continue;
      } else {
        add_crt(*e, p);
      }
      QMatrix r;
      if (!reconstruct(r)) continue;
      if (verify(best_, r)) return std::make_pair(best_, r);
    }
    return std::nullopt;
  }

 private:
  void init_crt(const ModEchelon& e, u64 p) {
    modulus_ = Integer(static_cast<unsigned long>(p));
    values_.assign(e.rref.size(), std::vector<Integer>(static_cast<std::size_t>(a_.cols)));
    for (std::size_t i = 0; i < e.rref.size(); ++i)
      for (Index j = 0; j < a_.cols; ++j)
        values_[i][static_cast<std::size_t>(j)] = Integer(static_cast<unsigned long>(e.rref[i][static_cast<std::size_t>(j)]));
  }

  void add_crt(const ModEchelon& e, u64 p) {
    const Integer P(static_cast<unsigned long>(p));
    Integer inv;
    mpz_invert(inv.get_mpz_t(), modulus_.get_mpz_t(), P.get_mpz_t());
    for (std::size_t i = 0; i < e.rref.size(); ++i)
      for (Index j = 0; j < a_.cols; ++j) {
        Integer& x = values_[i][static_cast<std::size_t>(j)];
        // x' = x + M * ((v - x) * M^{-1} mod p)
        Integer t = (Integer(static_cast<unsigned long>(e.rref[i][static_cast<std::size_t>(j)])) - x) * inv;
        mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), P.get_mpz_t());
        x += modulus_ * t;
      }
    modulus_ *= P;
  }

  bool reconstruct(QMatrix& r) const {
    const Index rank = static_cast<Index>(values_.size());
    r = zeros(rank, a_.cols);
    for (Index i = 0; i < rank; ++i)
      for (Index j = 0; j < a_.cols; ++j) {
        const Integer& v = values_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (v == 0) continue;
        if (!rational_reconstruct(v, modulus_, r(i, j))) return false;
      }
    return true;
  }

  const SparseSystem& a_;
  ModEchelon best_;
  bool have_ = false;
  Integer modulus_;
  std::vector<std::vector<Integer>> values_;
};

/// Integer-scaled sparse rows for fast exact verification.
struct IntRows {
  std::vector<std::vector<std::pair<Index, Integer>>> rows;
  explicit IntRows(const SparseSystem& a) {
    rows.reserve(a.rows.size());
    for (const auto& row : a.rows) {
      Integer l = 1;
      for (const auto& [c, v] : row) l = lcm(l, v.den());
      std::vector<std::pair<Index, Integer>> out;
      for (const auto& [c, v] : row)
        if (!v.is_zero()) out.emplace_back(c, v.num() * (l / v.den()));
      rows.push_back(std::move(out));
    }
  }
};

std::vector<Integer> scaled_integer(const QVector& v) {
  const Integer l = common_denominator(v);
  std::vector<Integer> out(static_cast<std::size_t>(v.size()));
  for (Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = v(i).num() * (l / v(i).den());
  return out;
}

bool annihilates(const IntRows& rows, const std::vector<Integer>& x) {
  Integer acc;
  for (const auto& row : rows.rows) {
    acc = 0;
    for (const auto& [c, v] : row) acc += v * x[static_cast<std::size_t>(c)];
    if (acc != 0) return false;
  }
  return true;
}

std::vector<Index> free_columns(const std::vector<Index>& pivots, Index cols) {
  std::vector<Index> free;
  std::size_t k = 0;
  for (Index j = 0; j < cols; ++j) {
    if (k < pivots.size() && pivots[k] == j) { ++k; continue; }
    free.push_back(j);
  }
  return free;
}

QMatrix kernel_from_rref(const QMatrix& r, const std::vector<Index>& pivots, Index cols) {
  const auto free = free_columns(pivots, cols);
  QMatrix k = zeros(static_cast<Index>(free.size()), cols);
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(static_cast<Index>(f), free[f]) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) k(static_cast<Index>(f), pivots[i]) = -r(static_cast<Index>(i), free[f]);
  }
  return k;
}

constexpr Index kModularThreshold = 600;  // entries; below this exact elimination wins

RrefResult rref_sparse(const SparseSystem& a) {
  if (static_cast<Index>(a.rows.size()) * a.cols <= kModularThreshold) return exact_rref(a.to_dense());
  RrefReconstructor rec(a);
  auto verified = rec.run([&](const ModEchelon& e, const QMatrix& r) {
    // Every input row must equal the combination of RREF rows given by its pivot entries.
    const std::vector<Index>& piv = e.pivots;
    for (const auto& row : a.rows) {
      QVector acc = zero_vector(a.cols);
      for (const auto& [c, v] : row) acc(c) += v;
      for (std::size_t i = 0; i < piv.size(); ++i) {
        const Rational f = acc(piv[i]);
        if (f.is_zero()) continue;
        for (Index j = 0; j < a.cols; ++j)
          if (!r(static_cast<Index>(i), j).is_zero()) acc(j) -= f * r(static_cast<Index>(i), j);
      }
      if (!is_zero(acc)) return false;
    }
    return true;
  });
  if (!verified) return exact_rref(a.to_dense());
  RrefResult out;
  out.pivots = verified->first.pivots;
  out.matrix = zeros(static_cast<Index>(a.rows.size()), a.cols);
  out.matrix.topRows(verified->second.rows()) = verified->second;
  return out;
}

struct KernelResult {
  QMatrix kernel;
  std::vector<Index> pivots;
  std::vector<Index> accepted;  // empty when computed exactly
};

KernelResult kernel_impl(const SparseSystem& a) {
  if (static_cast<Index>(a.rows.size()) * a.cols <= kModularThreshold) {
    const auto r = exact_rref(a.to_dense());
    return {kernel_from_rref(r.matrix, r.pivots, a.cols), r.pivots, {}};
  }
  const IntRows rows(a);
  RrefReconstructor rec(a);
  QMatrix kern;
  auto verified = rec.run([&](const ModEchelon& e, const QMatrix& r) {
    kern = kernel_from_rref(r, e.pivots, a.cols);
    for (Index i = 0; i < kern.rows(); ++i)
      if (!annihilates(rows, scaled_integer(kern.row(i).transpose()))) return false;
    return true;
  });
  if (verified) return {kern, verified->first.pivots, verified->first.accepted};
  const auto r = exact_rref(a.to_dense());
  return {kernel_from_rref(r.matrix, r.pivots, a.cols), r.pivots, {}};
}

}  // namespace

// ---------------------------------------------------------------------------

SparseSystem SparseSystem::from_dense(const QMatrix& a) {
  SparseSystem s(a.cols());
  s.rows.reserve(static_cast<std::size_t>(a.rows()));
  for (Index i = 0; i < a.rows(); ++i) {
    SparseRow row;
    for (Index j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) row.emplace_back(j, a(i, j));
    s.rows.push_back(std::move(row));
  }
  return s;
}

QMatrix SparseSystem::to_dense() const {
  QMatrix m = zeros(static_cast<Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [c, v] : rows[i]) m(static_cast<Index>(i), c) += v;
  return m;
}

RrefResult rref(const QMatrix& m) {
  if (m.rows() * m.cols() <= kModularThreshold) return exact_rref(m);
  return rref_sparse(SparseSystem::from_dense(m));
}

Index rank(const QMatrix& m) { return rref(m).rank(); }

Rational determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  QMatrix a = m;
  const Index n = a.rows();
  Rational det = 1;
  for (Index c = 0; c < n; ++c) {
    Index piv = -1;
    for (Index i = c; i < n; ++i)
      if (!a(i, c).is_zero()) { piv = i; break; }
    if (piv < 0) return 0;
    if (piv != c) { a.row(piv).swap(a.row(c)); det = -det; }
    det *= a(c, c);
    const Rational inv = Rational(1) / a(c, c);
    for (Index i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      const Rational f = a(i, c) * inv;
      for (Index j = c; j < n; ++j)
        if (!a(c, j).is_zero()) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

QMatrix inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("inverse of a non-square matrix");
  const Index n = m.rows();
  QMatrix aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = identity(n);
  const auto r = exact_rref(aug);
  if (r.rank() < n || r.pivots[static_cast<std::size_t>(n - 1)] != n - 1) throw SingularMatrix();
  return r.matrix.rightCols(n);
}

QMatrix kernel(const QMatrix& a) { return kernel(SparseSystem::from_dense(a)); }

QMatrix kernel(const SparseSystem& a) { return kernel_impl(a).kernel; }

std::optional<AffineSolution> try_solve_affine(const SparseSystem& a, const QVector& b,
                                               QVector* certificate) {
  if (static_cast<Index>(a.rows.size()) != b.size()) throw DomainError("solve_affine: dimension mismatch");
  const Index n = a.cols;
  SparseSystem aug(n + 1);
  aug.rows = a.rows;
  for (std::size_t i = 0; i < aug.rows.size(); ++i)
    if (!b(static_cast<Index>(i)).is_zero()) aug.rows[i].emplace_back(n, -b(static_cast<Index>(i)));
  const KernelResult k = kernel_impl(aug);
  const bool t_pivot = !k.pivots.empty() && k.pivots.back() == n;
  if (!t_pivot) {
    AffineSolution sol;
    sol.particular = zero_vector(n);
    std::vector<QVector> homog;
    for (Index i = 0; i < k.kernel.rows(); ++i) {
      if (k.kernel(i, n) == 1) sol.particular = k.kernel.row(i).head(n).transpose();
      else homog.push_back(k.kernel.row(i).head(n).transpose());
    }
    sol.kernel = from_rows(homog, n);
    return sol;
  }
  if (certificate) {
    // y^T [A | -b] = e_n^T, supported on rows independent mod p when available.
    std::vector<Index> support = k.accepted;
    if (support.empty())
      for (std::size_t i = 0; i < a.rows.size(); ++i) support.push_back(static_cast<Index>(i));
    const Index s = static_cast<Index>(support.size());
    SparseSystem tr(s);
    tr.rows.assign(static_cast<std::size_t>(n + 1), {});
    for (Index jj = 0; jj < s; ++jj)
      for (const auto& [c, v] : aug.rows[static_cast<std::size_t>(support[static_cast<std::size_t>(jj)])])
        tr.rows[static_cast<std::size_t>(c)].emplace_back(jj, v);
    QVector rhs = zero_vector(n + 1);
    rhs(n) = 1;
    auto y = try_solve_affine(tr, rhs, nullptr);
    if (!y) throw InvariantViolation("solve_affine: failed to build an infeasibility certificate");
    QVector full = zero_vector(static_cast<Index>(a.rows.size()));
    for (Index jj = 0; jj < s; ++jj) full(support[static_cast<std::size_t>(jj)]) = -y->particular(jj);
    *certificate = full;
  }
  return std::nullopt;
}

AffineSolution solve_affine(const SparseSystem& a, const QVector& b) {
  QVector cert;
  auto sol = try_solve_affine(a, b, &cert);
  if (!sol) throw Infeasible(cert);
  return *sol;
}

AffineSolution solve_affine(const QMatrix& a, const QVector& b) {
  return solve_affine(SparseSystem::from_dense(a), b);
}

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(Index ambient_dim) : n_(ambient_dim), basis_(zeros(0, ambient_dim)) {}

Subspace::Subspace(Index ambient_dim, const QMatrix& generators) : n_(ambient_dim) {
  if (generators.cols() != ambient_dim) throw DomainError("Subspace: generator width mismatch");
  auto r = rref(generators);
  basis_ = r.matrix.topRows(r.rank());
  pivots_ = std::move(r.pivots);
}

Subspace Subspace::full(Index n) { return Subspace(n, identity(n)); }

Subspace Subspace::span(const std::vector<QVector>& vectors, Index ambient_dim) {
  return Subspace(ambient_dim, from_rows(vectors, ambient_dim));
}

Subspace Subspace::coordinate(Index n, const std::vector<Index>& indices) {
  std::vector<QVector> v;
  for (Index i : indices) v.push_back(unit_vector(n, i));
  return span(v, n);
}

QVector Subspace::reduce(const QVector& v) const {
  if (v.size() != n_) throw DomainError("Subspace: vector width mismatch");
  QVector r = v;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const Rational f = r(pivots_[i]);
    if (f.is_zero()) continue;
    for (Index j = 0; j < n_; ++j)
      if (!basis_(static_cast<Index>(i), j).is_zero()) r(j) -= f * basis_(static_cast<Index>(i), j);
  }
  return r;
}

bool Subspace::contains(const QVector& v) const { return nilgrade::is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  if (other.n_ != n_) return false;
  for (Index i = 0; i < other.dim(); ++i)
    if (!contains(other.vector(i))) return false;
  return true;
}

QVector Subspace::coordinates(const QVector& v) const {
  if (!contains(v)) throw DomainError("Subspace: vector not in subspace");
  QVector c(dim());
  for (std::size_t i = 0; i < pivots_.size(); ++i) c(static_cast<Index>(i)) = v(pivots_[i]);
  return c;
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (other.n_ != n_) throw DomainError("Subspace: ambient mismatch");
  if (other.is_zero()) return *this;
  if (is_zero()) return other;
  return Subspace(n_, vstack(basis_, other.basis_));
}

Subspace Subspace::annihilator() const {
  if (is_zero()) return full(n_);
  return Subspace(n_, kernel(basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.n_ != n_) throw DomainError("Subspace: ambient mismatch");
  if (is_zero() || other.is_zero()) return zero(n_);
  if (contains(other)) return other;
  if (other.contains(*this)) return *this;
  return (annihilator() + other.annihilator()).annihilator();
}

Subspace Subspace::image(const QMatrix& map) const {
  if (map.cols() != n_) throw DomainError("Subspace::image: width mismatch");
  if (is_zero()) return zero(map.rows());
  return Subspace(map.rows(), basis_ * map.transpose());
}

Subspace Subspace::preimage(const QMatrix& map) const {
  if (map.rows() != n_) throw DomainError("Subspace::preimage: height mismatch");
  // v with N map v = 0 where rows of N span the annihilator.
  const Subspace ann = annihilator();
  if (ann.is_zero()) return full(map.cols());
  return Subspace(map.cols(), kernel(QMatrix(ann.basis() * map)));
}

QMatrix mul(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("mul: shape mismatch");
  QMatrix r = zeros(a.rows(), b.cols());
  std::vector<std::vector<Index>> nz(static_cast<std::size_t>(b.rows()));
  for (Index k = 0; k < b.rows(); ++k)
    for (Index j = 0; j < b.cols(); ++j)
      if (!b(k, j).is_zero()) nz[static_cast<std::size_t>(k)].push_back(j);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k) {
      const Rational& x = a(i, k);
      if (x.is_zero()) continue;
      for (Index j : nz[static_cast<std::size_t>(k)]) r(i, j) += x * b(k, j);
    }
  return r;
}

QMatrix vstack(const QMatrix& a, const QMatrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw DomainError("vstack: width mismatch");
  QMatrix m(a.rows() + b.rows(), a.cols());
  m.topRows(a.rows()) = a;
  m.bottomRows(b.rows()) = b;
  return m;
}

QMatrix from_rows(const std::vector<QVector>& rows, Index cols) {
  QMatrix m(static_cast<Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DomainError("from_rows: width mismatch");
    m.row(static_cast<Index>(i)) = rows[i].transpose();
  }
  return m;
}

QVector flatten(const QMatrix& m) {
  QVector v(m.rows() * m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

QMatrix unflatten(const QVector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw DomainError("unflatten: size mismatch");
  QMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  return m;
}

}  // namespace nilgrade
