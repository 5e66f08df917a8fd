#pragma once

#include "nilgrade/errors.hpp"
#include "nilgrade/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace nilgrade {

using Index = Eigen::Index;

struct RrefResult {
  QMatrix matrix;               // same shape as the input, zero rows at the bottom
  std::vector<Index> pivots;    // pivot column of each nonzero row
  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Reduced row echelon form. Pivots are chosen leftmost column first, topmost row first.
RrefResult rref(const QMatrix& m);
Index rank(const QMatrix& m);

Rational determinant(const QMatrix& m);
/// Throws SingularMatrix.
QMatrix inverse(const QMatrix& m);

/// One row of a sparse linear system: (column, coefficient) pairs, columns distinct.
using SparseRow = std::vector<std::pair<Index, Rational>>;

/// Linear system given row by row. Used for the large Leibniz systems.
struct SparseSystem {
  Index cols = 0;
  std::vector<SparseRow> rows;

  SparseSystem() = default;
  explicit SparseSystem(Index c) : cols(c) {}
  static SparseSystem from_dense(const QMatrix& a);
  QMatrix to_dense() const;
};

/// Basis of {x : A x = 0}, one vector per row. The basis is the canonical one attached to the
/// free columns of rref(A): vector f has a 1 in free column f and 0 in every other free column.
QMatrix kernel(const QMatrix& a);
QMatrix kernel(const SparseSystem& a);

struct Infeasible : DomainError {
  explicit Infeasible(QVector y)
      : DomainError("linear system is inconsistent"), certificate(std::move(y)) {}
  QVector certificate;  // y with y^T A = 0 and y^T b != 0
};

struct AffineSolution {
  QVector particular;
  QMatrix kernel;  // rows span the homogeneous solutions
};

/// Solves A x = b. Throws Infeasible carrying a certificate.
AffineSolution solve_affine(const QMatrix& a, const QVector& b);
AffineSolution solve_affine(const SparseSystem& a, const QVector& b);
/// As solve_affine, but reports inconsistency through the return value.
std::optional<AffineSolution> try_solve_affine(const SparseSystem& a, const QVector& b,
                                               QVector* certificate = nullptr);

/// Linear subspace of Q^n with a canonical RREF basis (rows).
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(Index ambient_dim);  // zero subspace
  /// Span of the rows of `generators`.
  Subspace(Index ambient_dim, const QMatrix& generators);

  static Subspace zero(Index n) { return Subspace(n); }
  static Subspace full(Index n);
  static Subspace span(const std::vector<QVector>& vectors, Index ambient_dim);
  /// Span of a subset of the standard basis.
  static Subspace coordinate(Index n, const std::vector<Index>& indices);

  Index ambient_dim() const { return n_; }
  Index dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == n_; }
  const QMatrix& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }
  QVector vector(Index i) const { return basis_.row(i).transpose(); }

  bool contains(const QVector& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v in the RREF basis. Throws DomainError if v is not in the subspace.
  QVector coordinates(const QVector& v) const;
  /// Reduces v modulo the subspace (zero on pivot columns).
  QVector reduce(const QVector& v) const;

  Subspace operator+(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  /// {f : f(u) = 0 for all u}, in the dual coordinates.
  Subspace annihilator() const;
  /// Image under a linear map (acting on column vectors).
  Subspace image(const QMatrix& map) const;
  /// Preimage {v : map v in this}.
  Subspace preimage(const QMatrix& map) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.dim() == b.dim() && a.basis_ == b.basis_;
  }

 private:
  Index n_ = 0;
  QMatrix basis_;
  std::vector<Index> pivots_;
};

/// Matrix product skipping zero entries; much faster than Eigen's blocked kernel for Rational.
QMatrix mul(const QMatrix& a, const QMatrix& b);

/// Rows of `a` stacked above rows of `b`.
QMatrix vstack(const QMatrix& a, const QMatrix& b);
QMatrix from_rows(const std::vector<QVector>& rows, Index cols);
/// Row-major flattening of a matrix.
QVector flatten(const QMatrix& m);
QMatrix unflatten(const QVector& v, Index rows, Index cols);

}  // namespace nilgrade
