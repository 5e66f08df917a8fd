#pragma once

#include "nilgrade/exactlin.hpp"

#include <vector>

namespace nilgrade {

/// Dense integer matrix, row-major. Kept outside Eigen: gmpxx expression templates and Eigen's
/// do not compose, and HNF only needs row operations.
using IntRow = std::vector<Integer>;
using IntMatrix = std::vector<IntRow>;

/// Row Hermite normal form: echelon, positive pivots, entries above a pivot reduced into
/// [0, pivot). Zero rows are dropped.
IntMatrix hermite_normal_form(IntMatrix m);
/// Basis (rows) of {x in Z^m : x M = 0}.
IntMatrix integer_left_kernel(const IntMatrix& m, std::size_t cols);

/// Finitely generated subgroup of Q^n: (1/scale) times the row span over Z of an HNF matrix.
class ZLattice {
 public:
  ZLattice() = default;
  explicit ZLattice(Index ambient_dim);  // zero lattice

  static ZLattice from_generators(const std::vector<QVector>& generators, Index ambient_dim);
  /// Lattice spanned by the rows of m.
  static ZLattice from_rows(const QMatrix& m);
  static ZLattice standard(Index n);

  Index ambient_dim() const { return n_; }
  Index rank() const { return static_cast<Index>(hnf_.size()); }
  bool is_full() const { return rank() == n_; }
  const IntMatrix& hnf() const { return hnf_; }
  const Integer& denominator_scale() const { return scale_; }
  /// HNF basis as rational rows.
  QMatrix basis() const;
  QVector basis_vector(Index i) const;

  bool contains(const QVector& v) const;
  bool contains(const ZLattice& other) const;
  /// Integer coordinates of v in the HNF basis. Throws DomainError if v is not in the lattice.
  std::vector<Integer> coordinates(const QVector& v) const;

  /// Image under a linear map acting on column vectors.
  ZLattice image(const QMatrix& map) const;
  ZLattice operator+(const ZLattice& other) const;
  ZLattice intersect(const ZLattice& other) const;
  ZLattice intersect(const Subspace& w) const;
  Subspace span() const;
  /// |det| of the basis; requires a full lattice.
  Rational covolume() const;

  friend bool operator==(const ZLattice& a, const ZLattice& b) {
    return a.n_ == b.n_ && a.scale_ == b.scale_ && a.hnf_ == b.hnf_;
  }

 private:
  ZLattice(Index n, IntMatrix rows, Integer scale);
  Index n_ = 0;
  IntMatrix hnf_;
  Integer scale_ = 1;
};

ZLattice hnf_lattice(const std::vector<QVector>& generators, Index ambient_dim);
bool membership(const ZLattice& l, const QVector& v);
/// [L1 : L2] for L2 a finite-index subgroup of L1. Throws NotSublattice.
Rational lattice_index(const ZLattice& l1, const ZLattice& l2);

}  // namespace nilgrade
