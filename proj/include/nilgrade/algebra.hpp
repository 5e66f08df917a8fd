#pragma once

#include "nilgrade/exactlin.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nilgrade {

enum class AlgebraKind { lie, general };

std::string to_string(AlgebraKind k);

/// Finite-dimensional algebra over Q given by structure constants: e_i e_j = sum_k c(i,j,k) e_k.
class Algebra {
 public:
  Algebra() = default;
  Algebra(Index dim, AlgebraKind kind, std::vector<std::string> names = {});

  static Algebra abelian(Index dim);

  Index dim() const { return n_; }
  AlgebraKind kind() const { return kind_; }
  bool is_lie() const { return kind_ == AlgebraKind::lie; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Index i) const { return names_[static_cast<std::size_t>(i)]; }
  void set_names(std::vector<std::string> names);

  const Rational& sc(Index i, Index j, Index k) const { return c_[flat(i, j, k)]; }
  void set_sc(Index i, Index j, Index k, const Rational& v) { c_[flat(i, j, k)] = v; }
  /// For Lie algebras also sets the antisymmetric partner.
  void set_product(Index i, Index j, const QVector& value);

  QVector product(Index i, Index j) const;
  QVector product(const QVector& x, const QVector& y) const;
  /// Matrix of y -> x y.
  QMatrix left_multiplication(const QVector& x) const;
  /// Matrix of y -> y x.
  QMatrix right_multiplication(const QVector& x) const;
  bool is_abelian() const;

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.n_ == b.n_ && a.kind_ == b.kind_ && a.c_ == b.c_;
  }

 private:
  std::size_t flat(Index i, Index j, Index k) const {
    return static_cast<std::size_t>((i * n_ + j) * n_ + k);
  }
  Index n_ = 0;
  AlgebraKind kind_ = AlgebraKind::lie;
  std::vector<std::string> names_;
  std::vector<Rational> c_;
};

struct Violation {
  std::string axiom;  // "antisymmetry" or "jacobi"
  Index i = 0, j = 0, k = 0;  // witness triple (0-based)
  Index coordinate = 0;
  Rational value;
  std::string str() const;  // 1-based rendering
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Algebra& a);
/// Throws NotLie when the algebra is not a valid Lie algebra.
void require_lie(const Algebra& a);

/// Span of all products u w with u in U, w in W.
Subspace product_subspace(const Algebra& a, const Subspace& u, const Subspace& w);
/// Smallest subalgebra containing v.
Subspace generated_subalgebra(const Algebra& a, const Subspace& v);

struct LowerSeries {
  std::vector<Subspace> terms;  // g^(1), g^(2), ... ending at {0} or the first repetition
  std::optional<int> nilpotency_class;
  bool nilpotent() const { return nilpotency_class.has_value(); }
  std::vector<Index> dims() const;
  /// g^(i), 1-based; {0} past the end for nilpotent algebras.
  Subspace term(int i) const;
};

LowerSeries lower_series(const Algebra& a);

Subspace center(const Algebra& a);
/// Two-sided ideal test.
bool is_ideal(const Algebra& a, const Subspace& u);
bool is_subalgebra(const Algebra& a, const Subspace& u);
/// Largest W in U with g W, W g, op(W) all inside W.
Subspace largest_invariant_subideal(const Algebra& a, const Subspace& u, const std::vector<QMatrix>& ops);

/// Same algebra in the basis given by the columns of P (old coordinates = P new coordinates).
/// Throws SingularMatrix.
Algebra base_change(const Algebra& a, const QMatrix& p);
Algebra direct_product(const Algebra& a, const Algebra& b);

}  // namespace nilgrade
