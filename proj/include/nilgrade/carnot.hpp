#pragma once

#include "nilgrade/grading.hpp"

#include <optional>

namespace nilgrade {

/// Associated graded algebra of the lower central series.
struct AssociatedGraded {
  Algebra algebra;  // structure constants in the adapted basis
  Grading grading;  // level i of the series in degree i
  /// Columns: the adapted basis of the original algebra, lifting the basis of `algebra`.
  QMatrix basis;
};

/// Car(a). Each level is spanned by standard basis vectors where possible, completed by RREF
/// vectors of the level; basis names are kept for standard basis vectors. Throws NotNilpotent.
AssociatedGraded car(const Algebra& a);

struct CarnotVerdict {
  bool carnot = false;
  /// Derivation inducing the identity on a / a^(2).
  std::optional<QMatrix> witness;
  /// Eigenspace grading ker(D - i) of the witness.
  std::optional<Grading> grading;
  /// When not Carnot: y with y^T A = 0 and y^T b != 0 for the affine system A x = b in the
  /// unknowns D(r, c), flattened as r * dim + c.
  QVector certificate;
};

/// Decides whether a admits a Carnot grading. Throws NotNilpotent.
CarnotVerdict carnot_test(const Algebra& a);

/// Carnot grading with degree-one part v, if any. Throws BadComplement unless v + a^(2) = a is
/// direct, NotNilpotent for non-nilpotent algebras.
CarnotVerdict carnot_with_prescribed_v1(const Algebra& a, const Subspace& v);

/// Carnot grading with every component stable under each matrix of s, or nullopt when none
/// exists (in particular when a is not Carnot). Throws NotAutomorphism, NotNilpotent.
std::optional<Grading> invariant_carnot(const Algebra& a, const std::vector<QMatrix>& s);

/// True when s is an invertible algebra homomorphism.
bool is_automorphism(const Algebra& a, const QMatrix& s);

}  // namespace nilgrade
