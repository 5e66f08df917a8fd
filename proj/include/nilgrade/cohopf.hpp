#pragma once

#include "nilgrade/cones.hpp"
#include "nilgrade/polynomial.hpp"
#include "nilgrade/zlattice.hpp"

namespace nilgrade {

/// Largest characteristic ideal inside the non-positive part of a contractive decomposition.
Subspace cni_plus(const Algebra& a, const TorusOptions& opts = {});

/// Largest characteristic ideal inside the zero weight space of the computed split torus.
/// Over Q this can overshoot the radical when the torus misses anisotropic directions.
Subspace cni(const Algebra& a, const TorusOptions& opts = {});

struct CohopfClassification {
  bool cohopfian = false;
  bool non_cohopfian = false;
  bool dis_cohopfian = false;
  bool weakly_dis_cohopfian = false;
};

struct CohopfReport {
  bool semicontractable = false;
  bool contractable = false;
  bool essentially_contractable = false;
  /// dim g_[0]; also the least Hirsch length of an intersection of iterated images of the lattice.
  Index uncontracted_dim = 0;
  Subspace cni_plus;
  Subspace cni;
  std::string cni_caveat;
  CohopfClassification classification;
  Certificate certificate_level = Certificate::heuristic;
  std::string certificate_note;
  int torus_rank = 0;
  /// Fine cocharacter behind the contractive decomposition.
  std::vector<long> witness;
};

/// Throws NotLie, NotNilpotent.
CohopfReport classify(const Algebra& a, const TorusOptions& opts = {});

/// Some lattice L with xi(L) in L. Throws SingularMatrix.
bool stabilizes_some_lattice(const QMatrix& xi);
/// Some lattice L with xi(L) = L. Throws SingularMatrix.
bool preserves_some_lattice(const QMatrix& xi);

/// Weight log(base) / root, kept exact.
struct AbsoluteWeight {
  Rational base = 1;
  int root = 1;
  double value() const;
  /// Sign of the weight: compares base with 1.
  int sign() const;
};
/// Exact comparison of log(a.base)/a.root with log(b.base)/b.root.
int compare(const AbsoluteWeight& a, const AbsoluteWeight& b);

struct AbsoluteComponent {
  AbsoluteWeight weight;
  std::vector<Polynomial> factors;  // monic irreducible factors of the minimal polynomial
  Subspace space;                   // sum of their generalized eigenspaces
};

/// Grading of Q^n by log moduli of the eigenvalues of xi, one weight per irreducible factor P of
/// the minimal polynomial: log |P(0)| / deg P. Components sorted by increasing weight.
struct AbsoluteGrading {
  QMatrix xi;
  std::vector<AbsoluteComponent> components;
  Subspace zero_part;
  /// No negative weight.
  bool nonnegative() const;
};

/// Throws SingularMatrix, PrecisionExhausted (from factoring).
AbsoluteGrading absolute_grading(const QMatrix& xi, int precision_budget = 4096);

/// Intersection of xi^n(lambda) over n >= 0, as lambda meet the zero part of the absolute grading.
/// Throws DoesNotStabilize when xi(lambda) is not inside lambda.
ZLattice intersection_lattice(const QMatrix& xi, const ZLattice& lambda, int precision_budget = 4096);

}  // namespace nilgrade
