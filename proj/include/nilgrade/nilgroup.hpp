#pragma once

#include "nilgrade/grading.hpp"
#include "nilgrade/zlattice.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nilgrade {

/// One term of the BCH series: coeff times the standard bracketing of a Lyndon word in
/// x = 0 < y = 1, e.g. xy -> [x, y], xxy -> [x, [x, y]], xyy -> [[x, y], y].
struct BchTerm {
  std::vector<std::uint8_t> word;
  Rational coeff;
};

/// Nonzero terms of log(exp x exp y) up to the given degree, from the Dynkin series rewritten in
/// the Lyndon basis of the free Lie algebra.
const std::vector<BchTerm>& bch_table(int degree);
/// Least common multiple of the denominators of the BCH coefficients of degree at most `degree`.
Integer bch_denominator(int degree);

/// Simply connected nilpotent group of a nilpotent Lie algebra, in logarithmic coordinates.
class NilGroup {
 public:
  /// Throws NotLie, NotNilpotent, ClassTooLarge.
  explicit NilGroup(Algebra a, int class_cap = 10);

  const Algebra& algebra() const { return a_; }
  Index dim() const { return a_.dim(); }
  int nilpotency_class() const { return class_; }

  QVector bracket(const QVector& x, const QVector& y) const;
  QVector multiply(const QVector& x, const QVector& y) const;
  QVector inverse(const QVector& x) const { return -x; }
  /// x^m = m x.
  QVector power(const QVector& x, const Integer& m) const { return Rational(m) * x; }

 private:
  struct Entry {
    Index i, j, k;
    Rational c;
  };
  Algebra a_;
  int class_ = 0;
  std::vector<Entry> sc_;  // i < j only
};

using GroupElement = QVector;

QVector bch_multiply(const NilGroup& g, const QVector& x, const QVector& y);

/// sum over i of i * dim(g^(i) / g^(i+1)). Throws NotNilpotent.
long growth_degree(const Algebra& a);

/// sum of n * dim g_n for a rank-one grading.
long graded_degree(const Grading& gr);

/// Automorphism acting by t^n on g_n. Throws BadGrading (rank not one, negative degrees).
QMatrix dilation(const Grading& gr, const Rational& t);

/// Subgroup exp(L) for a full lattice L of logarithms.
struct LatticeSubgroup {
  ZLattice log_lattice;
  /// Closure of L under the BCH product has been certified.
  bool verified = false;
};

/// Certifies closure termwise: the Z-span of brackets of length k of elements of L, divided by the
/// BCH denominator of degree k, lies in L. Sufficient, not necessary.
LatticeSubgroup make_lattice_subgroup(const NilGroup& g, const ZLattice& log_lattice);

/// Smallest lattice containing the basis vectors that passes the closure certificate.
LatticeSubgroup standard_lattice(const NilGroup& g);

struct DefendoCertificate {
  Integer s;        // BCH denominator up to the class
  Integer k;        // least k with L inside k^-1 Z^d
  Integer k_prime;  // least k' with k' Z^d inside L
  Index d = 0;
  Integer k0;       // s k^d k'
  QMatrix basis;    // columns: graded basis with integral structure constants
  /// m values checked by exact membership of delta(m)(L) in L.
  std::vector<Integer> certified_m;
};

/// Modulus k0 with delta(m)(L) inside L for m = 1 mod k0. Certifies m = k0 + 1 and 2 k0 + 1.
/// Throws NotNonnegativeGrading, DomainError (lattice not verified), InvariantViolation.
DefendoCertificate defendo_modulus(const NilGroup& g, const Grading& gr, const LatticeSubgroup& lattice);

/// radicand^(1/index), compared exactly.
struct RootValue {
  Rational radicand = 0;
  int index = 1;
  double value() const;
  std::string str() const;
};
int compare(const RootValue& a, const RootValue& b);
inline bool operator==(const RootValue& a, const RootValue& b) { return compare(a, b) == 0; }
inline bool operator<(const RootValue& a, const RootValue& b) { return compare(a, b) < 0; }
/// t * r as a root value.
RootValue scale(const RootValue& r, const Rational& t);

/// max over degrees n of |x_n|^(1/n), max-norm in the adapted basis; degree 0 uses |x_0|.
/// Throws NotNonnegativeGrading.
RootValue guivarch_length(const Grading& gr, const QVector& x);

struct SystoleEstimate {
  bool found = false;  // false: no nonzero lattice point of length <= R
  RootValue systole;
  QVector witness;
  std::size_t visited = 0;
};

/// Shortest nonzero point of L for the Guivarc'h length among those of length <= R.
/// Throws BoxTooLarge past `budget` enumeration nodes.
SystoleEstimate systole_estimate(const Grading& gr, const ZLattice& lattice, const Rational& radius,
                                 std::size_t budget = 10'000'000);
/// Exact systole by doubling the radius from 1.
SystoleEstimate systole(const Grading& gr, const ZLattice& lattice, std::size_t budget = 10'000'000);

/// Lower bound for the length of every conjugate of a nonzero lattice element: the least
/// |pi_n(x)|^(1/n) over x in L meeting the degree >= n part, pi_n the lowest component.
/// Needs a positive grading.
RootValue normal_systole_lower_bound(const Grading& gr, const ZLattice& lattice,
                                     std::size_t budget = 10'000'000);

/// Lambda'_n: n Z on a complement of [g,g], n^c Z on [g,g], in a basis with constants divisible
/// by c!. `verified` reports whether BCH closure was certified.
LatticeSubgroup uppersys_family(const NilGroup& g, const Integer& n);
/// c dim [g,g] + dim g/[g,g].
long uppersys_exponent(const Algebra& a);

struct SystolicRow {
  Integer m;
  Rational index;      // [L : delta(m) L]
  Rational covolume;   // of delta(m) L in the original coordinates
  RootValue systole;
  RootValue normal_lower_bound;
};

struct SystolicExperiment {
  std::vector<SystolicRow> rows;
  /// Least-squares slope of log(index) against log(systole).
  double slope = 0;
};

SystolicExperiment systolic_experiment(const Grading& gr, const ZLattice& lattice, const std::vector<Integer>& ms,
                                       std::size_t budget = 10'000'000);

}  // namespace nilgrade
