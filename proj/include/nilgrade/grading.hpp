#pragma once

#include "nilgrade/algebra.hpp"

#include <map>
#include <vector>

namespace nilgrade {

/// Element of Z^r.
using Weight = std::vector<long>;

struct GradedComponent {
  Weight weight;
  Subspace space;
};

/// Algebra grading in Z^r: g = sum of g_w, with g_v g_w inside g_{v+w}.
///
/// Components are stored sorted by weight, zero components are dropped. The constructor checks
/// the direct-sum and product axioms exactly and throws BadGrading otherwise.
class Grading {
 public:
  Grading() = default;
  Grading(Algebra a, int rank, std::vector<GradedComponent> components);

  /// Single component of weight 0 in Z^rank.
  static Grading trivial(const Algebra& a, int rank = 1);
  /// Rank-one grading with basis vector i in degree degrees[i].
  static Grading from_degrees(const Algebra& a, const std::vector<long>& degrees);

  const Algebra& algebra() const { return a_; }
  int rank() const { return rank_; }
  const std::vector<GradedComponent>& components() const { return comps_; }
  std::vector<Weight> weights() const;
  /// {0} when w is not a weight.
  Subspace component(const Weight& w) const;
  /// Columns: bases of the components, in component order.
  QMatrix adapted_basis() const;
  /// Degree of each adapted basis column (rank one only).
  std::vector<long> adapted_degrees() const;

  /// Rank-one flags.
  bool is_nonnegative() const;
  bool is_positive() const;
  /// No component of weight 0.
  bool is_invertible() const;
  /// Positive and generated by the degree-1 component.
  bool is_carnot_grading() const;

  /// Push forward along a homomorphism Z^r -> Z^s given by an s x r integer matrix (rows).
  Grading push_forward(const std::vector<Weight>& rows) const;

  /// Derivation acting by f(w) on g_w, for a linear form f on Z^r.
  QMatrix derivation(const std::vector<Rational>& f) const;

 private:
  Algebra a_;
  int rank_ = 0;
  std::vector<GradedComponent> comps_;
};

/// Throws BadGrading naming the first failing axiom.
void check_grading_axioms(const Algebra& a, const std::vector<GradedComponent>& comps);

}  // namespace nilgrade
