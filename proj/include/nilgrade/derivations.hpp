#pragma once

#include "nilgrade/grading.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace nilgrade {

/// Commutator xy - yx of matrices.
QMatrix commutator(const QMatrix& x, const QMatrix& y);

/// Linear span of square matrices, kept as a subspace of Q^(n*n) (row-major flattening).
class MatrixSpace {
 public:
  MatrixSpace() = default;
  explicit MatrixSpace(Index n) : n_(n), flat_(n * n) {}
  MatrixSpace(Index n, const std::vector<QMatrix>& generators);

  Index size() const { return n_; }
  Index dim() const { return flat_.dim(); }
  std::vector<QMatrix> basis() const;
  QMatrix element(Index i) const { return unflatten(flat_.vector(i), n_, n_); }
  bool contains(const QMatrix& m) const { return flat_.contains(flatten(m)); }
  const Subspace& flat() const { return flat_; }

  /// Elements commuting with every matrix in `family`.
  MatrixSpace centralizer(const std::vector<QMatrix>& family) const;
  /// Span of all commutators [x, y].
  MatrixSpace derived() const;
  bool is_solvable() const;
  /// True when the associative algebra generated by `ms` is nilpotent.
  static bool generates_nilpotent_algebra(const std::vector<QMatrix>& ms, Index n);

 private:
  Index n_ = 0;
  Subspace flat_;
};

/// Der(a). Matrices act on column coordinate vectors.
struct DerivationSpace {
  Index n = 0;
  MatrixSpace space;
  std::vector<QMatrix> basis;
  Index dim() const { return static_cast<Index>(basis.size()); }
};

/// Leibniz equations on the unknowns D(r, c), flattened as r * dim + c.
SparseSystem leibniz_system(const Algebra& a);
DerivationSpace derivations(const Algebra& a);
bool is_derivation(const Algebra& a, const QMatrix& d);

enum class Certificate { proven, heuristic };
std::string to_string(Certificate c);

/// Commuting Q-diagonalizable derivations with their joint weight decomposition.
struct SplitTorus {
  Algebra algebra;
  std::vector<QMatrix> generators;     // t_1..t_r
  std::vector<Weight> weights;         // sorted; integer, spanning Z^r
  std::vector<Subspace> weight_spaces; // parallel to weights
  Certificate certificate = Certificate::heuristic;
  /// Human-readable reason for the certificate level.
  std::string certificate_note;

  int rank() const { return static_cast<int>(generators.size()); }
};

struct TorusOptions {
  std::uint64_t seed = 0;
  /// Random centralizer elements tried per extension step.
  int draws = 24;
  int precision_budget = 4096;
};

/// Joint eigenspace decomposition of commuting split semisimple matrices, with weights rewritten
/// in a canonical Z-basis of their span. Throws DomainError if the family is not split commuting.
SplitTorus make_torus(const Algebra& a, const std::vector<QMatrix>& family);

/// Greedy maximal Q-split torus of Der(a), with a certificate level:
///  - proven: every semisimple derivation commuting with the torus lies in it, or the centralizer
///    is solvable and the torus is the split part of a certified maximal torus;
///  - heuristic: extension attempts failed without such a certificate.
SplitTorus maximal_split_torus(const Algebra& a, std::mt19937_64& rng, const TorusOptions& opts = {});
SplitTorus maximal_split_torus(const Algebra& a, const TorusOptions& opts = {});

/// The Cartan-type grading of the torus in Z^r.
Grading weight_decomposition(const SplitTorus& t);

}  // namespace nilgrade
