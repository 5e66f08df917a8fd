#pragma once

#include "nilgrade/derivations.hpp"

#include <optional>

namespace nilgrade {

/// Some x in Q^m with A x >= b (row-wise), by Fourier-Motzkin elimination, or nullopt.
/// Throws BudgetExhausted when more than `budget` intermediate inequalities are needed.
std::optional<std::vector<Rational>> solve_inequalities(const std::vector<std::vector<Rational>>& a,
                                                        const std::vector<Rational>& b,
                                                        std::size_t budget = 200000);

/// Extreme rays of the pointed part of the dual cone {f : f(w) >= 0 for all weights}, restricted
/// to the span of the weights. Throws BudgetExhausted past `budget` candidate subsets.
std::vector<std::vector<Rational>> dual_cone_rays(const std::vector<Weight>& weights, std::size_t budget = 2000000);

/// Positive weights: those outside the lineality space of the cone they generate.
std::vector<bool> positive_weights(const std::vector<Weight>& weights);
/// Same answer from one feasibility problem per weight: some f >= 0 on all weights with f(w) > 0.
std::vector<bool> positive_weights_lp(const std::vector<Weight>& weights);

/// Primitive integer functional, non-negative on all weights and positive on the positive ones.
/// Zero when there are no positive weights.
std::vector<long> fine_cocharacter(const std::vector<Weight>& weights);
std::vector<long> fine_cocharacter(const Grading& gr);

struct ConeFlags {
  bool contractable = false;
  bool semicontractable = false;
  /// No weight zero: some invertible diagonalizable derivation exists.
  bool flexible_split = false;
  /// Nilpotent and some linear form is 1 on every principal weight.
  bool carnot_by_weights = false;
};

/// Weights of the grading induced on a / a^(2).
std::vector<Weight> principal_weights(const Grading& gr);
ConeFlags cone_flags(const Grading& gr);

struct ContractiveDecomposition {
  Subspace zero_part;  // sum of the non-positive weight spaces
  Subspace plus_part;  // sum of the positive weight spaces
  Index uncontracted_dim = 0;
  Index contracted_dim = 0;
  std::vector<long> witness;  // fine cocharacter
};

/// Throws InvariantViolation if the zero part is not a subalgebra or the plus part not an ideal.
ContractiveDecomposition contractive_decomposition(const Grading& gr);

/// Rank-one grading pushed through the fine cocharacter; degree 0 is the zero part.
Grading fine_nonneg_grading(const Grading& gr);
/// Same, from the grading of a maximal split torus.
Grading fine_nonneg_grading(const Algebra& a, const TorusOptions& opts = {});

}  // namespace nilgrade
