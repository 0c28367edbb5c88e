#pragma once

#include <string_view>

#include "gnet/types.hpp"

namespace gnet {

/// Ridge weight gamma on ||w||^2. Strictly positive and finite.
class Regularizer {
 public:
  explicit Regularizer(double gamma);
  double value() const noexcept { return gamma_; }

 private:
  double gamma_;
};

/// Which closed form the regularized solve used. Dual factorizes the S x S
/// system (gamma I + G G^T); primal factorizes the L x L system
/// (gamma I + G^T G).
enum class RwddBranch { Dual, Primal };

std::string_view to_string(RwddBranch branch);

/// Dual when S <= L (a tie goes to the dual side), primal otherwise.
constexpr RwddBranch select_branch(Index samples, Index basis_size) noexcept {
  return samples <= basis_size ? RwddBranch::Dual : RwddBranch::Primal;
}

/// Relative singular-value cutoff used by solve_wdd.
inline constexpr double kWddRankTolerance = 1e-12;

/// Unregularized minimum-norm least squares w = pinv(G) Phi through an SVD.
/// Singular values at or below kWddRankTolerance * sigma_max are dropped.
Matrix solve_wdd(const Matrix& G, const Matrix& Phi);

/// w = G^T (gamma I_S + G G^T)^{-1} Phi via Cholesky of the S x S system.
Matrix solve_rwdd_dual(const Matrix& G, const Matrix& Phi, Regularizer gamma);

/// w = (gamma I_L + G^T G)^{-1} G^T Phi via Cholesky of the L x L system.
Matrix solve_rwdd_primal(const Matrix& G, const Matrix& Phi, Regularizer gamma);

struct RwddSolution {
  Matrix weights;
  RwddBranch branch;
};

/// Picks the branch with select_branch and returns that branch's result
/// unchanged.
RwddSolution solve_rwdd(const Matrix& G, const Matrix& Phi, Regularizer gamma);

/// Precomputed Gram matrix and right-hand side for repeated solves with
/// different gamma on the same (G, Phi). Each solve only refactorizes
/// gamma I + Gram, and yields exactly what solve_rwdd returns.
class RidgeSystem {
 public:
  RidgeSystem(const Matrix& G, const Matrix& Phi);
  RidgeSystem(const Matrix& G, const Matrix& Phi, RwddBranch branch);

  RwddBranch branch() const noexcept { return branch_; }
  Index samples() const noexcept { return samples_; }
  Index basis_size() const noexcept { return basis_size_; }

  RwddSolution solve(Regularizer gamma) const;

 private:
  RwddBranch branch_;
  Index samples_;
  Index basis_size_;
  Matrix gram_;  // lower triangle holds G G^T (dual) or G^T G (primal)
  Matrix rhs_;   // Phi (dual) or G^T Phi (primal)
  Matrix G_;     // kept only for the dual back-substitution w = G^T alpha
};

}  // namespace gnet
