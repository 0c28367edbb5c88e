#include "gnet/solver.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "gnet/errors.hpp"

namespace gnet {
namespace {

void check_targets(const Matrix& G, const Matrix& Phi) {
  if (G.rows() < 1 || G.cols() < 1) throw ShapeError("activation matrix is empty");
  if (Phi.rows() != G.rows()) {
    throw ShapeError("target matrix has " + std::to_string(Phi.rows()) +
                     " rows but the activation matrix has " + std::to_string(G.rows()));
  }
  if (Phi.cols() < 1) throw ShapeError("target matrix has no columns");
}

}  // namespace

Regularizer::Regularizer(double gamma) : gamma_(gamma) {
  if (!std::isfinite(gamma) || gamma <= 0.0) {
    throw ParameterError("regularizer gamma must be finite and > 0, got " + std::to_string(gamma));
  }
}

std::string_view to_string(RwddBranch branch) {
  return branch == RwddBranch::Dual ? "dual" : "primal";
}

Matrix solve_wdd(const Matrix& G, const Matrix& Phi) {
  check_targets(G, Phi);
  if (G.isZero(0.0)) throw NumericError("WDD: activation matrix is all zero (degenerate)");
  Eigen::BDCSVD<Matrix> svd(G, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(kWddRankTolerance);
  return svd.solve(Phi);
}

RidgeSystem::RidgeSystem(const Matrix& G, const Matrix& Phi)
    : RidgeSystem(G, Phi, select_branch(G.rows(), G.cols())) {}

RidgeSystem::RidgeSystem(const Matrix& G, const Matrix& Phi, RwddBranch branch)
    : branch_(branch), samples_(G.rows()), basis_size_(G.cols()) {
  check_targets(G, Phi);
  if (branch_ == RwddBranch::Dual) {
    gram_ = Matrix::Zero(samples_, samples_);
    gram_.selfadjointView<Eigen::Lower>().rankUpdate(G);
    rhs_ = Phi;
    G_ = G;
  } else {
    gram_ = Matrix::Zero(basis_size_, basis_size_);
    gram_.selfadjointView<Eigen::Lower>().rankUpdate(G.transpose());
    rhs_.noalias() = G.transpose() * Phi;
  }
}

RwddSolution RidgeSystem::solve(Regularizer gamma) const {
  Matrix system = gram_;
  system.diagonal().array() += gamma.value();
  Eigen::LLT<Matrix, Eigen::Lower> llt(system);
  if (llt.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "R-WDD " << to_string(branch_) << " system is not numerically positive definite (gamma="
        << gamma.value() << ", size " << system.rows() << "x" << system.cols() << ")";
    throw NumericError(msg.str());
  }
  Matrix solved = llt.solve(rhs_);
  if (!solved.allFinite()) {
    std::ostringstream msg;
    msg << "R-WDD " << to_string(branch_) << " solve produced non-finite weights (gamma="
        << gamma.value() << ", size " << system.rows() << "x" << system.cols() << ")";
    throw NumericError(msg.str());
  }
  if (branch_ == RwddBranch::Dual) {
    Matrix w;
    w.noalias() = G_.transpose() * solved;
    return {std::move(w), branch_};
  }
  return {std::move(solved), branch_};
}

Matrix solve_rwdd_dual(const Matrix& G, const Matrix& Phi, Regularizer gamma) {
  return RidgeSystem(G, Phi, RwddBranch::Dual).solve(gamma).weights;
}

Matrix solve_rwdd_primal(const Matrix& G, const Matrix& Phi, Regularizer gamma) {
  return RidgeSystem(G, Phi, RwddBranch::Primal).solve(gamma).weights;
}

RwddSolution solve_rwdd(const Matrix& G, const Matrix& Phi, Regularizer gamma) {
  return RidgeSystem(G, Phi).solve(gamma);
}

}  // namespace gnet
