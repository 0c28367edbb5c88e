#pragma once

// Data-parallel feature-map kernels. Each kernel has a serial reference and an
// OpenMP version; for the same inputs they return bit-identical matrices (the
// per-entry arithmetic is shared, only the loop distribution differs).
// Inputs are not validated here; callers in basis/baselines do that.

#include "gnet/basis.hpp"
#include "gnet/types.hpp"

namespace gnet {

enum class Activation { Sigmoid, Tanh };

namespace kernels {
namespace serial {

Matrix activation_matrix(const Matrix& X, const BasisSpec& spec);

/// K(i, j) = exp(-delta * ||A_i - B_j||^2) over rows of A and B.
Matrix gaussian_kernel(const Matrix& A, const Matrix& B, double delta);

/// H(s, l) = act(sum_t X(s, t) W(t, l) + bias(l)).
Matrix random_features(const Matrix& X, const Matrix& W, const Vector& bias, Activation act);

}  // namespace serial

namespace parallel {

Matrix activation_matrix(const Matrix& X, const BasisSpec& spec);
Matrix gaussian_kernel(const Matrix& A, const Matrix& B, double delta);
Matrix random_features(const Matrix& X, const Matrix& W, const Vector& bias, Activation act);

}  // namespace parallel
}  // namespace kernels
}  // namespace gnet
