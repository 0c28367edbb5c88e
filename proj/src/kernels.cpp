#include "gnet/kernels.hpp"

#include <cmath>
#include <span>
#include <vector>

#include "gnet/parallel.hpp"

namespace gnet::kernels {
namespace {

// Row s of the activation matrix. `table` is scratch of size m * (dmax + 1),
// laid out coordinate-major: table[t * stride + k] = g_k(X(s, t)).
void activation_row(const Matrix& X, const BasisSpec& spec, Index s, std::vector<double>& table,
                    Matrix& G) {
  const int m = spec.dimension();
  const auto stride = static_cast<std::size_t>(spec.max_degree()) + 1;
  for (int t = 0; t < m; ++t) {
    const auto len = static_cast<std::size_t>(spec.max_degree(t)) + 1;
    gegenbauer_all(spec.lambda(), X(s, t), std::span(table).subspan(t * stride, len));
  }
  for (int l = 0; l < spec.size(); ++l) {
    double product = 1.0;
    for (const auto& f : spec.factors(l)) {
      product *= table[static_cast<std::size_t>(f.coordinate) * stride +
                       static_cast<std::size_t>(f.degree)];
    }
    G(s, l) = product;
  }
}

inline double gaussian_entry(const Matrix& A, const Matrix& B, Index i, Index j, double delta) {
  double d2 = 0.0;
  for (Index t = 0; t < A.cols(); ++t) {
    const double d = A(i, t) - B(j, t);
    d2 += d * d;
  }
  return std::exp(-delta * d2);
}

inline double activate(double z, Activation act) {
  switch (act) {
    case Activation::Tanh:
      return std::tanh(z);
    case Activation::Sigmoid:
    default:
      return 1.0 / (1.0 + std::exp(-z));
  }
}

inline void random_feature_row(const Matrix& X, const Matrix& W, const Vector& bias,
                               Activation act, Index s, Matrix& H) {
  for (Index l = 0; l < W.cols(); ++l) {
    double z = bias(l);
    for (Index t = 0; t < X.cols(); ++t) z += X(s, t) * W(t, l);
    H(s, l) = activate(z, act);
  }
}

std::size_t table_size(const BasisSpec& spec) {
  return static_cast<std::size_t>(spec.dimension()) *
         (static_cast<std::size_t>(spec.max_degree()) + 1);
}

}  // namespace

namespace serial {

Matrix activation_matrix(const Matrix& X, const BasisSpec& spec) {
  Matrix G(X.rows(), spec.size());
  std::vector<double> table(table_size(spec));
  for (Index s = 0; s < X.rows(); ++s) activation_row(X, spec, s, table, G);
  return G;
}

Matrix gaussian_kernel(const Matrix& A, const Matrix& B, double delta) {
  Matrix K(A.rows(), B.rows());
  for (Index j = 0; j < B.rows(); ++j)
    for (Index i = 0; i < A.rows(); ++i) K(i, j) = gaussian_entry(A, B, i, j, delta);
  return K;
}

Matrix random_features(const Matrix& X, const Matrix& W, const Vector& bias, Activation act) {
  Matrix H(X.rows(), W.cols());
  for (Index s = 0; s < X.rows(); ++s) random_feature_row(X, W, bias, act, s, H);
  return H;
}

}  // namespace serial

namespace parallel {

Matrix activation_matrix(const Matrix& X, const BasisSpec& spec) {
  Matrix G(X.rows(), spec.size());
  const Index rows = X.rows();
  GNET_OMP(parallel)
  {
    std::vector<double> table(table_size(spec));
    GNET_OMP(for schedule(static))
    for (Index s = 0; s < rows; ++s) activation_row(X, spec, s, table, G);
  }
  return G;
}

Matrix gaussian_kernel(const Matrix& A, const Matrix& B, double delta) {
  Matrix K(A.rows(), B.rows());
  const Index cols = B.rows();
  GNET_OMP(parallel for schedule(static))
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < A.rows(); ++i) K(i, j) = gaussian_entry(A, B, i, j, delta);
  return K;
}

Matrix random_features(const Matrix& X, const Matrix& W, const Vector& bias, Activation act) {
  Matrix H(X.rows(), W.cols());
  const Index rows = X.rows();
  GNET_OMP(parallel for schedule(static))
  for (Index s = 0; s < rows; ++s) random_feature_row(X, W, bias, act, s, H);
  return H;
}

}  // namespace parallel
}  // namespace gnet::kernels
