#include "gnet/gegenbauer.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "gnet/errors.hpp"
#include "gnet/types.hpp"

namespace gnet {
namespace {

void check_degree(int n) {
  if (n < 0) throw ParameterError("polynomial degree must be non-negative, got " + std::to_string(n));
}

void check_x(double x) {
  if (!std::isfinite(x)) throw ParameterError("gegenbauer: evaluation point must be finite");
}

// One recurrence step. Shared by the scalar and the all-degrees paths so both
// perform the same floating-point operations in the same order.
inline double step(int k, double lambda, double x, double g_km1, double g_km2) {
  const double a = 2.0 * (k + lambda - 1.0) / k;
  const double b = (k + 2.0 * lambda - 2.0) / k;
  return a * x * g_km1 - b * g_km2;
}

// log of the rising factorial (a)_k for a > 0.
double log_pochhammer(double a, int k) { return std::lgamma(a + k) - std::lgamma(a); }

}  // namespace

GegenbauerParam::GegenbauerParam(double lambda) : lambda_(lambda) {
  if (!std::isfinite(lambda) || lambda <= 0.0) {
    throw ParameterError("gegenbauer parameter lambda must be finite and > 0, got " +
                         std::to_string(lambda));
  }
}

double gegenbauer(int n, GegenbauerParam lambda, double x) {
  check_degree(n);
  check_x(x);
  const double lam = lambda.value();
  if (n == 0) return 1.0;
  double g_km2 = 1.0;
  double g_km1 = 2.0 * lam * x;
  for (int k = 2; k <= n; ++k) {
    const double g = step(k, lam, x, g_km1, g_km2);
    g_km2 = g_km1;
    g_km1 = g;
  }
  return g_km1;
}

void gegenbauer_all(GegenbauerParam lambda, double x, std::span<double> out) {
  check_x(x);
  if (out.empty()) return;
  const double lam = lambda.value();
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = 2.0 * lam * x;
  for (std::size_t k = 2; k < out.size(); ++k) {
    out[k] = step(static_cast<int>(k), lam, x, out[k - 1], out[k - 2]);
  }
}

std::vector<double> gegenbauer_all(int n_max, GegenbauerParam lambda, double x) {
  check_degree(n_max);
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  gegenbauer_all(lambda, x, out);
  return out;
}

double gegenbauer_closed_form(int n, GegenbauerParam lambda, double x) {
  check_degree(n);
  check_x(x);
  if (n > kClosedFormMaxDegree) {
    throw ParameterError("closed form limited to degree " + std::to_string(kClosedFormMaxDegree) +
                         ", got " + std::to_string(n));
  }
  // The series in (x-1)/2 cancels badly as x approaches -1; evaluate at |x|
  // and restore the sign through C_n(-x) = (-1)^n C_n(x).
  if (x < 0.0) {
    const double mirrored = gegenbauer_closed_form(n, lambda, -x);
    return n % 2 ? -mirrored : mirrored;
  }
  const double lam = lambda.value();
  const double z = (x - 1.0) / 2.0;
  double sum = 0.0;

  if (n <= 12) {
    // Direct products; (2 lambda)_12 and 12! are far from overflow.
    double poch_2l_n = 1.0;
    for (int i = 0; i < n; ++i) poch_2l_n *= 2.0 * lam + i;
    double poch_top = 1.0;     // (2 lambda + n)_k
    double poch_bottom = 1.0;  // (lambda + 1/2)_k
    double k_fact = 1.0;
    double zk = 1.0;
    for (int k = 0; k <= n; ++k) {
      if (k > 0) {
        poch_top *= 2.0 * lam + n + (k - 1);
        poch_bottom *= lam + 0.5 + (k - 1);
        k_fact *= k;
        zk *= z;
      }
      double nk_fact = 1.0;
      for (int i = 2; i <= n - k; ++i) nk_fact *= i;
      sum += poch_2l_n * poch_top / (poch_bottom * k_fact * nk_fact) * zk;
    }
    return sum;
  }

  // (2 lambda)_n / n! in log space, then each term from the previous one by
  // its ratio, so the only log-space rounding is one common factor.
  double term = std::exp(log_pochhammer(2.0 * lam, n) - std::lgamma(n + 1.0));
  for (int k = 0; k <= n; ++k) {
    sum += term;
    term *= (2.0 * lam + n + k) / (lam + 0.5 + k) * (n - k) / (k + 1.0) * z;
  }
  return sum;
}

GaussRule gauss_gegenbauer_rule(int points, GegenbauerParam lambda) {
  if (points < 1) throw ParameterError("quadrature needs at least one point");
  const double lam = lambda.value();
  const Index n = points;

  // Monic recurrence p_{k+1} = t p_k - b_k p_{k-1} for this weight has zero
  // diagonal and b_k = k (k + 2 lambda - 1) / (4 (k + lambda)(k + lambda - 1)).
  Vector diag = Vector::Zero(n);
  Vector sub(std::max<Index>(n - 1, 0));
  for (Index k = 1; k < n; ++k) {
    const double kd = static_cast<double>(k);
    const double b = kd * (kd + 2.0 * lam - 1.0) / (4.0 * (kd + lam) * (kd + lam - 1.0));
    sub(k - 1) = std::sqrt(b);
  }

  Eigen::SelfAdjointEigenSolver<Matrix> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (eig.info() != Eigen::Success) throw NumericError("Golub-Welsch eigen solve failed");

  // Total mass of the weight: sqrt(pi) Gamma(lambda + 1/2) / Gamma(lambda + 1).
  const double mu0 =
      std::exp(0.5 * std::log(std::numbers::pi) + std::lgamma(lam + 0.5) - std::lgamma(lam + 1.0));

  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const double v0 = eig.eigenvectors()(0, i);
    rule.nodes[static_cast<std::size_t>(i)] = eig.eigenvalues()(i);
    rule.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
  }
  return rule;
}

double orthogonality_inner_product(int i, int j, GegenbauerParam lambda, int quad_points) {
  check_degree(i);
  check_degree(j);
  if (quad_points < i + j + 2) {
    throw ParameterError("insufficient quadrature: need at least " + std::to_string(i + j + 2) +
                         " points for degrees " + std::to_string(i) + " and " + std::to_string(j) +
                         ", got " + std::to_string(quad_points));
  }
  const GaussRule rule = gauss_gegenbauer_rule(quad_points, lambda);
  const int top = std::max(i, j);
  std::vector<double> g(static_cast<std::size_t>(top) + 1);
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    gegenbauer_all(lambda, rule.nodes[q], g);
    sum += rule.weights[q] * g[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(j)];
  }
  return sum;
}

}  // namespace gnet
