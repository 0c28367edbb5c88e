#pragma once

#include <span>
#include <vector>

namespace gnet {

/// The Gegenbauer parameter lambda; always finite and strictly positive.
class GegenbauerParam {
 public:
  explicit GegenbauerParam(double lambda);
  double value() const noexcept { return lambda_; }

 private:
  double lambda_;
};

/// Largest degree accepted by gegenbauer_closed_form.
inline constexpr int kClosedFormMaxDegree = 30;

/// g_n(x) by the three-term recurrence
///   g_0 = 1, g_1 = 2 lambda x,
///   g_k = a_k x g_{k-1} - b_k g_{k-2},  a_k = 2(k+lambda-1)/k,  b_k = (k+2lambda-2)/k.
/// This is the evaluation used everywhere else in the library.
double gegenbauer(int n, GegenbauerParam lambda, double x);

/// Writes g_0(x) .. g_{out.size()-1}(x) into out in one pass. Each element is
/// bit-identical to gegenbauer(i, lambda, x).
void gegenbauer_all(GegenbauerParam lambda, double x, std::span<double> out);
std::vector<double> gegenbauer_all(int n_max, GegenbauerParam lambda, double x);

/// Hypergeometric closed form (sum over k of Pochhammer ratios times ((x-1)/2)^k).
/// Kept as an independent cross-check of the recurrence; n <= kClosedFormMaxDegree.
/// Negative x is mirrored through the parity of C_n. The series alternates, so
/// near x = 0 its accuracy degrades with degree (about 1e-5 relative at n = 20).
double gegenbauer_closed_form(int n, GegenbauerParam lambda, double x);

/// Gauss rule for the weight (1-t^2)^(lambda-1/2) on [-1,1], via Golub-Welsch.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_gegenbauer_rule(int points, GegenbauerParam lambda);

/// Integral over [-1,1] of g_i g_j (1-t^2)^(lambda-1/2) by a `quad_points`-point
/// Gauss rule. Requires quad_points >= i + j + 2.
double orthogonality_inner_product(int i, int j, GegenbauerParam lambda, int quad_points);

}  // namespace gnet
