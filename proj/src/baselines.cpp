#include "gnet/baselines.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Cholesky>

#include "gnet/errors.hpp"
#include "gnet/log.hpp"

namespace gnet {
namespace {

using Clock = std::chrono::steady_clock;

void check_training_shape(const Matrix& X, std::span<const std::string> labels) {
  if (static_cast<std::size_t>(X.rows()) != labels.size()) {
    throw ShapeError("feature matrix has " + std::to_string(X.rows()) + " rows but there are " +
                     std::to_string(labels.size()) + " labels");
  }
  if (X.rows() < 2) throw ShapeError("training needs at least two samples");
  if (X.cols() < 1) throw ShapeError("training data has no features");
  require_two_classes(labels, "training set");
}

void check_interval(const Interval& r, const char* what) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
    throw ParameterError(std::string(what) + " range must satisfy lo <= hi");
  }
}

void check_features(const Matrix& X, std::size_t expected) {
  if (static_cast<std::size_t>(X.cols()) != expected) {
    throw ShapeError("input has " + std::to_string(X.cols()) + " features, model expects " +
                     std::to_string(expected));
  }
}

}  // namespace

RandomFeatureModel fit_random_feature(const Matrix& X_raw, std::span<const std::string> labels,
                                      const RandomFeatureSpec& spec) {
  check_training_shape(X_raw, labels);
  return fit_random_feature(X_raw, labels, spec, LabelCodec::from_labels(labels));
}

RandomFeatureModel fit_random_feature(const Matrix& X_raw, std::span<const std::string> labels,
                                      const RandomFeatureSpec& spec, const LabelCodec& codec) {
  check_training_shape(X_raw, labels);
  if (spec.L < 1) throw ParameterError("random-feature L must be >= 1");
  check_interval(spec.input_weight_range, "input weight");
  check_interval(spec.bias_range, "bias");
  const Regularizer gamma(spec.gamma);
  const OutputMode mode = codec.resolve(spec.mode);

  // Weights are drawn column by column (one hidden node at a time) so a
  // larger L extends a smaller one with the same seed.
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> weight_dist(spec.input_weight_range.lo,
                                                     spec.input_weight_range.hi);
  std::uniform_real_distribution<double> bias_dist(spec.bias_range.lo, spec.bias_range.hi);
  Matrix W(X_raw.cols(), spec.L);
  Vector b(spec.L);
  for (Index l = 0; l < spec.L; ++l) {
    for (Index t = 0; t < W.rows(); ++t) W(t, l) = weight_dist(rng);
    b(l) = bias_dist(rng);
  }

  const auto start = Clock::now();
  NormalizationRanges ranges = fit_normalization(X_raw);
  const Matrix H =
      kernels::parallel::random_features(apply_normalization(X_raw, ranges), W, b, spec.activation);
  const Matrix phi = codec.encode(labels, mode);
  RwddSolution solution = solve_rwdd(H, phi, gamma);
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();

  std::ostringstream msg;
  msg << "fit rf-elm: branch=" << to_string(solution.branch) << " S=" << H.rows()
      << " L=" << H.cols() << " K=" << phi.cols() << " gamma=" << gamma.value();
  log_line(msg.str());

  return RandomFeatureModel{spec,         std::move(ranges), std::move(W),
                            std::move(b), std::move(solution.weights), codec,
                            mode,         FitInfo{solution.branch, seconds}};
}

Matrix predict_scores(const RandomFeatureModel& model, const Matrix& X_raw) {
  check_features(X_raw, model.ranges.size());
  const Matrix H = kernels::parallel::random_features(apply_normalization(X_raw, model.ranges),
                                                      model.input_weights, model.biases,
                                                      model.spec.activation);
  return H * model.weights;
}

KernelRidgeModel fit_kernel_ridge(const Matrix& X_raw, std::span<const std::string> labels,
                                  const KernelSpec& spec) {
  check_training_shape(X_raw, labels);
  return fit_kernel_ridge(X_raw, labels, spec, LabelCodec::from_labels(labels));
}

KernelRidgeModel fit_kernel_ridge(const Matrix& X_raw, std::span<const std::string> labels,
                                  const KernelSpec& spec, const LabelCodec& codec) {
  check_training_shape(X_raw, labels);
  if (!(spec.delta > 0.0) || !std::isfinite(spec.delta)) {
    throw ParameterError("kernel width delta must be finite and > 0");
  }
  if (!(spec.C > 0.0) || !std::isfinite(spec.C)) {
    throw ParameterError("cost parameter C must be finite and > 0");
  }
  const OutputMode mode = codec.resolve(spec.mode);

  const auto start = Clock::now();
  NormalizationRanges ranges = fit_normalization(X_raw);
  Matrix support = apply_normalization(X_raw, ranges);
  Matrix system = kernels::parallel::gaussian_kernel(support, support, spec.delta);
  system.diagonal().array() += 1.0 / spec.C;
  Eigen::LLT<Matrix, Eigen::Lower> llt(system);
  if (llt.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "kernel ridge system is not numerically positive definite (C=" << spec.C
        << ", delta=" << spec.delta << ", size " << system.rows() << ")";
    throw NumericError(msg.str());
  }
  Matrix alpha = llt.solve(codec.encode(labels, mode));
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();

  std::ostringstream msg;
  msg << "fit kernel-elm: S=" << support.rows() << " C=" << spec.C << " delta=" << spec.delta;
  log_line(msg.str());

  return KernelRidgeModel{spec,  std::move(ranges), std::move(support), std::move(alpha),
                          codec, mode,              FitInfo{RwddBranch::Dual, seconds}};
}

Matrix predict_scores(const KernelRidgeModel& model, const Matrix& X_raw) {
  check_features(X_raw, model.ranges.size());
  const Matrix K = kernels::parallel::gaussian_kernel(apply_normalization(X_raw, model.ranges),
                                                      model.support, model.spec.delta);
  return K * model.alpha;
}

}  // namespace gnet
