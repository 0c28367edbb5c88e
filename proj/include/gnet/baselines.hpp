#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gnet/kernels.hpp"
#include "gnet/model.hpp"

namespace gnet {

struct Interval {
  double lo;
  double hi;
};

/// Random-feature single-hidden-layer network (ELM-style): input weights and
/// biases are drawn once from the seed and never trained.
struct RandomFeatureSpec {
  int L = 1000;
  Activation activation = Activation::Sigmoid;
  std::uint64_t seed = 0;
  Interval input_weight_range{-1.0, 1.0};
  Interval bias_range{0.0, 1.0};
  double gamma = 1.0;
  OutputMode mode = OutputMode::Auto;
};

struct RandomFeatureModel {
  RandomFeatureSpec spec;
  NormalizationRanges ranges;
  Matrix input_weights;  // m x L
  Vector biases;         // L
  Matrix weights;        // L x K
  LabelCodec codec;
  OutputMode mode;
  FitInfo info;
};

RandomFeatureModel fit_random_feature(const Matrix& X_raw, std::span<const std::string> labels,
                                      const RandomFeatureSpec& spec);
RandomFeatureModel fit_random_feature(const Matrix& X_raw, std::span<const std::string> labels,
                                      const RandomFeatureSpec& spec, const LabelCodec& codec);
Matrix predict_scores(const RandomFeatureModel& model, const Matrix& X_raw);

/// Gaussian-kernel ridge classifier (kernel ELM): alpha = (I/C + Omega)^{-1} Phi
/// with Omega(i, j) = exp(-delta ||x_i - x_j||^2) on normalized inputs.
struct KernelSpec {
  double delta = 1.0;
  double C = 1.0;
  OutputMode mode = OutputMode::Auto;
};

struct KernelRidgeModel {
  KernelSpec spec;
  NormalizationRanges ranges;
  Matrix support;  // normalized training inputs, S x m
  Matrix alpha;    // S x K
  LabelCodec codec;
  OutputMode mode;
  FitInfo info;
};

KernelRidgeModel fit_kernel_ridge(const Matrix& X_raw, std::span<const std::string> labels,
                                  const KernelSpec& spec);
KernelRidgeModel fit_kernel_ridge(const Matrix& X_raw, std::span<const std::string> labels,
                                  const KernelSpec& spec, const LabelCodec& codec);
Matrix predict_scores(const KernelRidgeModel& model, const Matrix& X_raw);

}  // namespace gnet
