#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gnet/baselines.hpp"
#include "gnet/model.hpp"

namespace gnet {

enum class Algorithm { Gnn, RandomFeature, KernelRidge };

/// "gnn", "rf-elm", "kernel-elm".
std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view text);

/// Hyper-parameters for any of the three classifiers; only the block matching
/// `algorithm` is used.
struct AlgorithmConfig {
  Algorithm algorithm = Algorithm::Gnn;
  GnnConfig gnn;
  RandomFeatureSpec rf;
  KernelSpec kernel;

  /// The ridge weight for gnn / rf-elm.
  double gamma() const;
  void set_gamma(double gamma);
  /// Hidden-layer size for gnn / rf-elm.
  void set_basis_size(int L);
  void set_mode(OutputMode mode);
};

using AnyModel = std::variant<TrainedModel, RandomFeatureModel, KernelRidgeModel>;

AnyModel fit_model(const Matrix& X_raw, std::span<const std::string> labels,
                   const AlgorithmConfig& config);
AnyModel fit_model(const Matrix& X_raw, std::span<const std::string> labels,
                   const AlgorithmConfig& config, const LabelCodec& codec);

Matrix predict_scores(const AnyModel& model, const Matrix& X_raw);
std::vector<std::string> predict(const AnyModel& model, const Matrix& X_raw);

Algorithm algorithm_of(const AnyModel& model);
const LabelCodec& codec_of(const AnyModel& model);
const FitInfo& fit_info_of(const AnyModel& model);
/// Number of input features the model expects.
int input_dimension(const AnyModel& model);

}  // namespace gnet
