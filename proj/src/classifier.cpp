#include "gnet/classifier.hpp"

#include "gnet/errors.hpp"

namespace gnet {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::RandomFeature:
      return "rf-elm";
    case Algorithm::KernelRidge:
      return "kernel-elm";
    case Algorithm::Gnn:
    default:
      return "gnn";
  }
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "gnn") return Algorithm::Gnn;
  if (text == "rf-elm") return Algorithm::RandomFeature;
  if (text == "kernel-elm") return Algorithm::KernelRidge;
  throw ParameterError("unknown algorithm '" + std::string(text) +
                       "' (expected gnn, rf-elm or kernel-elm)");
}

double AlgorithmConfig::gamma() const {
  return algorithm == Algorithm::RandomFeature ? rf.gamma : gnn.gamma;
}

void AlgorithmConfig::set_gamma(double gamma) {
  gnn.gamma = gamma;
  rf.gamma = gamma;
}

void AlgorithmConfig::set_basis_size(int L) {
  gnn.L = L;
  rf.L = L;
}

void AlgorithmConfig::set_mode(OutputMode mode) {
  gnn.mode = mode;
  rf.mode = mode;
  kernel.mode = mode;
}

AnyModel fit_model(const Matrix& X_raw, std::span<const std::string> labels,
                   const AlgorithmConfig& config) {
  require_two_classes(labels, "training set");
  return fit_model(X_raw, labels, config, LabelCodec::from_labels(labels));
}

AnyModel fit_model(const Matrix& X_raw, std::span<const std::string> labels,
                   const AlgorithmConfig& config, const LabelCodec& codec) {
  switch (config.algorithm) {
    case Algorithm::RandomFeature:
      return fit_random_feature(X_raw, labels, config.rf, codec);
    case Algorithm::KernelRidge:
      return fit_kernel_ridge(X_raw, labels, config.kernel, codec);
    case Algorithm::Gnn:
    default:
      return fit(X_raw, labels, config.gnn, codec);
  }
}

Matrix predict_scores(const AnyModel& model, const Matrix& X_raw) {
  return std::visit([&](const auto& m) { return predict_scores(m, X_raw); }, model);
}

std::vector<std::string> predict(const AnyModel& model, const Matrix& X_raw) {
  const LabelCodec& codec = codec_of(model);
  const std::vector<int> idx = codec.decode(predict_scores(model, X_raw));
  std::vector<std::string> out;
  out.reserve(idx.size());
  for (int k : idx) out.push_back(codec.classes()[static_cast<std::size_t>(k)]);
  return out;
}

Algorithm algorithm_of(const AnyModel& model) {
  return static_cast<Algorithm>(model.index());
}

const LabelCodec& codec_of(const AnyModel& model) {
  return std::visit([](const auto& m) -> const LabelCodec& { return m.codec; }, model);
}

const FitInfo& fit_info_of(const AnyModel& model) {
  return std::visit([](const auto& m) -> const FitInfo& { return m.info; }, model);
}

int input_dimension(const AnyModel& model) {
  return std::visit([](const auto& m) { return static_cast<int>(m.ranges.size()); }, model);
}

}  // namespace gnet
