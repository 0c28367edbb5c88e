#pragma once

#include <span>
#include <string>
#include <vector>

#include "gnet/basis.hpp"
#include "gnet/solver.hpp"
#include "gnet/types.hpp"

namespace gnet {

/// Binary uses one output column (+1 for classes[1], -1 for classes[0]);
/// multiclass uses K one-vs-all columns. Auto picks binary for K == 2.
enum class OutputMode { Auto, Binary, Multiclass };

std::string_view to_string(OutputMode mode);
OutputMode parse_output_mode(std::string_view text);

/// Ordered set of raw class labels. Classes are sorted ascending: numerically
/// when every label parses as a number, lexicographically otherwise.
class LabelCodec {
 public:
  LabelCodec() = default;
  /// Throws LabelError when fewer than two distinct labels are present.
  static LabelCodec from_labels(std::span<const std::string> labels);
  /// Uses the given order verbatim (model files). Needs >= 2 distinct entries.
  static LabelCodec from_classes(std::vector<std::string> classes);

  const std::vector<std::string>& classes() const noexcept { return classes_; }
  int size() const noexcept { return static_cast<int>(classes_.size()); }
  /// Throws LabelError naming the label when it is not a known class.
  int index_of(const std::string& label) const;

  /// S x 1 (binary) or S x K (multiclass) matrix of +-1 targets.
  Matrix encode(std::span<const std::string> labels, OutputMode mode) const;

  /// Class index per score row: argmax for K columns (ties to the lowest
  /// index); for one column, classes[1] when score >= 0 else classes[0].
  std::vector<int> decode(const Matrix& scores) const;

  /// Binary for K == 2 unless mode says otherwise; validates explicit choices.
  OutputMode resolve(OutputMode mode) const;

  friend bool operator==(const LabelCodec&, const LabelCodec&) = default;

 private:
  explicit LabelCodec(std::vector<std::string> classes);
  std::vector<std::string> classes_;
};

struct FeatureRange {
  double min;
  double max;
  friend bool operator==(const FeatureRange&, const FeatureRange&) = default;
};
using NormalizationRanges = std::vector<FeatureRange>;

NormalizationRanges fit_normalization(const Matrix& X);

/// (x - min) / (max - min) per column, clamped to [0,1]; a constant column
/// (min == max) maps to 0.5.
Matrix apply_normalization(const Matrix& X, const NormalizationRanges& ranges);

struct GnnConfig {
  double lambda = 0.05;
  int L = 1000;
  double gamma = 0x1p-12;
  OutputMode mode = OutputMode::Auto;
};

struct FitInfo {
  RwddBranch branch = RwddBranch::Dual;
  double seconds = 0.0;  // normalization + activation matrix + solve
};

/// A fitted network: everything needed to score new raw inputs.
struct TrainedModel {
  BasisSpec spec;
  NormalizationRanges ranges;
  Matrix weights;  // L x K (K = 1 in binary mode)
  LabelCodec codec;
  Regularizer gamma;
  OutputMode mode;  // resolved: Binary or Multiclass
  FitInfo info;
};

/// Normalizes, builds the activation matrix, encodes targets and solves the
/// regularized system in one shot. Logs the branch through log_line.
TrainedModel fit(const Matrix& X_raw, std::span<const std::string> labels, const GnnConfig& config);

/// Same, with a caller-supplied codec (cross-validation folds share one).
TrainedModel fit(const Matrix& X_raw, std::span<const std::string> labels, const GnnConfig& config,
                 const LabelCodec& codec);

Matrix predict_scores(const TrainedModel& model, const Matrix& X_raw);
std::vector<std::string> predict(const TrainedModel& model, const Matrix& X_raw);

/// Percentage of positions where predicted == actual.
double accuracy_percent(std::span<const std::string> predicted, std::span<const std::string> actual);

/// Requires at least two distinct labels; message names the context.
void require_two_classes(std::span<const std::string> labels, const std::string& context);

}  // namespace gnet
