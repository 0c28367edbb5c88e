#include "gnet/model.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

#include "gnet/errors.hpp"
#include "gnet/log.hpp"
#include "gnet/text.hpp"

namespace gnet {

std::string_view to_string(OutputMode mode) {
  switch (mode) {
    case OutputMode::Binary:
      return "binary";
    case OutputMode::Multiclass:
      return "multiclass";
    case OutputMode::Auto:
    default:
      return "auto";
  }
}

OutputMode parse_output_mode(std::string_view text) {
  if (text == "auto") return OutputMode::Auto;
  if (text == "binary") return OutputMode::Binary;
  if (text == "multiclass") return OutputMode::Multiclass;
  throw ParameterError("unknown output mode '" + std::string(text) +
                       "' (expected auto, binary or multiclass)");
}

// --- LabelCodec -------------------------------------------------------------

LabelCodec::LabelCodec(std::vector<std::string> classes) : classes_(std::move(classes)) {}

LabelCodec LabelCodec::from_labels(std::span<const std::string> labels) {
  std::set<std::string> distinct(labels.begin(), labels.end());
  std::vector<std::string> classes(distinct.begin(), distinct.end());
  if (classes.size() < 2) {
    throw LabelError("need at least two classes, found " + std::to_string(classes.size()));
  }
  const bool numeric = std::all_of(classes.begin(), classes.end(), [](const std::string& c) {
    return text::parse_double(c).has_value();
  });
  if (numeric) {
    std::stable_sort(classes.begin(), classes.end(), [](const std::string& a, const std::string& b) {
      return *text::parse_double(a) < *text::parse_double(b);
    });
  }
  return LabelCodec(std::move(classes));
}

LabelCodec LabelCodec::from_classes(std::vector<std::string> classes) {
  const std::set<std::string> distinct(classes.begin(), classes.end());
  if (classes.size() < 2 || distinct.size() != classes.size()) {
    throw LabelError("a codec needs at least two distinct classes");
  }
  return LabelCodec(std::move(classes));
}

int LabelCodec::index_of(const std::string& label) const {
  const auto it = std::find(classes_.begin(), classes_.end(), label);
  if (it == classes_.end()) throw LabelError("unknown label '" + label + "'");
  return static_cast<int>(it - classes_.begin());
}

OutputMode LabelCodec::resolve(OutputMode mode) const {
  if (mode == OutputMode::Auto) return size() == 2 ? OutputMode::Binary : OutputMode::Multiclass;
  if (mode == OutputMode::Binary && size() != 2) {
    throw LabelError("binary mode needs exactly two classes, found " + std::to_string(size()));
  }
  return mode;
}

Matrix LabelCodec::encode(std::span<const std::string> labels, OutputMode mode) const {
  mode = resolve(mode);
  const auto rows = static_cast<Index>(labels.size());
  if (mode == OutputMode::Binary) {
    Matrix phi(rows, 1);
    for (Index s = 0; s < rows; ++s) {
      phi(s, 0) = index_of(labels[static_cast<std::size_t>(s)]) == 1 ? 1.0 : -1.0;
    }
    return phi;
  }
  Matrix phi = Matrix::Constant(rows, size(), -1.0);
  for (Index s = 0; s < rows; ++s) phi(s, index_of(labels[static_cast<std::size_t>(s)])) = 1.0;
  return phi;
}

std::vector<int> LabelCodec::decode(const Matrix& scores) const {
  std::vector<int> out(static_cast<std::size_t>(scores.rows()));
  if (scores.cols() == 1) {
    for (Index s = 0; s < scores.rows(); ++s) out[static_cast<std::size_t>(s)] = scores(s, 0) >= 0.0;
    return out;
  }
  if (scores.cols() != size()) {
    throw ShapeError("score matrix has " + std::to_string(scores.cols()) + " columns for " +
                     std::to_string(size()) + " classes");
  }
  for (Index s = 0; s < scores.rows(); ++s) {
    Index best = 0;
    for (Index k = 1; k < scores.cols(); ++k) {
      if (scores(s, k) > scores(s, best)) best = k;
    }
    out[static_cast<std::size_t>(s)] = static_cast<int>(best);
  }
  return out;
}

void require_two_classes(std::span<const std::string> labels, const std::string& context) {
  if (labels.empty()) throw LabelError(context + " is empty");
  const auto other = std::find_if(labels.begin(), labels.end(),
                                  [&](const std::string& l) { return l != labels.front(); });
  if (other == labels.end()) {
    throw LabelError(context + " contains a single class ('" + labels.front() + "')");
  }
}

// --- Normalization ------------------------------------------------------------

NormalizationRanges fit_normalization(const Matrix& X) {
  if (X.rows() < 1) throw ShapeError("cannot fit normalization on an empty matrix");
  NormalizationRanges ranges(static_cast<std::size_t>(X.cols()));
  for (Index j = 0; j < X.cols(); ++j) {
    ranges[static_cast<std::size_t>(j)] = {X.col(j).minCoeff(), X.col(j).maxCoeff()};
  }
  return ranges;
}

Matrix apply_normalization(const Matrix& X, const NormalizationRanges& ranges) {
  if (static_cast<std::size_t>(X.cols()) != ranges.size()) {
    throw ShapeError("input has " + std::to_string(X.cols()) + " features, normalization has " +
                     std::to_string(ranges.size()));
  }
  Matrix out(X.rows(), X.cols());
  for (Index j = 0; j < X.cols(); ++j) {
    const auto [lo, hi] = ranges[static_cast<std::size_t>(j)];
    const double width = hi - lo;
    for (Index i = 0; i < X.rows(); ++i) {
      if (width > 0.0) {
        out(i, j) = std::clamp((X(i, j) - lo) / width, 0.0, 1.0);
      } else {
        out(i, j) = 0.5;
      }
    }
  }
  return out;
}

// --- fit / predict -------------------------------------------------------------

TrainedModel fit(const Matrix& X_raw, std::span<const std::string> labels, const GnnConfig& config) {
  require_two_classes(labels, "training set");
  return fit(X_raw, labels, config, LabelCodec::from_labels(labels));
}

TrainedModel fit(const Matrix& X_raw, std::span<const std::string> labels, const GnnConfig& config,
                 const LabelCodec& codec) {
  if (static_cast<std::size_t>(X_raw.rows()) != labels.size()) {
    throw ShapeError("feature matrix has " + std::to_string(X_raw.rows()) + " rows but there are " +
                     std::to_string(labels.size()) + " labels");
  }
  if (X_raw.rows() < 2) throw ShapeError("training needs at least two samples");
  if (X_raw.cols() < 1) throw ShapeError("training data has no features");
  require_two_classes(labels, "training set");

  BasisSpec spec(GegenbauerParam(config.lambda), static_cast<int>(X_raw.cols()), config.L);
  const Regularizer gamma(config.gamma);
  const OutputMode mode = codec.resolve(config.mode);

  const auto start = std::chrono::steady_clock::now();
  NormalizationRanges ranges = fit_normalization(X_raw);
  const Matrix G = build_activation_matrix(apply_normalization(X_raw, ranges), spec);
  const Matrix phi = codec.encode(labels, mode);
  RwddSolution solution = solve_rwdd(G, phi, gamma);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::ostringstream msg;
  msg << "fit gnn: branch=" << to_string(solution.branch) << " S=" << G.rows()
      << " L=" << G.cols() << " K=" << phi.cols() << " gamma=" << gamma.value();
  log_line(msg.str());

  return TrainedModel{std::move(spec), std::move(ranges), std::move(solution.weights), codec,
                      gamma, mode, FitInfo{solution.branch, seconds}};
}

Matrix predict_scores(const TrainedModel& model, const Matrix& X_raw) {
  if (X_raw.cols() != model.spec.dimension()) {
    throw ShapeError("input has " + std::to_string(X_raw.cols()) + " features, model expects " +
                     std::to_string(model.spec.dimension()));
  }
  const Matrix G = build_activation_matrix(apply_normalization(X_raw, model.ranges), model.spec);
  return G * model.weights;
}

std::vector<std::string> predict(const TrainedModel& model, const Matrix& X_raw) {
  const std::vector<int> idx = model.codec.decode(predict_scores(model, X_raw));
  std::vector<std::string> out;
  out.reserve(idx.size());
  for (int k : idx) out.push_back(model.codec.classes()[static_cast<std::size_t>(k)]);
  return out;
}

double accuracy_percent(std::span<const std::string> predicted, std::span<const std::string> actual) {
  if (predicted.size() != actual.size()) {
    throw ShapeError("prediction and label vectors differ in length");
  }
  if (actual.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) hits += predicted[i] == actual[i];
  return 100.0 * static_cast<double>(hits) / static_cast<double>(actual.size());
}

}  // namespace gnet
