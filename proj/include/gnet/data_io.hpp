#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gnet/types.hpp"

namespace gnet {

struct Dataset {
  Matrix features;                  // S x m
  std::vector<std::string> labels;  // S raw labels; empty for unlabeled data
  std::string name;

  Index rows() const noexcept { return features.rows(); }
  Index cols() const noexcept { return features.cols(); }
  bool labeled() const noexcept { return !labels.empty(); }

  /// Rows in the given order (indices may repeat).
  Dataset subset(std::span<const Index> rows) const;
};

struct CsvSchema {
  /// 0-based column holding the label; negative counts from the end (-1 = last).
  int label_column = -1;
  char delimiter = ',';
  bool header = false;
  /// When false every column is a feature and the dataset is unlabeled.
  bool labeled = true;
};

/// Parses a delimited text file. Numbers are read with '.' as the decimal
/// separator regardless of locale. Errors carry the 1-based line number and,
/// for bad cells, the column.
Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema = {});
Dataset parse_csv(std::string_view contents, const CsvSchema& schema = {},
                  std::string name = "inline");

/// Either a fraction in (0,1) or an explicit training count; the rest is test.
struct SplitPlan {
  std::optional<double> train_fraction;
  std::optional<Index> train_count;
  std::uint64_t seed = 0;
  bool stratified = true;

  /// Number of training rows for a dataset of `total` rows.
  Index resolve_train_count(Index total) const;
};

/// Seeded reshuffled split into disjoint (train, test) sets covering the
/// dataset. Stratified mode allocates each class by largest remainder so
/// proportions hold to within one sample per class.
std::pair<Dataset, Dataset> split(const Dataset& data, const SplitPlan& plan);

/// Row indices for split(); exposed for partition tests.
std::pair<std::vector<Index>, std::vector<Index>> split_indices(const Dataset& data,
                                                                const SplitPlan& plan);

/// x + amplitude * u with u ~ U[-1,1] per entry, clamped to [0,1]. Features
/// must already be normalized to [0,1]; labels are untouched.
Dataset add_noise(const Dataset& data, double amplitude, std::uint64_t seed);

/// Rows drawn uniformly with replacement.
Dataset resample(const Dataset& data, Index rows, std::uint64_t seed);

/// Benchmark sets that ship with the project, with the split sizes and
/// hyper-parameters reported for them.
struct BundledDataset {
  std::string_view name;
  std::string_view file;  // relative to data_directory()
  bool binary;
  Index train_count;
  Index test_count;
  double gnn_gamma;
  int gnn_L;
  double gnn_lambda;
  double elm_C;
  double elm_delta;
  int elm_L;
};

std::span<const BundledDataset> bundled_datasets();
const BundledDataset* find_bundled(std::string_view name);

/// $GNET_DATA_DIR if set, else the data/ directory of the source tree.
std::filesystem::path data_directory();

/// Loads a bundled name ("iris") or, failing that, treats `name_or_path` as a
/// file path.
Dataset load_dataset(std::string_view name_or_path, const CsvSchema& schema = {});

}  // namespace gnet
