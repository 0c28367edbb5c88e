#include "gnet/data_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "gnet/errors.hpp"
#include "gnet/text.hpp"

#ifndef GNET_DEFAULT_DATA_DIR
#define GNET_DEFAULT_DATA_DIR "data"
#endif

namespace gnet {

Dataset Dataset::subset(std::span<const Index> rows) const {
  Dataset out;
  out.name = name;
  out.features.resize(static_cast<Index>(rows.size()), features.cols());
  if (labeled()) out.labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.features.row(static_cast<Index>(i)) = features.row(rows[i]);
    if (labeled()) out.labels.push_back(labels[static_cast<std::size_t>(rows[i])]);
  }
  return out;
}

// --- CSV -----------------------------------------------------------------------

Dataset parse_csv(std::string_view contents, const CsvSchema& schema, std::string name) {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  std::size_t columns = 0;
  std::size_t label_col = 0;
  bool header_pending = schema.header;
  int line_no = 0;

  std::size_t pos = 0;
  while (pos <= contents.size()) {
    const auto end = contents.find('\n', pos);
    const std::string_view raw =
        contents.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? contents.size() + 1 : end + 1;
    ++line_no;
    if (text::trim(raw).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const std::vector<std::string_view> cells = text::split(raw, schema.delimiter);
    if (columns == 0) {
      columns = cells.size();
      if (schema.labeled) {
        if (columns < 2) {
          throw ParseError(name + " line " + std::to_string(line_no) +
                           ": need at least one feature column and a label column");
        }
        const long resolved = schema.label_column < 0
                                  ? static_cast<long>(columns) + schema.label_column
                                  : schema.label_column;
        if (resolved < 0 || resolved >= static_cast<long>(columns)) {
          throw ParseError(name + ": label column " + std::to_string(schema.label_column) +
                           " is out of range for " + std::to_string(columns) + " columns");
        }
        label_col = static_cast<std::size_t>(resolved);
      }
    } else if (cells.size() != columns) {
      throw ParseError(name + " line " + std::to_string(line_no) + ": expected " +
                       std::to_string(columns) + " fields, found " + std::to_string(cells.size()));
    }

    std::vector<double> row;
    row.reserve(columns);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (schema.labeled && c == label_col) {
        const std::string_view label = text::trim(cells[c]);
        if (label.empty()) {
          throw ParseError(name + " line " + std::to_string(line_no) + ": empty label");
        }
        labels.emplace_back(label);
        continue;
      }
      const auto value = text::parse_double(cells[c]);
      if (!value) {
        throw ParseError(name + " line " + std::to_string(line_no) + ", column " +
                         std::to_string(c + 1) + ": '" + std::string(text::trim(cells[c])) +
                         "' is not a finite number");
      }
      row.push_back(*value);
    }
    rows.push_back(std::move(row));
  }

  if (rows.empty()) throw ParseError(name + ": no data rows");
  Dataset data;
  data.name = std::move(name);
  data.features.resize(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      data.features(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  data.labels = std::move(labels);
  return data;
}

Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open data file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), schema, path.stem().string());
}

// --- splitting -------------------------------------------------------------------

Index SplitPlan::resolve_train_count(Index total) const {
  if (train_fraction && train_count) {
    throw ParameterError("split: give either a train fraction or a train count, not both");
  }
  Index count = 0;
  if (train_fraction) {
    const double f = *train_fraction;
    if (!(f > 0.0 && f < 1.0)) throw ParameterError("split: train fraction must be in (0,1)");
    count = static_cast<Index>(std::llround(f * static_cast<double>(total)));
  } else if (train_count) {
    count = *train_count;
  } else {
    throw ParameterError("split: no train fraction or train count given");
  }
  if (count < 1 || count > total) {
    throw ParameterError("split: train count " + std::to_string(count) + " is outside [1, " +
                         std::to_string(total) + "]");
  }
  return count;
}

std::pair<std::vector<Index>, std::vector<Index>> split_indices(const Dataset& data,
                                                                const SplitPlan& plan) {
  const Index total = data.rows();
  const Index train_total = plan.resolve_train_count(total);

  std::vector<Index> perm(static_cast<std::size_t>(total));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::mt19937_64 rng(plan.seed);
  std::shuffle(perm.begin(), perm.end(), rng);

  std::vector<Index> train;
  std::vector<Index> test;
  train.reserve(static_cast<std::size_t>(train_total));
  test.reserve(static_cast<std::size_t>(total - train_total));

  if (!plan.stratified || !data.labeled()) {
    train.assign(perm.begin(), perm.begin() + train_total);
    test.assign(perm.begin() + train_total, perm.end());
    return {std::move(train), std::move(test)};
  }

  std::map<std::string, Index> counts;
  for (const auto& l : data.labels) ++counts[l];
  for (const auto& [label, n] : counts) {
    if (n < 2) {
      throw StratificationError("stratified split: class '" + label + "' has " +
                                std::to_string(n) + " sample(s); need at least 2");
    }
  }

  // Largest-remainder allocation of train_total across classes.
  struct Quota {
    std::string label;
    Index take;
    double remainder;
  };
  std::vector<Quota> quotas;
  Index assigned = 0;
  for (const auto& [label, n] : counts) {
    const double exact = static_cast<double>(n) * static_cast<double>(train_total) /
                         static_cast<double>(total);
    const auto floor_take = static_cast<Index>(std::floor(exact));
    quotas.push_back({label, floor_take, exact - static_cast<double>(floor_take)});
    assigned += floor_take;
  }
  std::vector<std::size_t> order(quotas.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return quotas[a].remainder > quotas[b].remainder;
  });
  for (std::size_t i = 0; assigned < train_total; i = (i + 1) % order.size()) {
    auto& q = quotas[order[i]];
    if (q.take < counts[q.label]) {
      ++q.take;
      ++assigned;
    }
  }

  std::map<std::string, Index> remaining;
  for (const auto& q : quotas) remaining[q.label] = q.take;
  for (Index idx : perm) {
    auto& left = remaining[data.labels[static_cast<std::size_t>(idx)]];
    if (left > 0) {
      train.push_back(idx);
      --left;
    } else {
      test.push_back(idx);
    }
  }
  return {std::move(train), std::move(test)};
}

std::pair<Dataset, Dataset> split(const Dataset& data, const SplitPlan& plan) {
  const auto [train, test] = split_indices(data, plan);
  return {data.subset(train), data.subset(test)};
}

// --- noise and resampling ---------------------------------------------------------

Dataset add_noise(const Dataset& data, double amplitude, std::uint64_t seed) {
  if (!(amplitude >= 0.0 && amplitude <= 1.0)) {
    throw ParameterError("noise amplitude must be in [0,1], got " + std::to_string(amplitude));
  }
  for (Index i = 0; i < data.rows(); ++i) {
    for (Index j = 0; j < data.cols(); ++j) {
      const double v = data.features(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw NormalizationError("add_noise expects features in [0,1]; row " + std::to_string(i) +
                                 ", column " + std::to_string(j) + " holds " + std::to_string(v));
      }
    }
  }
  Dataset out = data;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (Index i = 0; i < out.rows(); ++i) {
    for (Index j = 0; j < out.cols(); ++j) {
      const double noisy = out.features(i, j) + amplitude * unit(rng);
      out.features(i, j) = std::clamp(noisy, 0.0, 1.0);
    }
  }
  return out;
}

Dataset resample(const Dataset& data, Index rows, std::uint64_t seed) {
  if (data.rows() < 1) throw ShapeError("cannot resample an empty dataset");
  if (rows < 1) throw ParameterError("resample size must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> pick(0, data.rows() - 1);
  std::vector<Index> idx(static_cast<std::size_t>(rows));
  for (auto& i : idx) i = pick(rng);
  return data.subset(idx);
}

// --- bundled registry ---------------------------------------------------------------

namespace {

// Split sizes and tuned hyper-parameters as published for each benchmark.
constexpr BundledDataset kBundled[] = {
    // name         file               binary train test  gnn_gamma  L     lambda elm_C     elm_delta  elm_L
    {"australian", "australian.csv", true, 484, 206, 0x1p-12, 1500, 0.05, 0x1p1, 0x1p4, 1500},
    {"banana", "banana.csv", true, 1591, 3709, 0x1p-12, 1500, 0.05, 0x1p0, 0x1p4, 1500},
    {"diabetes", "diabetes.csv", true, 537, 231, 0x1p-8, 1500, 0.05, 0x1p10, 0x1p6, 1500},
    {"liver", "liver.csv", true, 241, 104, 0x1p-13, 1500, 0.05, 0x1p8, 0x1p5, 1500},
    {"ionosphere", "ionosphere.csv", true, 245, 106, 0x1p-11, 1500, 0.05, 0x1p5, 0x1p6, 1500},
    {"iris", "iris.csv", false, 105, 45, 0x1p-12, 1000, 0.05, 0x1p1, 0x1p2, 1500},
    {"glass", "glass.csv", false, 158, 56, 0x1p-12, 1000, 0.05, 0x1p10, 0x1p9, 1500},
    {"wine", "wine.csv", false, 126, 52, 0x1p-6, 1000, 0.05, 0x1p1, 0x1p9, 1500},
    {"ecoli", "ecoli.csv", false, 243, 93, 0x1p-8, 1000, 0.05, 0x1p20, 0x1p11, 1500},
    {"vehicle", "vehicle.csv", false, 594, 252, 0x1p-14, 1000, 0.05, 0x1p6, 0x1p6, 1500},
};

}  // namespace

std::span<const BundledDataset> bundled_datasets() { return kBundled; }

const BundledDataset* find_bundled(std::string_view name) {
  for (const auto& d : kBundled) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

std::filesystem::path data_directory() {
  if (const char* env = std::getenv("GNET_DATA_DIR"); env && *env) return env;
  return GNET_DEFAULT_DATA_DIR;
}

Dataset load_dataset(std::string_view name_or_path, const CsvSchema& schema) {
  if (const auto* entry = find_bundled(name_or_path)) {
    const auto path = data_directory() / entry->file;
    if (!std::filesystem::exists(path)) {
      throw ParseError("bundled dataset '" + std::string(entry->name) + "' is not present at " +
                       path.string() + "; pass the file path with --data instead");
    }
    Dataset data = load_csv(path, CsvSchema{});
    data.name = std::string(entry->name);
    return data;
  }
  return load_csv(std::filesystem::path(name_or_path), schema);
}

}  // namespace gnet
