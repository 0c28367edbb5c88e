#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "gnet/data_io.hpp"
#include "gnet/errors.hpp"
#include "gnet/parallel.hpp"
#include "gnet/tuning.hpp"
#include "oracles.hpp"

using gnet::Dataset;
using gnet::GridSearchConfig;
using gnet::Index;

namespace {

// Two Gaussian blobs in the unit square; `flips` labels are swapped at random.
Dataset blobs(int per_class, double spread, int flips, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, spread);
  Dataset d;
  d.name = "blobs";
  d.features.resize(2 * per_class, 2);
  for (int i = 0; i < 2 * per_class; ++i) {
    const bool second = i >= per_class;
    d.features(i, 0) = (second ? 0.75 : 0.25) + noise(rng);
    d.features(i, 1) = (second ? 0.7 : 0.3) + noise(rng);
    d.labels.push_back(second ? "b" : "a");
  }
  std::uniform_int_distribution<int> pick(0, 2 * per_class - 1);
  for (int k = 0; k < flips; ++k) {
    auto& l = d.labels[static_cast<std::size_t>(pick(rng))];
    l = l == "a" ? "b" : "a";
  }
  return d;
}

std::vector<std::size_t> sizes(const std::vector<std::vector<Index>>& folds) {
  std::vector<std::size_t> out;
  for (const auto& f : folds) out.push_back(f.size());
  return out;
}

void check_partition(const std::vector<std::vector<Index>>& folds, Index S) {
  std::set<Index> seen;
  std::size_t total = 0;
  for (const auto& f : folds) {
    total += f.size();
    seen.insert(f.begin(), f.end());
  }
  CHECK(total == static_cast<std::size_t>(S));
  CHECK(seen.size() == static_cast<std::size_t>(S));
  CHECK(*seen.begin() == 0);
  CHECK(*seen.rbegin() == S - 1);
}

}  // namespace

TEST_CASE("k-fold partitions") {
  CHECK(sizes(gnet::kfold_indices(8, 4, 1)) == std::vector<std::size_t>{2, 2, 2, 2});
  CHECK(sizes(gnet::kfold_indices(9, 4, 1)) == std::vector<std::size_t>{3, 2, 2, 2});
  CHECK(gnet::kfold_indices(50, 4, 7) == gnet::kfold_indices(50, 4, 7));
  CHECK(gnet::kfold_indices(50, 4, 7) != gnet::kfold_indices(50, 4, 8));
  CHECK_THROWS_AS(gnet::kfold_indices(3, 4, 0), gnet::ParameterError);
  CHECK_THROWS_AS(gnet::kfold_indices(10, 1, 0), gnet::ParameterError);

  for (Index S : {4, 5, 17, 100, 101}) {
    for (int k : {2, 3, 4}) {
      const auto folds = gnet::kfold_indices(S, k, static_cast<std::uint64_t>(S));
      check_partition(folds, S);
      const auto sz = sizes(folds);
      CHECK(*std::max_element(sz.begin(), sz.end()) - *std::min_element(sz.begin(), sz.end()) <= 1);
    }
  }
}

TEST_CASE("stratified k-fold spreads every class") {
  std::vector<std::string> labels;
  for (int i = 0; i < 40; ++i) labels.push_back(i < 12 ? "x" : (i < 32 ? "y" : "z"));
  const auto folds = gnet::kfold_indices(40, 4, 3, labels);
  check_partition(folds, 40);
  for (const auto& f : folds) {
    std::map<std::string, int> count;
    for (Index i : f) ++count[labels[static_cast<std::size_t>(i)]];
    CHECK(count["x"] == 3);
    CHECK(count["y"] == 5);
    CHECK(count["z"] == 2);
  }
  CHECK_THROWS_AS(gnet::kfold_indices(40, 4, 3, std::span(labels).first(10)), gnet::ShapeError);
}

TEST_CASE("default grid and config validation") {
  const auto grid = gnet::default_gamma_grid();
  REQUIRE(grid.size() == 31);
  CHECK(grid.front() == std::ldexp(1.0, -30));
  CHECK(grid[15] == 1.0);
  CHECK(grid.back() == std::ldexp(1.0, 30));

  GridSearchConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.folds = 1;
  CHECK_THROWS_AS(cfg.validate(), gnet::ParameterError);
  cfg.folds = 4;
  cfg.gamma_grid = {};
  CHECK_THROWS_AS(cfg.validate(), gnet::ParameterError);
  cfg.gamma_grid = {1.0, 0.5};
  CHECK_THROWS_AS(cfg.validate(), gnet::ParameterError);
  cfg.gamma_grid = {-1.0, 0.5};
  CHECK_THROWS_AS(cfg.validate(), gnet::ParameterError);
}

TEST_CASE("grid search: a single value is selected") {
  const Dataset d = blobs(30, 0.1, 0, 1);
  GridSearchConfig cfg;
  cfg.gamma_grid = {0x1p-5};
  const auto report = gnet::grid_search(d, gnet::GnnConfig{0.05, 20, 1.0}, cfg);
  CHECK(report.best_params() == std::vector<double>{0x1p-5});
  CHECK(report.fits == 4);
  CHECK(report.accuracy.size() == 1);
  CHECK(report.folds() == 4);
}

TEST_CASE("grid search: strong regularization beats interpolating label noise") {
  const Dataset d = blobs(60, 0.12, 18, 2);
  GridSearchConfig cfg;
  cfg.gamma_grid = {1e-12, 1.0};
  const auto report = gnet::grid_search(d, gnet::GnnConfig{0.05, 200, 1.0}, cfg);
  MESSAGE("mean accuracy: gamma=1e-12 " << report.mean(0) << ", gamma=1 " << report.mean(1));
  CHECK(report.mean(1) > report.mean(0));
  CHECK(report.best_index == 1);
}

TEST_CASE("grid search: exact ties go to the larger gamma") {
  // Tight, far-apart clusters are classified perfectly by every gamma here.
  const Dataset d = blobs(20, 0.01, 0, 3);
  GridSearchConfig cfg;
  cfg.gamma_grid = {0x1p-6, 0x1p-4, 0x1p-2};
  const auto report = gnet::grid_search(d, gnet::GnnConfig{0.05, 6, 1.0}, cfg);
  for (std::size_t c = 0; c < 3; ++c) CHECK(report.mean(c) == 100.0);
  CHECK(report.best_index == 2);
  CHECK(report.best_mean == 100.0);
}

TEST_CASE("grid search: work count and report shape") {
  const Dataset d = blobs(25, 0.15, 3, 4);
  GridSearchConfig cfg;
  cfg.gamma_grid = {0x1p-10, 0x1p-5, 1.0, 0x1p5};
  cfg.folds = 5;
  const auto report = gnet::grid_search(d, gnet::GnnConfig{0.05, 15, 1.0}, cfg);
  CHECK(report.fits == 20);
  CHECK(report.candidates() == 4);
  for (const auto& row : report.accuracy) CHECK(row.size() == 5);
  double best = -1.0;
  for (std::size_t c = 0; c < 4; ++c) best = std::max(best, report.mean(c));
  CHECK(report.best_mean == best);
  CHECK(report.mean(report.best_index) == best);
}

TEST_CASE("grid search: reuse across gamma matches naive refits") {
  const Dataset d = blobs(40, 0.15, 6, 5);
  GridSearchConfig cfg;
  cfg.gamma_grid = {0x1p-20, 0x1p-8, 0x1p-2, 0x1p4};
  cfg.seed = 11;
  const gnet::GnnConfig fixed{0.05, 25, 1.0};
  const auto report = gnet::grid_search(d, fixed, cfg);

  const auto codec = gnet::LabelCodec::from_labels(d.labels);
  const auto folds = gnet::kfold_indices(d.rows(), cfg.folds, cfg.seed, d.labels);
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<Index> rest;
    for (std::size_t g = 0; g < folds.size(); ++g) {
      if (g != f) rest.insert(rest.end(), folds[g].begin(), folds[g].end());
    }
    std::sort(rest.begin(), rest.end());
    const Dataset fit_part = d.subset(rest);
    const Dataset val_part = d.subset(folds[f]);
    for (std::size_t c = 0; c < cfg.gamma_grid.size(); ++c) {
      gnet::GnnConfig cell = fixed;
      cell.gamma = cfg.gamma_grid[c];
      const auto model = gnet::fit(fit_part.features, fit_part.labels, cell, codec);
      const double acc = gnet::accuracy_percent(gnet::predict(model, val_part.features), val_part.labels);
      CHECK(report.accuracy[c][f] == acc);
    }
  }

  gnet::AlgorithmConfig base;
  base.gnn = fixed;
  const auto candidates = gnet::gamma_candidates(base, cfg.gamma_grid);
  const auto plain = gnet::grid_search_candidates(d, candidates, {"gamma"}, cfg.folds, cfg.seed);
  CHECK(plain.accuracy == report.accuracy);
  CHECK(plain.best_index == report.best_index);
}

TEST_CASE("grid search: thread count does not change the report") {
  const Dataset d = blobs(40, 0.2, 4, 6);
  GridSearchConfig cfg;
  cfg.gamma_grid = {0x1p-12, 0x1p-6, 1.0};
  gnet::set_threads(1);
  const auto serial = gnet::grid_search(d, gnet::GnnConfig{0.05, 30, 1.0}, cfg);
  gnet::set_threads(4);
  const auto parallel = gnet::grid_search(d, gnet::GnnConfig{0.05, 30, 1.0}, cfg);
  gnet::set_threads(0);
  CHECK(serial.accuracy == parallel.accuracy);
  CHECK(serial.best_index == parallel.best_index);
}

TEST_CASE("grid search: a fold without two training classes") {
  // The lone "a" row sits in one validation fold, leaving only "b" to train on.
  Dataset d = blobs(10, 0.1, 0, 7);
  d.labels.assign(d.labels.size(), "b");
  d.labels[0] = "a";
  GridSearchConfig cfg;
  cfg.gamma_grid = {1.0};
  CHECK_THROWS_AS(gnet::grid_search(d, gnet::GnnConfig{0.05, 5, 1.0}, cfg), gnet::StratificationError);
}

TEST_CASE("kernel candidate ordering") {
  gnet::AlgorithmConfig base;
  base.algorithm = gnet::Algorithm::KernelRidge;
  const std::vector<double> C{1.0, 4.0};
  const std::vector<double> delta{0.5, 2.0};
  const auto cands = gnet::kernel_candidates(base, C, delta);
  REQUIRE(cands.size() == 4);
  CHECK(cands[0].values == std::vector<double>{4.0, 2.0});
  CHECK(cands[1].values == std::vector<double>{4.0, 0.5});
  CHECK(cands[3].values == std::vector<double>{1.0, 0.5});
  CHECK(cands[3].config.kernel.C == 1.0);
  CHECK_THROWS_AS(gnet::gamma_candidates(base, C), gnet::ParameterError);
}

TEST_CASE("cross-validation CSV") {
  gnet::CvReport report;
  report.param_names = {"gamma"};
  report.params = {{0.25}, {4.0}};
  report.accuracy = {{50.0, 100.0}, {75.0, 75.0}};
  report.best_index = 1;
  report.best_mean = 75.0;
  std::ostringstream out;
  gnet::write_cv_csv(report, out);
  CHECK(out.str() ==
        "gamma,fold,accuracy\n"
        "0.25,0,50\n0.25,1,100\n4,0,75\n4,1,75\n"
        "4,best,75\n");
}

TEST_CASE("Iris selection lands near the reported gamma") {
  const auto* entry = gnet::find_bundled("iris");
  REQUIRE(entry != nullptr);
  gnet::SplitPlan plan;
  plan.train_count = entry->train_count;
  const auto [train, test] = gnet::split(gnet::load_dataset("iris"), plan);
  const auto report = gnet::grid_search(train, gnet::GnnConfig{0.05, 1000, 1.0}, GridSearchConfig{});
  const double chosen = report.best_params().front();
  MESSAGE("Iris selected gamma 2^" << std::log2(chosen) << " with CV accuracy " << report.best_mean);
  CHECK(std::abs(std::log2(chosen) - std::log2(entry->gnn_gamma)) <= 6.0);
}
