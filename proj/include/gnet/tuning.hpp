#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gnet/classifier.hpp"
#include "gnet/data_io.hpp"

namespace gnet {

/// Splits 0..S-1 into `folds` disjoint sets whose sizes differ by at most one.
/// With labels, each class is dealt round-robin across the folds after a
/// seeded shuffle, so every fold sees each class in proportion.
std::vector<std::vector<Index>> kfold_indices(Index S, int folds, std::uint64_t seed,
                                              std::span<const std::string> labels = {});

/// 2^-30, 2^-28, ..., 2^30 (31 values).
std::vector<double> default_gamma_grid();

struct GridSearchConfig {
  std::vector<double> gamma_grid = default_gamma_grid();
  int folds = 4;
  std::uint64_t seed = 0;

  /// folds >= 2, grid non-empty, positive and strictly increasing.
  void validate() const;
};

/// Validation accuracy for every (candidate, fold) cell.
struct CvReport {
  std::vector<std::string> param_names;        // e.g. {"gamma"} or {"C", "delta"}
  std::vector<std::vector<double>> params;     // one row of values per candidate
  std::vector<std::vector<double>> accuracy;   // [candidate][fold], percent
  std::size_t best_index = 0;
  double best_mean = 0.0;
  std::size_t fits = 0;

  std::size_t candidates() const noexcept { return params.size(); }
  int folds() const noexcept { return accuracy.empty() ? 0 : static_cast<int>(accuracy.front().size()); }
  double mean(std::size_t candidate) const;
  const std::vector<double>& best_params() const { return params.at(best_index); }
};

/// One row per (candidate, fold) with columns <params...>,fold,accuracy, then
/// a summary row whose fold column reads "best" and whose accuracy is the best
/// mean.
void write_cv_csv(const CvReport& report, std::ostream& out);

/// Cross-validated choice of gamma for the Gegenbauer network. The activation
/// matrix and Gram matrix are built once per fold and reused for every gamma.
/// Ties in mean accuracy go to the larger gamma.
CvReport grid_search(const Dataset& train, const GnnConfig& fixed, const GridSearchConfig& config);

struct Candidate {
  AlgorithmConfig config;
  std::vector<double> values;  // reported parameter values, matching param_names
};

/// Cross-validation over arbitrary configurations; each cell is a plain fit.
/// Ties go to the later candidate, so lists should run from least to most
/// regularized.
CvReport grid_search_candidates(const Dataset& train, std::span<const Candidate> candidates,
                                std::vector<std::string> param_names, int folds, std::uint64_t seed);

/// gamma ascending for gnn or rf-elm built on `base`.
std::vector<Candidate> gamma_candidates(const AlgorithmConfig& base, std::span<const double> gammas);

/// Kernel ridge over C descending (outer) and delta descending (inner).
std::vector<Candidate> kernel_candidates(const AlgorithmConfig& base, std::span<const double> C_grid,
                                         std::span<const double> delta_grid);

}  // namespace gnet
