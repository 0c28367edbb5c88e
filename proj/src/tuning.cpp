#include "gnet/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "gnet/errors.hpp"
#include "gnet/log.hpp"
#include "gnet/parallel.hpp"
#include "gnet/text.hpp"

namespace gnet {

std::vector<std::vector<Index>> kfold_indices(Index S, int folds, std::uint64_t seed,
                                              std::span<const std::string> labels) {
  if (folds < 2) throw ParameterError("cross-validation needs at least 2 folds");
  if (S < folds) {
    throw ParameterError("cannot split " + std::to_string(S) + " samples into " +
                         std::to_string(folds) + " folds");
  }
  if (!labels.empty() && static_cast<Index>(labels.size()) != S) {
    throw ShapeError("fold labels do not match the sample count");
  }

  std::vector<Index> order(static_cast<std::size_t>(S));
  std::iota(order.begin(), order.end(), Index{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  if (!labels.empty()) {
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
      return labels[static_cast<std::size_t>(a)] < labels[static_cast<std::size_t>(b)];
    });
  }

  std::vector<std::vector<Index>> out(static_cast<std::size_t>(folds));
  for (std::size_t i = 0; i < order.size(); ++i) out[i % out.size()].push_back(order[i]);
  for (auto& fold : out) std::sort(fold.begin(), fold.end());
  return out;
}

std::vector<double> default_gamma_grid() {
  std::vector<double> grid;
  for (int e = -30; e <= 30; e += 2) grid.push_back(std::ldexp(1.0, e));
  return grid;
}

void GridSearchConfig::validate() const {
  if (folds < 2) throw ParameterError("grid search needs at least 2 folds");
  if (gamma_grid.empty()) throw ParameterError("gamma grid is empty");
  for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
    if (!(gamma_grid[i] > 0.0) || !std::isfinite(gamma_grid[i])) {
      throw ParameterError("gamma grid values must be positive and finite");
    }
    if (i > 0 && !(gamma_grid[i] > gamma_grid[i - 1])) {
      throw ParameterError("gamma grid must be strictly increasing");
    }
  }
}

double CvReport::mean(std::size_t candidate) const {
  const auto& row = accuracy.at(candidate);
  if (row.empty()) return 0.0;
  return std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(row.size());
}

void write_cv_csv(const CvReport& report, std::ostream& out) {
  for (const auto& name : report.param_names) out << name << ',';
  out << "fold,accuracy\n";
  for (std::size_t c = 0; c < report.candidates(); ++c) {
    for (std::size_t f = 0; f < report.accuracy[c].size(); ++f) {
      for (double v : report.params[c]) out << text::format_double(v) << ',';
      out << f << ',' << text::format_double(report.accuracy[c][f]) << '\n';
    }
  }
  if (report.candidates() > 0) {
    for (double v : report.best_params()) out << text::format_double(v) << ',';
    out << "best," << text::format_double(report.best_mean) << '\n';
  }
}

namespace {

struct FoldData {
  std::vector<Index> train;
  std::vector<Index> validate;
};

std::vector<FoldData> make_folds(const Dataset& data, int folds, std::uint64_t seed) {
  const auto sets = kfold_indices(data.rows(), folds, seed, data.labels);
  std::vector<FoldData> out(sets.size());
  for (std::size_t f = 0; f < sets.size(); ++f) {
    out[f].validate = sets[f];
    for (std::size_t g = 0; g < sets.size(); ++g) {
      if (g != f) out[f].train.insert(out[f].train.end(), sets[g].begin(), sets[g].end());
    }
    std::sort(out[f].train.begin(), out[f].train.end());
    std::set<std::string> present;
    for (Index i : out[f].train) present.insert(data.labels[static_cast<std::size_t>(i)]);
    if (present.size() < 2) {
      throw StratificationError("cross-validation fold " + std::to_string(f) +
                                " leaves fewer than two classes for training");
    }
  }
  return out;
}

void require_labeled(const Dataset& data) {
  if (!data.labeled()) throw LabelError("grid search needs a labeled training set");
  if (data.rows() < 2) throw ShapeError("grid search needs at least two samples");
}

// Runs body(f) for every fold, possibly in parallel; the first exception (by
// fold index) is rethrown after all folds finish.
template <typename Body>
void for_each_fold(std::size_t folds, Body&& body) {
  std::vector<std::exception_ptr> errors(folds);
  const int n = static_cast<int>(folds);
  GNET_OMP(parallel for schedule(dynamic))
  for (int f = 0; f < n; ++f) {
    try {
      body(static_cast<std::size_t>(f));
    } catch (...) {
      errors[static_cast<std::size_t>(f)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void select_best(CvReport& report) {
  report.best_index = 0;
  report.best_mean = report.mean(0);
  for (std::size_t c = 1; c < report.candidates(); ++c) {
    const double m = report.mean(c);
    if (m >= report.best_mean) {
      report.best_mean = m;
      report.best_index = c;
    }
  }
}

}  // namespace

CvReport grid_search(const Dataset& train, const GnnConfig& fixed, const GridSearchConfig& config) {
  config.validate();
  require_labeled(train);
  const LabelCodec codec = LabelCodec::from_labels(train.labels);
  const OutputMode mode = codec.resolve(fixed.mode);
  const BasisSpec spec(GegenbauerParam(fixed.lambda), static_cast<int>(train.cols()), fixed.L);
  const std::vector<FoldData> folds = make_folds(train, config.folds, config.seed);

  CvReport report;
  report.param_names = {"gamma"};
  for (double g : config.gamma_grid) report.params.push_back({g});
  report.accuracy.assign(config.gamma_grid.size(), std::vector<double>(folds.size(), 0.0));

  for_each_fold(folds.size(), [&](std::size_t f) {
    const Dataset fit_part = train.subset(folds[f].train);
    const Dataset val_part = train.subset(folds[f].validate);
    const NormalizationRanges ranges = fit_normalization(fit_part.features);
    const Matrix G = build_activation_matrix(apply_normalization(fit_part.features, ranges), spec);
    const Matrix G_val = build_activation_matrix(apply_normalization(val_part.features, ranges), spec);
    const RidgeSystem system(G, codec.encode(fit_part.labels, mode));

    std::vector<int> actual;
    actual.reserve(val_part.labels.size());
    for (const auto& l : val_part.labels) actual.push_back(codec.index_of(l));

    for (std::size_t c = 0; c < config.gamma_grid.size(); ++c) {
      const RwddSolution sol = system.solve(Regularizer(config.gamma_grid[c]));
      const std::vector<int> predicted = codec.decode(G_val * sol.weights);
      std::size_t hits = 0;
      for (std::size_t i = 0; i < actual.size(); ++i) hits += predicted[i] == actual[i];
      report.accuracy[c][f] =
          actual.empty() ? 0.0 : 100.0 * static_cast<double>(hits) / static_cast<double>(actual.size());
    }
    std::ostringstream msg;
    msg << "cv fold " << f << ": branch=" << to_string(system.branch()) << " S=" << G.rows()
        << " L=" << G.cols() << " gammas=" << config.gamma_grid.size();
    log_line(msg.str());
  });

  report.fits = config.gamma_grid.size() * folds.size();
  select_best(report);
  return report;
}

CvReport grid_search_candidates(const Dataset& train, std::span<const Candidate> candidates,
                                std::vector<std::string> param_names, int folds, std::uint64_t seed) {
  if (candidates.empty()) throw ParameterError("no candidate configurations to search");
  require_labeled(train);
  for (const auto& c : candidates) {
    if (c.values.size() != param_names.size()) {
      throw ParameterError("candidate values do not match the parameter names");
    }
  }
  const LabelCodec codec = LabelCodec::from_labels(train.labels);
  const std::vector<FoldData> fold_data = make_folds(train, folds, seed);

  CvReport report;
  report.param_names = std::move(param_names);
  for (const auto& c : candidates) report.params.push_back(c.values);
  report.accuracy.assign(candidates.size(), std::vector<double>(fold_data.size(), 0.0));

  for_each_fold(fold_data.size(), [&](std::size_t f) {
    const Dataset fit_part = train.subset(fold_data[f].train);
    const Dataset val_part = train.subset(fold_data[f].validate);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const AnyModel model = fit_model(fit_part.features, fit_part.labels, candidates[c].config, codec);
      report.accuracy[c][f] = accuracy_percent(predict(model, val_part.features), val_part.labels);
    }
  });

  report.fits = candidates.size() * fold_data.size();
  select_best(report);
  return report;
}

std::vector<Candidate> gamma_candidates(const AlgorithmConfig& base, std::span<const double> gammas) {
  if (base.algorithm == Algorithm::KernelRidge) {
    throw ParameterError("kernel-elm has no gamma; search C and delta instead");
  }
  std::vector<Candidate> out;
  for (double g : gammas) {
    Candidate c{base, {g}};
    c.config.set_gamma(g);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Candidate> kernel_candidates(const AlgorithmConfig& base, std::span<const double> C_grid,
                                         std::span<const double> delta_grid) {
  std::vector<double> Cs(C_grid.begin(), C_grid.end());
  std::vector<double> deltas(delta_grid.begin(), delta_grid.end());
  std::sort(Cs.rbegin(), Cs.rend());
  std::sort(deltas.rbegin(), deltas.rend());
  std::vector<Candidate> out;
  for (double C : Cs) {
    for (double d : deltas) {
      Candidate c{base, {C, d}};
      c.config.algorithm = Algorithm::KernelRidge;
      c.config.kernel.C = C;
      c.config.kernel.delta = d;
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace gnet
