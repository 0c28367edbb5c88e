#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gnet/classifier.hpp"
#include "gnet/data_io.hpp"

namespace gnet {

/// Repeated reshuffled train/test evaluation. Trial t uses seed base_seed + t
/// for its split (and for the random features of rf-elm).
struct TrialProtocol {
  int trials = 50;
  std::uint64_t base_seed = 0;
  SplitPlan split;
  AlgorithmConfig algorithm;
  /// Threads used across trials; 1 runs them serially, 0 keeps the default.
  int threads = 1;

  void validate() const;
  std::uint64_t trial_seed(int t) const noexcept { return base_seed + static_cast<std::uint64_t>(t); }
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  double accuracy = 0.0;  // percent on the test split
  double fit_seconds = 0.0;
  std::string branch;  // "dual", "primal" or "kernel"
  Index train_rows = 0;
  Index test_rows = 0;
};

struct Summary {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single value
};

Summary summarize(std::span<const double> values);

struct ExperimentReport {
  std::string experiment;
  std::string dataset;
  Algorithm algorithm = Algorithm::Gnn;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  double mean_fit_seconds = 0.0;
  std::vector<TrialRecord> trials;

  /// Recomputes the summary fields from the trial records.
  void aggregate();
};

ExperimentReport run_accuracy_experiment(const Dataset& data, const TrialProtocol& protocol);

/// Options shared by the timing sweeps. Timing runs are always serial.
struct TimingOptions {
  AlgorithmConfig algorithm;
  int repetitions = 5;
  std::uint64_t seed = 0;
};

struct TimingRow {
  Index samples = 0;
  int basis_size = 0;
  double mean_fit_seconds = 0.0;
  std::string branch;
  double train_accuracy = 0.0;  // on the (resampled) training set, last repetition
  int repetitions = 0;
};

/// For each S (ascending) the data is amplified to S rows by sampling with
/// replacement and fitted `repetitions` times at fixed L.
std::vector<TimingRow> run_scalability_experiment(const Dataset& data, std::span<const Index> sizes,
                                                  const TimingOptions& options);

/// Fixed S rows (sampled with replacement), sweeping L.
std::vector<TimingRow> run_efficiency_experiment(const Dataset& data, std::span<const int> L_values,
                                                 Index samples, const TimingOptions& options);

struct SensitivityCell {
  double gamma = 0.0;
  int basis_size = 0;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
};

/// Full gamma x L sweep of run_accuracy_experiment (gnn or rf-elm).
std::vector<SensitivityCell> run_sensitivity_experiment(const Dataset& data,
                                                        std::span<const double> gamma_grid,
                                                        std::span<const int> L_grid,
                                                        const TrialProtocol& protocol);

struct NoiseRow {
  double amplitude = 0.0;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  double delta = 0.0;  // mean_accuracy - clean mean accuracy
  std::vector<double> trial_accuracy;
};

struct NoiseReport {
  double clean_mean = 0.0;
  double clean_std = 0.0;
  std::vector<double> clean_trial_accuracy;
  std::vector<NoiseRow> rows;
};

/// Features are min-max normalized over the whole set first; each trial then
/// perturbs only its training split by amplitude * U[-1,1] (clamped) and
/// scores on the clean test split. Every amplitude reuses the clean run's
/// split and noise seeds.
NoiseReport run_noise_experiment(const Dataset& data, std::span<const double> amplitudes,
                                 const TrialProtocol& protocol);

// CSV writers. Every file starts with a header line.
void write_trials_csv(const ExperimentReport& report, std::ostream& out);
void write_timing_csv(std::span<const TimingRow> rows, std::ostream& out);
void write_sensitivity_csv(std::span<const SensitivityCell> cells, std::ostream& out);
void write_noise_csv(const NoiseReport& report, std::ostream& out);

/// One JSON object on a single line summarizing an accuracy report.
std::string summary_json(const ExperimentReport& report);

}  // namespace gnet
