#include "gnet/experiments.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "gnet/errors.hpp"
#include "gnet/log.hpp"
#include "gnet/parallel.hpp"
#include "gnet/text.hpp"

namespace gnet {
namespace {

using text::format_double;

std::string branch_name(const AnyModel& model) {
  if (algorithm_of(model) == Algorithm::KernelRidge) return "kernel";
  return std::string(to_string(fit_info_of(model).branch));
}

// splitmix64 finalizer; decorrelates the noise stream from the split stream.
std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

AlgorithmConfig config_for_trial(const AlgorithmConfig& base, std::uint64_t seed) {
  AlgorithmConfig cfg = base;
  cfg.rf.seed = seed;
  return cfg;
}

// Runs body(t) for t in [0, n) on up to `threads` threads and rethrows the
// lowest-index failure tagged with its trial number.
template <typename Body>
void for_each_trial(int n, int threads, Body&& body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  const int team = threads > 0 ? threads : max_threads();
  GNET_OMP(parallel for schedule(dynamic) num_threads(team))
  for (int t = 0; t < n; ++t) {
    try {
      body(t);
    } catch (const Error& e) {
      errors[static_cast<std::size_t>(t)] =
          std::make_exception_ptr(Error(e.kind(), "trial " + std::to_string(t) + ": " + e.what()));
    } catch (...) {
      errors[static_cast<std::size_t>(t)] = std::current_exception();
    }
  }
  (void)team;
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Clean and noisy accuracy for one trial of the noise experiment.
struct NoiseTrial {
  double clean = 0.0;
  std::vector<double> noisy;
};

}  // namespace

void TrialProtocol::validate() const {
  if (trials < 1) throw ParameterError("trials must be >= 1");
}

Summary summarize(std::span<const double> values) {
  Summary s;
  if (values.empty()) return s;
  const auto n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

void ExperimentReport::aggregate() {
  std::vector<double> acc;
  std::vector<double> secs;
  for (const auto& t : trials) {
    acc.push_back(t.accuracy);
    secs.push_back(t.fit_seconds);
  }
  const Summary a = summarize(acc);
  mean_accuracy = a.mean;
  std_accuracy = a.std;
  mean_fit_seconds = summarize(secs).mean;
}

ExperimentReport run_accuracy_experiment(const Dataset& data, const TrialProtocol& protocol) {
  protocol.validate();
  if (!data.labeled()) throw LabelError("accuracy experiments need labeled data");

  ExperimentReport report;
  report.experiment = "accuracy";
  report.dataset = data.name;
  report.algorithm = protocol.algorithm.algorithm;
  report.trials.resize(static_cast<std::size_t>(protocol.trials));

  for_each_trial(protocol.trials, protocol.threads, [&](int t) {
    const std::uint64_t seed = protocol.trial_seed(t);
    SplitPlan plan = protocol.split;
    plan.seed = seed;
    const auto [train, test] = split(data, plan);
    const AnyModel model = fit_model(train.features, train.labels, config_for_trial(protocol.algorithm, seed));

    TrialRecord& r = report.trials[static_cast<std::size_t>(t)];
    r.trial = t;
    r.seed = seed;
    r.accuracy = test.rows() > 0 ? accuracy_percent(predict(model, test.features), test.labels) : 0.0;
    r.fit_seconds = fit_info_of(model).seconds;
    r.branch = branch_name(model);
    r.train_rows = train.rows();
    r.test_rows = test.rows();
  });

  report.aggregate();
  return report;
}

namespace {

TimingRow time_fits(const Dataset& sample, const AlgorithmConfig& cfg, int repetitions) {
  if (repetitions < 1) throw ParameterError("repetitions must be >= 1");
  TimingRow row;
  row.samples = sample.rows();
  row.repetitions = repetitions;
  double total = 0.0;
  for (int rep = 0; rep < repetitions; ++rep) {
    const auto start = std::chrono::steady_clock::now();
    const AnyModel model = fit_model(sample.features, sample.labels, cfg);
    total += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (rep + 1 == repetitions) {
      row.branch = branch_name(model);
      row.train_accuracy = accuracy_percent(predict(model, sample.features), sample.labels);
    }
  }
  row.mean_fit_seconds = total / repetitions;
  return row;
}

int basis_size_of(const AlgorithmConfig& cfg) {
  return cfg.algorithm == Algorithm::RandomFeature ? cfg.rf.L : cfg.gnn.L;
}

// Restores the thread count when the sweep ends.
class SerialSection {
 public:
  SerialSection() : previous_(max_threads()) { set_threads(1); }
  ~SerialSection() { set_threads(previous_); }
  SerialSection(const SerialSection&) = delete;
  SerialSection& operator=(const SerialSection&) = delete;

 private:
  int previous_;
};

}  // namespace

std::vector<TimingRow> run_scalability_experiment(const Dataset& data, std::span<const Index> sizes,
                                                  const TimingOptions& options) {
  if (sizes.empty()) throw ParameterError("scalability sweep needs at least one size");
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (!(sizes[i] > sizes[i - 1])) throw ParameterError("scalability sizes must be ascending");
  }
  if (!data.labeled()) throw LabelError("scalability experiments need labeled data");
  SerialSection serial;

  std::vector<TimingRow> rows;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const Dataset sample = resample(data, sizes[i], options.seed + i);
    TimingRow row = time_fits(sample, config_for_trial(options.algorithm, options.seed), options.repetitions);
    row.basis_size = basis_size_of(options.algorithm);
    log_line("scalability S=" + std::to_string(row.samples) + " branch=" + row.branch);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<TimingRow> run_efficiency_experiment(const Dataset& data, std::span<const int> L_values,
                                                 Index samples, const TimingOptions& options) {
  if (L_values.empty()) throw ParameterError("efficiency sweep needs at least one L");
  if (options.algorithm.algorithm == Algorithm::KernelRidge) {
    throw ParameterError("kernel-elm has no hidden-layer size to sweep");
  }
  if (!data.labeled()) throw LabelError("efficiency experiments need labeled data");
  SerialSection serial;

  const Dataset sample = resample(data, samples, options.seed);
  std::vector<TimingRow> rows;
  for (int L : L_values) {
    AlgorithmConfig cfg = config_for_trial(options.algorithm, options.seed);
    cfg.set_basis_size(L);
    TimingRow row = time_fits(sample, cfg, options.repetitions);
    row.basis_size = L;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SensitivityCell> run_sensitivity_experiment(const Dataset& data,
                                                        std::span<const double> gamma_grid,
                                                        std::span<const int> L_grid,
                                                        const TrialProtocol& protocol) {
  if (gamma_grid.empty() || L_grid.empty()) throw ParameterError("sensitivity grids must be non-empty");
  if (protocol.algorithm.algorithm == Algorithm::KernelRidge) {
    throw ParameterError("sensitivity sweeps gamma and L; kernel-elm has neither");
  }
  std::vector<SensitivityCell> cells;
  for (double gamma : gamma_grid) {
    for (int L : L_grid) {
      TrialProtocol p = protocol;
      p.algorithm.set_gamma(gamma);
      p.algorithm.set_basis_size(L);
      const ExperimentReport r = run_accuracy_experiment(data, p);
      cells.push_back({gamma, L, r.mean_accuracy, r.std_accuracy});
    }
  }
  return cells;
}

NoiseReport run_noise_experiment(const Dataset& data, std::span<const double> amplitudes,
                                 const TrialProtocol& protocol) {
  protocol.validate();
  if (!data.labeled()) throw LabelError("noise experiments need labeled data");
  for (double a : amplitudes) {
    if (!(a >= 0.0 && a <= 1.0)) throw ParameterError("noise amplitudes must lie in [0,1]");
  }

  Dataset unit = data;
  unit.features = apply_normalization(data.features, fit_normalization(data.features));

  std::vector<NoiseTrial> results(static_cast<std::size_t>(protocol.trials));
  for_each_trial(protocol.trials, protocol.threads, [&](int t) {
    const std::uint64_t seed = protocol.trial_seed(t);
    SplitPlan plan = protocol.split;
    plan.seed = seed;
    const auto [train, test] = split(unit, plan);
    const AlgorithmConfig cfg = config_for_trial(protocol.algorithm, seed);

    NoiseTrial& out = results[static_cast<std::size_t>(t)];
    const AnyModel clean = fit_model(train.features, train.labels, cfg);
    out.clean = accuracy_percent(predict(clean, test.features), test.labels);
    for (double a : amplitudes) {
      const Dataset noisy = add_noise(train, a, mix_seed(seed));
      const AnyModel model = fit_model(noisy.features, noisy.labels, cfg);
      out.noisy.push_back(accuracy_percent(predict(model, test.features), test.labels));
    }
  });

  NoiseReport report;
  for (const auto& r : results) report.clean_trial_accuracy.push_back(r.clean);
  const Summary clean = summarize(report.clean_trial_accuracy);
  report.clean_mean = clean.mean;
  report.clean_std = clean.std;
  for (std::size_t k = 0; k < amplitudes.size(); ++k) {
    NoiseRow row;
    row.amplitude = amplitudes[k];
    for (const auto& r : results) row.trial_accuracy.push_back(r.noisy[k]);
    const Summary s = summarize(row.trial_accuracy);
    row.mean_accuracy = s.mean;
    row.std_accuracy = s.std;
    row.delta = s.mean - clean.mean;
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_trials_csv(const ExperimentReport& report, std::ostream& out) {
  out << "trial,seed,accuracy,fit_seconds,branch,train_rows,test_rows\n";
  for (const auto& t : report.trials) {
    out << t.trial << ',' << t.seed << ',' << format_double(t.accuracy) << ','
        << format_double(t.fit_seconds) << ',' << t.branch << ',' << t.train_rows << ','
        << t.test_rows << '\n';
  }
}

void write_timing_csv(std::span<const TimingRow> rows, std::ostream& out) {
  out << "S,L,mean_fit_seconds,branch,train_accuracy,repetitions\n";
  for (const auto& r : rows) {
    out << r.samples << ',' << r.basis_size << ',' << format_double(r.mean_fit_seconds) << ','
        << r.branch << ',' << format_double(r.train_accuracy) << ',' << r.repetitions << '\n';
  }
}

void write_sensitivity_csv(std::span<const SensitivityCell> cells, std::ostream& out) {
  out << "gamma,L,mean_acc,std_acc\n";
  for (const auto& c : cells) {
    out << format_double(c.gamma) << ',' << c.basis_size << ',' << format_double(c.mean_accuracy)
        << ',' << format_double(c.std_accuracy) << '\n';
  }
}

void write_noise_csv(const NoiseReport& report, std::ostream& out) {
  out << "amplitude,mean_acc,std_acc,delta\n";
  out << "0," << format_double(report.clean_mean) << ',' << format_double(report.clean_std) << ",0\n";
  for (const auto& r : report.rows) {
    if (r.amplitude == 0.0) continue;
    out << format_double(r.amplitude) << ',' << format_double(r.mean_accuracy) << ','
        << format_double(r.std_accuracy) << ',' << format_double(r.delta) << '\n';
  }
}

std::string summary_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["experiment"] = report.experiment;
  j["dataset"] = report.dataset;
  j["algorithm"] = std::string(to_string(report.algorithm));
  j["trials"] = report.trials.size();
  j["mean_accuracy"] = report.mean_accuracy;
  j["std_accuracy"] = report.std_accuracy;
  j["mean_fit_seconds"] = report.mean_fit_seconds;
  return j.dump();
}

}  // namespace gnet
