#include "gnet/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gnet/classifier.hpp"
#include "gnet/data_io.hpp"
#include "gnet/errors.hpp"
#include "gnet/experiments.hpp"
#include "gnet/log.hpp"
#include "gnet/parallel.hpp"
#include "gnet/serialization.hpp"
#include "gnet/text.hpp"
#include "gnet/tuning.hpp"

namespace gnet::cli {

double parse_positive(const std::string& raw, const std::string& what) {
  const std::string_view s = text::trim(raw);
  std::optional<double> value;
  if (const auto caret = s.find('^'); caret != std::string_view::npos) {
    const auto base = text::parse_double(s.substr(0, caret));
    const auto exponent = text::parse_double(s.substr(caret + 1));
    if (base && exponent) value = std::pow(*base, *exponent);
  } else {
    value = text::parse_double(s);
  }
  if (!value || !std::isfinite(*value) || !(*value > 0.0)) {
    throw ParameterError(what + ": '" + raw + "' is not a positive number (forms: 0.25, 1e-3, 2^-12)");
  }
  return *value;
}

namespace {

namespace fs = std::filesystem;
using text::format_double;

// Raw flag values. Empty strings and negative sentinels mean "use the default",
// which may come from the bundled dataset registry.
struct Options {
  std::string data;
  int label_col = -1;
  bool header = false;
  bool no_labels = false;
  std::string algo = "gnn";
  std::string mode = "auto";
  std::string lambda;
  int L = 0;
  std::string gamma;
  std::string delta;
  std::string C;
  std::string activation = "sigmoid";
  int trials = 50;
  std::uint64_t seed = 0;
  double train_frac = 0.0;
  long long train_count = 0;
  std::string out = ".";
  int threads = -1;
  std::string experiment;
  std::string model;
  std::vector<std::string> gamma_grid;
  std::vector<std::string> C_grid;
  std::vector<std::string> delta_grid;
  std::vector<int> L_grid;
  std::vector<long long> sizes;
  std::vector<double> amplitudes;
  int folds = 4;
  int reps = 5;
  long long samples = 1000;
};

struct Resolved {
  AlgorithmConfig algorithm;
  SplitPlan split;
  bool explicit_split = false;
  int threads = 0;
  std::vector<double> gamma_grid;
  std::vector<double> C_grid;
  std::vector<double> delta_grid;
  std::vector<int> L_grid;
  std::vector<Index> sizes;
  std::vector<double> amplitudes;
};

std::vector<double> powers_of_two(int from, int to, int step) {
  std::vector<double> out;
  for (int e = from; e <= to; e += step) out.push_back(std::ldexp(1.0, e));
  return out;
}

std::vector<double> parse_grid(const std::vector<std::string>& raw, const std::string& what) {
  std::vector<double> out;
  for (const auto& r : raw) out.push_back(parse_positive(r, what));
  return out;
}

CsvSchema schema_of(const Options& o) {
  CsvSchema schema;
  schema.label_column = o.label_col;
  schema.header = o.header;
  schema.labeled = !o.no_labels;
  return schema;
}

Dataset load(const Options& o) {
  if (o.data.empty()) throw ParameterError("--data is required");
  return load_dataset(o.data, schema_of(o));
}

bool timing_kind(const std::string& kind) { return kind == "scalability" || kind == "efficiency"; }

Resolved resolve(const Options& o, const std::string& dataset_name, const std::string& kind) {
  Resolved r;
  const BundledDataset* bundled = find_bundled(dataset_name);
  AlgorithmConfig& a = r.algorithm;
  a.algorithm = parse_algorithm(o.algo);
  a.set_mode(parse_output_mode(o.mode));

  if (bundled) {
    a.gnn.lambda = bundled->gnn_lambda;
    a.gnn.L = bundled->gnn_L;
    a.gnn.gamma = bundled->gnn_gamma;
    a.rf.L = bundled->elm_L;
    a.rf.gamma = 1.0 / bundled->elm_C;
    a.kernel.C = bundled->elm_C;
    a.kernel.delta = bundled->elm_delta;
  }
  if (!o.lambda.empty()) a.gnn.lambda = parse_positive(o.lambda, "--lambda");
  if (o.L < 0) throw ParameterError("--L must be positive");
  if (o.L > 0) a.set_basis_size(o.L);
  if (!o.gamma.empty()) a.set_gamma(parse_positive(o.gamma, "--gamma"));
  if (!o.C.empty()) a.kernel.C = parse_positive(o.C, "--C");
  if (!o.delta.empty()) a.kernel.delta = parse_positive(o.delta, "--delta");
  if (o.activation == "sigmoid") {
    a.rf.activation = Activation::Sigmoid;
  } else if (o.activation == "tanh") {
    a.rf.activation = Activation::Tanh;
  } else {
    throw ParameterError("--activation must be sigmoid or tanh");
  }
  a.rf.seed = o.seed;

  r.split.seed = o.seed;
  if (o.train_frac != 0.0 && o.train_count != 0) {
    throw ParameterError("--train-frac and --train-count are mutually exclusive");
  }
  if (o.train_frac != 0.0) {
    r.split.train_fraction = o.train_frac;
    r.explicit_split = true;
  } else if (o.train_count != 0) {
    r.split.train_count = static_cast<Index>(o.train_count);
    r.explicit_split = true;
  } else if (bundled) {
    r.split.train_count = bundled->train_count;
  } else {
    r.split.train_fraction = 0.7;
  }

  if (o.trials < 1) throw ParameterError("--trials must be >= 1");
  if (o.folds < 2) throw ParameterError("--folds must be >= 2");
  if (o.reps < 1) throw ParameterError("--reps must be >= 1");
  r.threads = o.threads >= 0 ? o.threads : (timing_kind(kind) ? 1 : 0);

  r.gamma_grid = o.gamma_grid.empty() ? default_gamma_grid() : parse_grid(o.gamma_grid, "--gamma-grid");
  r.C_grid = o.C_grid.empty() ? powers_of_two(-6, 24, 3) : parse_grid(o.C_grid, "--C-grid");
  r.delta_grid = o.delta_grid.empty() ? powers_of_two(-6, 12, 2) : parse_grid(o.delta_grid, "--delta-grid");
  if (o.L_grid.empty()) {
    r.L_grid = kind == "efficiency" ? std::vector<int>{10, 50, 100, 200, 500, 1000}
                                    : std::vector<int>{10, 25, 50, 100, 500, 1000};
  } else {
    r.L_grid = o.L_grid;
  }
  for (int L : r.L_grid) {
    if (L < 1) throw ParameterError("--L-grid values must be positive");
  }
  if (o.sizes.empty()) {
    r.sizes = {1000, 2000, 4000, 8000};
  } else {
    r.sizes.assign(o.sizes.begin(), o.sizes.end());
  }
  r.amplitudes = o.amplitudes.empty() ? std::vector<double>{0.05, 0.10} : o.amplitudes;
  return r;
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::ostringstream s;
  s << '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s << ',';
    if constexpr (std::is_floating_point_v<T>) {
      s << format_double(values[i]);
    } else {
      s << values[i];
    }
  }
  s << ']';
  return s.str();
}

// Writes the effective settings as a config file that reproduces the run.
void echo_config(std::ostream& err, const std::string& command, const Options& o, const Resolved& r) {
  const AlgorithmConfig& a = r.algorithm;
  err << "# resolved configuration (reusable with --config)\n";
  err << '[' << command << "]\n";
  err << "data=" << o.data << '\n';
  err << "label-col=" << o.label_col << '\n';
  err << "header=" << (o.header ? "true" : "false") << '\n';
  err << "algo=" << to_string(a.algorithm) << '\n';
  err << "mode=" << o.mode << '\n';
  switch (a.algorithm) {
    case Algorithm::Gnn:
      err << "lambda=" << format_double(a.gnn.lambda) << '\n';
      err << "L=" << a.gnn.L << '\n';
      err << "gamma=" << format_double(a.gnn.gamma) << '\n';
      break;
    case Algorithm::RandomFeature:
      err << "activation=" << o.activation << '\n';
      err << "L=" << a.rf.L << '\n';
      err << "gamma=" << format_double(a.rf.gamma) << '\n';
      break;
    case Algorithm::KernelRidge:
      err << "C=" << format_double(a.kernel.C) << '\n';
      err << "delta=" << format_double(a.kernel.delta) << '\n';
      break;
  }
  err << "seed=" << o.seed << '\n';
  if (r.split.train_fraction) err << "train-frac=" << format_double(*r.split.train_fraction) << '\n';
  if (r.split.train_count) err << "train-count=" << *r.split.train_count << '\n';
  err << "threads=" << r.threads << '\n';
  if (command == "predict" || !o.model.empty()) err << "model=" << o.model << '\n';
  if (command == "gridsearch") {
    err << "folds=" << o.folds << '\n';
    if (a.algorithm == Algorithm::KernelRidge) {
      err << "C-grid=" << join(r.C_grid) << '\n';
      err << "delta-grid=" << join(r.delta_grid) << '\n';
    } else {
      err << "gamma-grid=" << join(r.gamma_grid) << '\n';
    }
  }
  if (command == "experiment") {
    err << "experiment=" << o.experiment << '\n';
    err << "trials=" << o.trials << '\n';
    err << "out=" << o.out << '\n';
    if (o.experiment == "scalability") {
      err << "sizes=" << join(r.sizes) << '\n';
      err << "reps=" << o.reps << '\n';
    } else if (o.experiment == "efficiency") {
      err << "L-grid=" << join(r.L_grid) << '\n';
      err << "samples=" << o.samples << '\n';
      err << "reps=" << o.reps << '\n';
    } else if (o.experiment == "sensitivity") {
      err << "gamma-grid=" << join(r.gamma_grid) << '\n';
      err << "L-grid=" << join(r.L_grid) << '\n';
    } else if (o.experiment == "noise") {
      err << "amplitudes=" << join(r.amplitudes) << '\n';
    }
  }
  err << "# end configuration\n";
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &utc);
  return buf;
}

// <out>/<experiment>-<dataset>-<timestamp>.csv, with a numeric suffix if a run
// in the same second already used the name.
fs::path output_path(const std::string& out_dir, const std::string& experiment, const std::string& dataset) {
  fs::create_directories(out_dir);
  const std::string stem = experiment + "-" + dataset + "-" + timestamp();
  fs::path path = fs::path(out_dir) / (stem + ".csv");
  for (int i = 1; fs::exists(path); ++i) path = fs::path(out_dir) / (stem + "-" + std::to_string(i) + ".csv");
  return path;
}

template <typename Writer>
fs::path write_csv(const Options& o, const std::string& experiment, const std::string& dataset,
                   Writer&& writer) {
  const fs::path path = output_path(o.out, experiment, dataset);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ParseError("cannot write '" + path.string() + "'");
  writer(file);
  if (!file) throw ParseError("failed writing '" + path.string() + "'");
  return path;
}

void require_labels(const Dataset& d, const std::string& command) {
  if (!d.labeled()) throw LabelError(command + " needs labeled data");
}

// --- commands ------------------------------------------------------------------

int cmd_train(const Options& o, std::ostream& out, std::ostream& err) {
  Dataset data = load(o);
  require_labels(data, "train");
  const Resolved r = resolve(o, data.name, "train");
  set_threads(r.threads);
  echo_config(err, "train", o, r);

  Dataset train = data;
  std::optional<Dataset> test;
  if (r.explicit_split) {
    auto parts = split(data, r.split);
    train = std::move(parts.first);
    test = std::move(parts.second);
  }
  const AnyModel model = fit_model(train.features, train.labels, r.algorithm);
  const fs::path path =
      o.model.empty() ? fs::path(o.out) / (data.name + "-" + std::string(to_string(r.algorithm.algorithm)) + ".model")
                      : fs::path(o.model);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  save_model_file(model, path);

  const FitInfo& info = fit_info_of(model);
  out << "model=" << path.string() << '\n';
  out << "algorithm=" << to_string(r.algorithm.algorithm) << '\n';
  if (r.algorithm.algorithm != Algorithm::KernelRidge) out << "branch=" << to_string(info.branch) << '\n';
  out << "train_rows=" << train.rows() << '\n';
  out << "fit_seconds=" << format_double(info.seconds) << '\n';
  out << "train_accuracy=" << format_double(accuracy_percent(predict(model, train.features), train.labels))
      << '\n';
  if (test && test->rows() > 0) {
    out << "test_rows=" << test->rows() << '\n';
    out << "test_accuracy=" << format_double(accuracy_percent(predict(model, test->features), test->labels))
        << '\n';
  }
  return kOk;
}

int cmd_predict(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.model.empty()) throw ParameterError("--model is required");
  if (o.data.empty()) throw ParameterError("--data is required");
  const AnyModel model = load_model_file(o.model);
  const int dim = input_dimension(model);

  Dataset data = load(o);
  if (data.labeled() && data.cols() + 1 == dim) {
    CsvSchema unlabeled = schema_of(o);
    unlabeled.labeled = false;
    data = load_dataset(o.data, unlabeled);
  }
  if (data.cols() != dim) {
    throw ShapeError("data has " + std::to_string(data.cols()) + " feature columns, model expects " +
                     std::to_string(dim));
  }
  err << "# predict model=" << o.model << " data=" << o.data << " rows=" << data.rows() << '\n';

  const std::vector<std::string> predicted = predict(model, data.features);
  out << (data.labeled() ? "row,predicted,actual\n" : "row,predicted\n");
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    out << i << ',' << predicted[i];
    if (data.labeled()) out << ',' << data.labels[i];
    out << '\n';
  }
  if (data.labeled()) out << "accuracy," << format_double(accuracy_percent(predicted, data.labels)) << '\n';
  return kOk;
}

int cmd_gridsearch(const Options& o, std::ostream& out, std::ostream& err) {
  Dataset data = load(o);
  require_labels(data, "gridsearch");
  const Resolved r = resolve(o, data.name, "gridsearch");
  set_threads(r.threads);
  echo_config(err, "gridsearch", o, r);

  const Dataset train = split(data, r.split).first;
  CvReport report;
  switch (r.algorithm.algorithm) {
    case Algorithm::Gnn:
      report = grid_search(train, r.algorithm.gnn, GridSearchConfig{r.gamma_grid, o.folds, o.seed});
      break;
    case Algorithm::RandomFeature: {
      GridSearchConfig check{r.gamma_grid, o.folds, o.seed};
      check.validate();
      const auto cands = gamma_candidates(r.algorithm, r.gamma_grid);
      report = grid_search_candidates(train, cands, {"gamma"}, o.folds, o.seed);
      break;
    }
    case Algorithm::KernelRidge: {
      const auto cands = kernel_candidates(r.algorithm, r.C_grid, r.delta_grid);
      report = grid_search_candidates(train, cands, {"C", "delta"}, o.folds, o.seed);
      break;
    }
  }
  const fs::path path = write_csv(o, "gridsearch", data.name, [&](std::ostream& f) { write_cv_csv(report, f); });

  nlohmann::json j;
  j["experiment"] = "gridsearch";
  j["dataset"] = data.name;
  j["algorithm"] = std::string(to_string(r.algorithm.algorithm));
  for (std::size_t k = 0; k < report.param_names.size(); ++k) {
    j["best_" + report.param_names[k]] = report.best_params()[k];
  }
  j["best_mean_accuracy"] = report.best_mean;
  j["fits"] = report.fits;
  j["csv"] = path.string();
  out << j.dump() << '\n';
  return kOk;
}

TrialProtocol protocol_of(const Options& o, const Resolved& r) {
  TrialProtocol p;
  p.trials = o.trials;
  p.base_seed = o.seed;
  p.split = r.split;
  p.algorithm = r.algorithm;
  p.threads = r.threads;
  return p;
}

int cmd_experiment(const Options& o, std::ostream& out, std::ostream& err) {
  const std::string& kind = o.experiment;
  if (kind != "accuracy" && kind != "scalability" && kind != "efficiency" && kind != "sensitivity" &&
      kind != "noise") {
    throw ParameterError("unknown experiment '" + kind +
                         "' (expected accuracy, scalability, efficiency, sensitivity or noise)");
  }
  Dataset data = load(o);
  require_labels(data, "experiment");
  const Resolved r = resolve(o, data.name, kind);
  set_threads(r.threads);
  echo_config(err, "experiment", o, r);

  nlohmann::json j;
  j["experiment"] = kind;
  j["dataset"] = data.name;
  j["algorithm"] = std::string(to_string(r.algorithm.algorithm));

  if (kind == "accuracy") {
    const ExperimentReport report = run_accuracy_experiment(data, protocol_of(o, r));
    const fs::path path = write_csv(o, kind, data.name, [&](std::ostream& f) { write_trials_csv(report, f); });
    j = nlohmann::json::parse(summary_json(report));
    j["csv"] = path.string();
  } else if (kind == "scalability" || kind == "efficiency") {
    TimingOptions t;
    t.algorithm = r.algorithm;
    t.repetitions = o.reps;
    t.seed = o.seed;
    const std::vector<TimingRow> rows =
        kind == "scalability" ? run_scalability_experiment(data, r.sizes, t)
                              : run_efficiency_experiment(data, r.L_grid, static_cast<Index>(o.samples), t);
    const fs::path path = write_csv(o, kind, data.name, [&](std::ostream& f) { write_timing_csv(rows, f); });
    j["rows"] = rows.size();
    j["csv"] = path.string();
    for (const auto& row : rows) {
      nlohmann::json line{{"S", row.samples},
                          {"L", row.basis_size},
                          {"mean_fit_seconds", row.mean_fit_seconds},
                          {"branch", row.branch}};
      out << line.dump() << '\n';
    }
  } else if (kind == "sensitivity") {
    const auto cells = run_sensitivity_experiment(data, r.gamma_grid, r.L_grid, protocol_of(o, r));
    const fs::path path =
        write_csv(o, kind, data.name, [&](std::ostream& f) { write_sensitivity_csv(cells, f); });
    const auto best = std::max_element(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
      return a.mean_accuracy < b.mean_accuracy;
    });
    j["cells"] = cells.size();
    j["best_gamma"] = best->gamma;
    j["best_L"] = best->basis_size;
    j["best_mean_accuracy"] = best->mean_accuracy;
    j["csv"] = path.string();
  } else {
    const NoiseReport report = run_noise_experiment(data, r.amplitudes, protocol_of(o, r));
    const fs::path path = write_csv(o, kind, data.name, [&](std::ostream& f) { write_noise_csv(report, f); });
    j["clean_mean_accuracy"] = report.clean_mean;
    for (const auto& row : report.rows) {
      out << nlohmann::json{{"amplitude", row.amplitude},
                            {"mean_accuracy", row.mean_accuracy},
                            {"std_accuracy", row.std_accuracy},
                            {"delta", row.delta}}
                 .dump()
          << '\n';
    }
    j["csv"] = path.string();
  }
  out << j.dump() << '\n';
  return kOk;
}

// --- flag wiring -------------------------------------------------------------------

void add_data_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--data", o.data, "CSV path or bundled dataset name (iris, wine, glass, ...)");
  cmd->add_option("--label-col", o.label_col, "0-based label column; negative counts from the end")
      ->capture_default_str();
  cmd->add_flag("--header", o.header, "First non-empty line is a header");
}

void add_model_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--algo", o.algo, "gnn | rf-elm | kernel-elm")->capture_default_str();
  cmd->add_option("--mode", o.mode, "auto | binary | multiclass")->capture_default_str();
  cmd->add_option("--lambda", o.lambda, "Gegenbauer parameter (gnn)");
  cmd->add_option("--L", o.L, "Hidden-layer size (gnn, rf-elm)");
  cmd->add_option("--gamma", o.gamma, "Ridge weight, e.g. 2^-12 (gnn, rf-elm)");
  cmd->add_option("--delta", o.delta, "Gaussian kernel width (kernel-elm)");
  cmd->add_option("--C", o.C, "Kernel ridge trade-off (kernel-elm)");
  cmd->add_option("--activation", o.activation, "sigmoid | tanh (rf-elm)")->capture_default_str();
}

void add_protocol_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Base seed for every random choice")->capture_default_str();
  auto* frac = cmd->add_option("--train-frac", o.train_frac, "Training fraction in (0,1)");
  auto* count = cmd->add_option("--train-count", o.train_count, "Training row count");
  frac->excludes(count);
  cmd->add_option("--threads", o.threads, "Thread count; 0 = runtime default");
  cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Gegenbauer network classifier with random-feature and kernel ridge baselines", "gnet"};
  app.set_config("--config", "", "INI file with [train], [predict], [gridsearch] or [experiment] sections");
  app.require_subcommand(1, 1);

  auto* train = app.add_subcommand("train", "Fit a model and write it to a file");
  add_data_flags(train, o);
  add_model_flags(train, o);
  add_protocol_flags(train, o);
  train->add_option("--model", o.model, "Model file to write (default <out>/<dataset>-<algo>.model)");

  auto* pred = app.add_subcommand("predict", "Label rows of a dataset with a saved model");
  add_data_flags(pred, o);
  pred->add_flag("--no-labels", o.no_labels, "Treat every column as a feature");
  pred->add_option("--model", o.model, "Model file to read");

  auto* grid = app.add_subcommand("gridsearch", "Cross-validated hyper-parameter search");
  add_data_flags(grid, o);
  add_model_flags(grid, o);
  add_protocol_flags(grid, o);
  grid->add_option("--folds", o.folds, "Cross-validation folds")->capture_default_str();
  grid->add_option("--gamma-grid", o.gamma_grid, "Gamma values (default 2^-30..2^30 step 2^2)")->delimiter(',');
  grid->add_option("--C-grid", o.C_grid, "C values for kernel-elm")->delimiter(',');
  grid->add_option("--delta-grid", o.delta_grid, "delta values for kernel-elm")->delimiter(',');

  auto* exp = app.add_subcommand("experiment", "Multi-trial experiments writing CSV tables");
  add_data_flags(exp, o);
  add_model_flags(exp, o);
  add_protocol_flags(exp, o);
  exp->add_option("--experiment", o.experiment, "accuracy | scalability | efficiency | sensitivity | noise")
      ->required();
  exp->add_option("--trials", o.trials, "Reshuffled trials")->capture_default_str();
  exp->add_option("--gamma-grid", o.gamma_grid, "Gamma values (sensitivity)")->delimiter(',');
  exp->add_option("--L-grid", o.L_grid, "L values (sensitivity, efficiency)")->delimiter(',');
  exp->add_option("--sizes", o.sizes, "Sample sizes, ascending (scalability)")->delimiter(',');
  exp->add_option("--samples", o.samples, "Sample size (efficiency)")->capture_default_str();
  exp->add_option("--reps", o.reps, "Timed repetitions per point")->capture_default_str();
  exp->add_option("--amplitudes", o.amplitudes, "Noise amplitudes in [0,1] (noise)")->delimiter(',');

  // --config belongs to the top-level app; hoist it so it may follow the subcommand.
  std::vector<std::string> ordered;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      ordered.push_back(args[i]);
      ordered.push_back(args[++i]);
    } else if (args[i].rfind("--config=", 0) == 0) {
      ordered.push_back(args[i]);
    } else {
      rest.push_back(args[i]);
    }
  }
  ordered.insert(ordered.end(), rest.begin(), rest.end());
  std::vector<std::string> reversed(ordered.rbegin(), ordered.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  ScopedLogSink sink([&err](std::string_view line) { err << "[gnet] " << line << '\n'; });
  const int previous_threads = max_threads();
  try {
    int code = kOk;
    if (*train) {
      if (o.data.empty()) {
        err << "error: --data is required\n" << train->help();
        return kConfigError;
      }
      code = cmd_train(o, out, err);
    } else if (*pred) {
      code = cmd_predict(o, out, err);
    } else if (*grid) {
      if (o.data.empty()) {
        err << "error: --data is required\n" << grid->help();
        return kConfigError;
      }
      code = cmd_gridsearch(o, out, err);
    } else {
      if (o.data.empty()) {
        err << "error: --data is required\n" << exp->help();
        return kConfigError;
      }
      code = cmd_experiment(o, out, err);
    }
    set_threads(previous_threads);
    return code;
  } catch (const Error& e) {
    set_threads(previous_threads);
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::Parameter:
        return kConfigError;
      case ErrorKind::Numeric:
        return kNumericError;
      default:
        return kDataError;
    }
  } catch (const fs::filesystem_error& e) {
    set_threads(previous_threads);
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
}

}  // namespace gnet::cli
