#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "gnet/errors.hpp"
#include "gnet/experiments.hpp"
#include "gnet/log.hpp"
#include "oracles.hpp"

using gnet::Dataset;
using gnet::TrialProtocol;

namespace {

Dataset rings(int rows, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Dataset d;
  d.name = "rings";
  d.features.resize(rows, 2);
  for (int i = 0; i < rows; ++i) {
    d.features(i, 0) = u(rng);
    d.features(i, 1) = u(rng);
    const double r2 = d.features(i, 0) * d.features(i, 0) + d.features(i, 1) * d.features(i, 1);
    d.labels.push_back(r2 < 0.45 ? "inner" : (d.features(i, 0) > 0 ? "right" : "left"));
  }
  return d;
}

TrialProtocol small_protocol(int trials) {
  TrialProtocol p;
  p.trials = trials;
  p.base_seed = 3;
  p.split.train_fraction = 0.7;
  p.algorithm.gnn = gnet::GnnConfig{0.05, 40, 0x1p-8};
  return p;
}

}  // namespace

TEST_CASE("summary statistics") {
  const std::vector<double> v{90.0, 92.5, 97.0, 88.25};
  const auto s = gnet::summarize(v);
  CHECK(s.mean == doctest::Approx(oracle::mean(v)).epsilon(1e-15));
  CHECK(s.std == doctest::Approx(oracle::sample_std(v)).epsilon(1e-14));
  const std::vector<double> one{42.0};
  CHECK(gnet::summarize(one).mean == 42.0);
  CHECK(gnet::summarize(one).std == 0.0);
}

TEST_CASE("accuracy experiment: a single trial is its own summary") {
  const Dataset d = rings(150, 1);
  const auto report = gnet::run_accuracy_experiment(d, small_protocol(1));
  REQUIRE(report.trials.size() == 1);
  const auto& t = report.trials.front();
  CHECK(t.seed == 3);
  CHECK(t.train_rows == 105);
  CHECK(t.test_rows == 45);
  CHECK(report.mean_accuracy == t.accuracy);
  CHECK(report.std_accuracy == 0.0);
  CHECK(report.mean_fit_seconds == t.fit_seconds);

  // The trial is an ordinary split, fit and score.
  gnet::SplitPlan plan = small_protocol(1).split;
  plan.seed = 3;
  const auto [train, test] = gnet::split(d, plan);
  const auto model = gnet::fit(train.features, train.labels, small_protocol(1).algorithm.gnn);
  CHECK(t.accuracy == gnet::accuracy_percent(gnet::predict(model, test.features), test.labels));
}

TEST_CASE("accuracy experiment: deterministic and independent of threads") {
  const Dataset d = rings(200, 2);
  auto p = small_protocol(8);
  const auto a = gnet::run_accuracy_experiment(d, p);
  const auto b = gnet::run_accuracy_experiment(d, p);
  p.threads = 4;
  const auto c = gnet::run_accuracy_experiment(d, p);
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    CHECK(a.trials[i].seed == 3 + i);
    CHECK(a.trials[i].accuracy == b.trials[i].accuracy);
    CHECK(a.trials[i].accuracy == c.trials[i].accuracy);
    CHECK(a.trials[i].branch == c.trials[i].branch);
  }
  CHECK(a.mean_accuracy == b.mean_accuracy);
  CHECK(a.mean_accuracy == c.mean_accuracy);
}

TEST_CASE("accuracy experiment: stored summaries match recomputation") {
  const Dataset d = rings(180, 3);
  for (auto algo : {gnet::Algorithm::Gnn, gnet::Algorithm::RandomFeature, gnet::Algorithm::KernelRidge}) {
    auto p = small_protocol(6);
    p.algorithm.algorithm = algo;
    p.algorithm.rf.L = 30;
    p.algorithm.rf.gamma = 0x1p-4;
    p.algorithm.kernel = gnet::KernelSpec{4.0, 16.0};
    const auto report = gnet::run_accuracy_experiment(d, p);
    std::vector<double> acc;
    std::vector<double> secs;
    for (const auto& t : report.trials) {
      acc.push_back(t.accuracy);
      secs.push_back(t.fit_seconds);
      CHECK(t.branch == (algo == gnet::Algorithm::KernelRidge ? "kernel" : "primal"));
    }
    CHECK(std::abs(report.mean_accuracy - oracle::mean(acc)) <= 1e-12);
    CHECK(std::abs(report.std_accuracy - oracle::sample_std(acc)) <= 1e-12);
    CHECK(std::abs(report.mean_fit_seconds - oracle::mean(secs)) <= 1e-12);
  }
}

TEST_CASE("accuracy experiment: a failing trial names its index") {
  Dataset d = rings(60, 4);
  auto p = small_protocol(3);
  p.algorithm.gnn.lambda = -1.0;
  try {
    gnet::run_accuracy_experiment(d, p);
    FAIL("expected a failure");
  } catch (const gnet::Error& e) {
    CHECK(e.kind() == gnet::ErrorKind::Parameter);
    CHECK(std::string(e.what()).find("trial 0") != std::string::npos);
  }
  p = small_protocol(0);
  CHECK_THROWS_AS(gnet::run_accuracy_experiment(d, p), gnet::ParameterError);
}

TEST_CASE("timing sweeps") {
  const Dataset d = rings(120, 5);
  gnet::TimingOptions opts;
  opts.algorithm.gnn = gnet::GnnConfig{0.05, 50, 0x1p-6};
  opts.repetitions = 1;

  SUBCASE("one size gives one row") {
    const std::vector<gnet::Index> sizes{100};
    const auto rows = gnet::run_scalability_experiment(d, sizes, opts);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].samples == 100);
    CHECK(rows[0].basis_size == 50);
    CHECK(rows[0].repetitions == 1);
    CHECK(rows[0].branch == "primal");
    CHECK(rows[0].mean_fit_seconds >= 0.0);
  }
  SUBCASE("one basis size gives one row") {
    const std::vector<int> Ls{20};
    const auto rows = gnet::run_efficiency_experiment(d, Ls, 80, opts);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].basis_size == 20);
    CHECK(rows[0].samples == 80);
  }
  SUBCASE("accuracy columns repeat across runs") {
    const std::vector<int> Ls{10, 60, 120};
    const auto a = gnet::run_efficiency_experiment(d, Ls, 100, opts);
    const auto b = gnet::run_efficiency_experiment(d, Ls, 100, opts);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].train_accuracy == b[i].train_accuracy);
    CHECK(a[0].branch == "primal");
    CHECK(a[2].branch == "dual");
  }
  SUBCASE("the branch switches where S passes L") {
    std::vector<std::string> lines;
    gnet::ScopedLogSink sink([&](std::string_view l) { lines.emplace_back(l); });
    const std::vector<gnet::Index> sizes{30, 50, 51, 90};
    const auto rows = gnet::run_scalability_experiment(d, sizes, opts);
    CHECK(rows[0].branch == "dual");
    CHECK(rows[1].branch == "dual");
    CHECK(rows[2].branch == "primal");
    CHECK(rows[3].branch == "primal");
    int dual = 0;
    int primal = 0;
    for (const auto& l : lines) {
      dual += l.find("branch=dual") != std::string::npos;
      primal += l.find("branch=primal") != std::string::npos;
    }
    CHECK(dual >= 2);
    CHECK(primal >= 2);
  }
  SUBCASE("sizes must ascend") {
    const std::vector<gnet::Index> sizes{100, 50};
    CHECK_THROWS_AS(gnet::run_scalability_experiment(d, sizes, opts), gnet::ParameterError);
  }
}

TEST_CASE("sensitivity surface") {
  const Dataset d = rings(150, 6);
  auto p = small_protocol(3);
  SUBCASE("a single cell equals the accuracy experiment") {
    const std::vector<double> g{0x1p-5};
    const std::vector<int> L{25};
    const auto cells = gnet::run_sensitivity_experiment(d, g, L, p);
    REQUIRE(cells.size() == 1);
    p.algorithm.gnn.gamma = 0x1p-5;
    p.algorithm.gnn.L = 25;
    const auto direct = gnet::run_accuracy_experiment(d, p);
    CHECK(cells[0].mean_accuracy == direct.mean_accuracy);
    CHECK(cells[0].std_accuracy == direct.std_accuracy);
  }
  SUBCASE("row count is the grid product") {
    const std::vector<double> g{0x1p-10, 0x1p-5, 1.0};
    const std::vector<int> L{5, 10};
    const auto cells = gnet::run_sensitivity_experiment(d, g, L, p);
    CHECK(cells.size() == 6);
    std::ostringstream out;
    gnet::write_sensitivity_csv(cells, out);
    CHECK(out.str().rfind("gamma,L,mean_acc,std_acc\n", 0) == 0);
    const std::string csv = out.str();
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  }
  SUBCASE("kernel ridge has no gamma axis") {
    p.algorithm.algorithm = gnet::Algorithm::KernelRidge;
    const std::vector<double> g{1.0};
    const std::vector<int> L{5};
    CHECK_THROWS_AS(gnet::run_sensitivity_experiment(d, g, L, p), gnet::ParameterError);
  }
}

TEST_CASE("noise experiment") {
  const Dataset d = rings(150, 7);
  const auto p = small_protocol(5);
  const std::vector<double> amps{0.0, 0.05, 0.3};
  const auto report = gnet::run_noise_experiment(d, amps, p);
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[0].delta == 0.0);
  CHECK(report.rows[0].trial_accuracy == report.clean_trial_accuracy);
  for (const auto& row : report.rows) {
    CHECK(std::abs(row.delta - (row.mean_accuracy - report.clean_mean)) <= 1e-12);
    CHECK(std::abs(row.mean_accuracy - oracle::mean(row.trial_accuracy)) <= 1e-12);
    CHECK(std::abs(row.std_accuracy - oracle::sample_std(row.trial_accuracy)) <= 1e-12);
  }
  CHECK(std::abs(report.clean_mean - oracle::mean(report.clean_trial_accuracy)) <= 1e-12);

  const auto again = gnet::run_noise_experiment(d, amps, p);
  CHECK(again.rows[2].trial_accuracy == report.rows[2].trial_accuracy);

  std::ostringstream out;
  gnet::write_noise_csv(report, out);
  CHECK(out.str().rfind("amplitude,mean_acc,std_acc,delta\n", 0) == 0);

  const std::vector<double> bad{1.5};
  CHECK_THROWS_AS(gnet::run_noise_experiment(d, bad, p), gnet::ParameterError);
}

TEST_CASE("trial CSV and JSON summary") {
  const Dataset d = rings(100, 8);
  const auto report = gnet::run_accuracy_experiment(d, small_protocol(2));
  std::ostringstream out;
  gnet::write_trials_csv(report, out);
  const std::string csv = out.str();
  CHECK(csv.rfind("trial,seed,accuracy,fit_seconds,branch,train_rows,test_rows\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  const std::string json = gnet::summary_json(report);
  CHECK(json.find('\n') == std::string::npos);
  CHECK(json.find("\"mean_accuracy\"") != std::string::npos);
}
