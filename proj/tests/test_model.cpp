#include <doctest.h>

#include <algorithm>
#include <random>

#include "gnet/errors.hpp"
#include "gnet/log.hpp"
#include "gnet/model.hpp"
#include "oracles.hpp"

using gnet::GnnConfig;
using gnet::LabelCodec;
using gnet::Matrix;
using gnet::OutputMode;

namespace {

std::vector<std::string> strings(std::initializer_list<const char*> items) {
  return {items.begin(), items.end()};
}

}  // namespace

TEST_CASE("label codec ordering") {
  CHECK(LabelCodec::from_labels(strings({"b", "a", "c", "a"})).classes() == strings({"a", "b", "c"}));
  CHECK(LabelCodec::from_labels(strings({"10", "9", "2"})).classes() == strings({"2", "9", "10"}));
  CHECK(LabelCodec::from_labels(strings({"1.0", "-1.0"})).classes() == strings({"-1.0", "1.0"}));
  CHECK(LabelCodec::from_labels(strings({"10", "x", "9"})).classes() == strings({"10", "9", "x"}));
  CHECK_THROWS_AS(LabelCodec::from_labels(strings({"a", "a"})), gnet::LabelError);
  CHECK_THROWS_AS(LabelCodec::from_classes(strings({"a", "a"})), gnet::LabelError);
}

TEST_CASE("target encoding") {
  const auto three = LabelCodec::from_labels(strings({"x", "y", "z"}));
  const Matrix row = three.encode(strings({"y"}), OutputMode::Multiclass);
  CHECK(row(0, 0) == -1.0);
  CHECK(row(0, 1) == 1.0);
  CHECK(row(0, 2) == -1.0);

  const auto two = LabelCodec::from_labels(strings({"neg", "pos"}));
  CHECK(two.encode(strings({"neg"}), OutputMode::Binary)(0, 0) == -1.0);
  CHECK(two.encode(strings({"pos"}), OutputMode::Binary)(0, 0) == 1.0);
  const Matrix mc = two.encode(strings({"pos"}), OutputMode::Multiclass);
  CHECK(mc.cols() == 2);
  CHECK(mc(0, 0) == -1.0);
  CHECK(mc(0, 1) == 1.0);

  CHECK(two.resolve(OutputMode::Auto) == OutputMode::Binary);
  CHECK(three.resolve(OutputMode::Auto) == OutputMode::Multiclass);
  CHECK_THROWS_AS(three.resolve(OutputMode::Binary), gnet::LabelError);

  try {
    three.encode(strings({"w"}), OutputMode::Multiclass);
    FAIL("expected a label error");
  } catch (const gnet::LabelError& e) {
    CHECK(std::string(e.what()).find("'w'") != std::string::npos);
  }
}

TEST_CASE("score decoding and tie rules") {
  const auto three = LabelCodec::from_labels(strings({"a", "b", "c"}));
  Matrix s(1, 3);
  s << -0.9, 0.7, -0.2;
  CHECK(three.decode(s) == std::vector<int>{1});

  const auto two = LabelCodec::from_labels(strings({"a", "b"}));
  Matrix zero(1, 1);
  zero << 0.0;
  CHECK(two.decode(zero) == std::vector<int>{1});
  Matrix tie(1, 2);
  tie << 0.5, 0.5;
  CHECK(two.decode(tie) == std::vector<int>{0});
}

TEST_CASE("argmax is invariant to positive scaling") {
  std::mt19937_64 rng(1);
  const auto codec = LabelCodec::from_labels(strings({"a", "b", "c", "d"}));
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix s = oracle::random_matrix(20, 4, rng);
    for (double c : {1e-6, 0.3, 7.0, 1e9}) CHECK(codec.decode(s * c) == codec.decode(s));
  }
}

TEST_CASE("normalization fit and apply") {
  Matrix X(2, 2);
  X << 0, 10, 4, 30;
  const auto r = gnet::fit_normalization(X);
  CHECK(r == gnet::NormalizationRanges{{0, 4}, {10, 30}});
  Matrix single(1, 1);
  single << 5;
  CHECK(gnet::fit_normalization(single) == gnet::NormalizationRanges{{5, 5}});
  Matrix col(3, 1);
  col << -1, 0, 2;
  CHECK(gnet::fit_normalization(col) == gnet::NormalizationRanges{{-1, 2}});

  Matrix one(1, 1);
  one << 4;
  CHECK(gnet::apply_normalization(one, {{0, 4}})(0, 0) == 1.0);
  one << 7;
  CHECK(gnet::apply_normalization(one, {{5, 5}})(0, 0) == 0.5);
  one << -3;
  CHECK(gnet::apply_normalization(one, {{0, 4}})(0, 0) == 0.0);
  CHECK_THROWS_AS(gnet::apply_normalization(X, {{0, 1}}), gnet::ShapeError);
}

TEST_CASE("normalization is idempotent") {
  std::mt19937_64 rng(2);
  const Matrix X = oracle::random_matrix(30, 4, rng) * 17.0;
  const Matrix once = gnet::apply_normalization(X, gnet::fit_normalization(X));
  const Matrix twice = gnet::apply_normalization(once, {{0, 1}, {0, 1}, {0, 1}, {0, 1}});
  CHECK(once == twice);
}

TEST_CASE("fit: XOR needs the cross term") {
  Matrix X(4, 2);
  X << 0, 0, 0, 1, 1, 0, 1, 1;
  const auto labels = strings({"a", "b", "b", "a"});
  const auto Xn = gnet::apply_normalization(X, gnet::fit_normalization(X));

  // On {0,1}^2 every univariate column is affine in its coordinate, so the
  // first four grlex columns (1, x2, x1, C2(x2)) span only {1, x1, x2}.
  const Matrix G4 = gnet::build_activation_matrix(Xn, gnet::BasisSpec(gnet::GegenbauerParam(0.05), 2, 4));
  CHECK(G4.fullPivLu().rank() == 3);
  const auto four = gnet::fit(X, labels, GnnConfig{0.05, 4, 1e-6, OutputMode::Auto});
  CHECK(four.mode == OutputMode::Binary);
  CHECK(four.weights.rows() == 4);
  CHECK(four.weights.cols() == 1);
  CHECK(gnet::predict_scores(four, X).cwiseAbs().maxCoeff() < 1e-3);

  // The fifth column is x1 x2, which separates XOR.
  const Matrix G5 = gnet::build_activation_matrix(Xn, gnet::BasisSpec(gnet::GegenbauerParam(0.05), 2, 5));
  CHECK(G5.fullPivLu().rank() == 4);
  const auto five = gnet::fit(X, labels, GnnConfig{0.05, 5, 1e-6, OutputMode::Auto});
  CHECK(gnet::predict(five, X) == labels);
}

TEST_CASE("fit: precondition errors") {
  Matrix X = Matrix::Constant(3, 2, 0.5);
  CHECK_THROWS_AS(gnet::fit(X, strings({"a", "a", "a"}), GnnConfig{}), gnet::LabelError);
  CHECK_THROWS_AS(gnet::fit(X, strings({"a", "b"}), GnnConfig{}), gnet::ShapeError);
  CHECK_THROWS_AS(gnet::fit(X, strings({"a", "b", "a"}), GnnConfig{0.0, 10, 1.0}), gnet::ParameterError);
  CHECK_THROWS_AS(gnet::fit(X, strings({"a", "b", "a"}), GnnConfig{0.5, 10, 0.0}), gnet::ParameterError);
}

TEST_CASE("fit logs the branch it ran") {
  std::vector<std::string> lines;
  gnet::ScopedLogSink sink([&](std::string_view l) { lines.emplace_back(l); });
  std::mt19937_64 rng(3);
  const Matrix X = oracle::random_unit(12, 2, rng);
  std::vector<std::string> labels;
  for (int i = 0; i < 12; ++i) labels.push_back(i % 2 ? "p" : "q");
  gnet::fit(X, labels, GnnConfig{0.5, 12, 0.1});
  gnet::fit(X, labels, GnnConfig{0.5, 11, 0.1});
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].find("branch=dual") != std::string::npos);
  CHECK(lines[1].find("branch=primal") != std::string::npos);
}

TEST_CASE("prediction properties") {
  std::mt19937_64 rng(4);
  const Matrix X = oracle::random_matrix(40, 3, rng);
  std::vector<std::string> labels;
  for (int i = 0; i < 40; ++i) labels.push_back(X(i, 0) + X(i, 1) > 0 ? "hi" : "lo");
  auto model = gnet::fit(X, labels, GnnConfig{0.05, 30, 0x1p-8});

  SUBCASE("deterministic fits") {
    const auto again = gnet::fit(X, labels, GnnConfig{0.05, 30, 0x1p-8});
    CHECK(again.weights == model.weights);
    CHECK(gnet::predict_scores(again, X) == gnet::predict_scores(model, X));
  }
  SUBCASE("duplicated rows score identically") {
    Matrix Y(2, 3);
    Y.row(0) = X.row(5);
    Y.row(1) = X.row(5);
    const Matrix s = gnet::predict_scores(model, Y);
    CHECK(s.row(0) == s.row(1));
  }
  SUBCASE("zero weights give zero scores") {
    model.weights.setZero();
    CHECK(gnet::predict_scores(model, X).isZero(0.0));
  }
  SUBCASE("shape mismatch") {
    CHECK_THROWS_AS(gnet::predict(model, Matrix::Zero(2, 4)), gnet::ShapeError);
  }
}

TEST_CASE("binary and two-output multiclass disagree only on ties") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix X = oracle::random_matrix(60, 2, rng);
    std::vector<std::string> labels;
    for (int i = 0; i < 60; ++i) labels.push_back(X(i, 0) * X(i, 1) > 0 ? "1" : "2");
    const auto bin = gnet::fit(X, labels, GnnConfig{0.05, 40, 0x1p-6, OutputMode::Binary});
    const auto mc = gnet::fit(X, labels, GnnConfig{0.05, 40, 0x1p-6, OutputMode::Multiclass});
    const Matrix T = oracle::random_matrix(200, 2, rng);
    const auto pb = gnet::predict(bin, T);
    const auto pm = gnet::predict(mc, T);
    const Matrix sm = gnet::predict_scores(mc, T);
    const Matrix sb = gnet::predict_scores(bin, T);
    for (int i = 0; i < 200; ++i) {
      // With targets (-1,+1) the two multiclass columns are exact negatives of
      // each other and of the binary score, so any disagreement is a tie.
      CHECK(std::abs(sm(i, 1) - sb(i, 0)) <= 1e-9 * std::max(1.0, std::abs(sb(i, 0))));
      if (pb[static_cast<std::size_t>(i)] != pm[static_cast<std::size_t>(i)]) {
        CHECK(std::abs(sb(i, 0)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("interpolation on small sets, brute force") {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> pick_S(2, 20);
  std::uniform_int_distribution<int> pick_m(1, 3);
  std::uniform_int_distribution<int> pick_extra(0, 15);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int S = pick_S(rng);
    const int m = pick_m(rng);
    const int L = S + pick_extra(rng);
    const Matrix X = oracle::random_unit(S, m, rng);
    std::vector<std::string> labels;
    for (int i = 0; i < S; ++i) labels.push_back(std::to_string(i % 3));
    std::shuffle(labels.begin(), labels.end(), rng);
    const gnet::BasisSpec spec(gnet::GegenbauerParam(0.5), m, L);
    const Matrix G = gnet::build_activation_matrix(gnet::apply_normalization(X, gnet::fit_normalization(X)), spec);
    Eigen::JacobiSVD<Matrix> svd(G);
    const double smin = svd.singularValues()(S - 1);
    if (smin < 1e-3) continue;  // not numerically full row rank
    ++checked;
    const auto model = gnet::fit(X, labels, GnnConfig{0.5, L, 1e-10});
    const auto predicted = gnet::predict(model, X);
    for (int i = 0; i < S; ++i) CHECK(predicted[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(i)]);
    const Matrix scores = gnet::predict_scores(model, X);
    const Matrix targets = model.codec.encode(labels, model.mode);
    // Ridge leaves gamma (G G^T + gamma I)^-1 Phi, at most gamma / smin^2 per column norm.
    const double bound = 1e-10 / (smin * smin) * targets.colwise().norm().maxCoeff();
    CHECK((scores - targets).cwiseAbs().maxCoeff() <= bound * (1.0 + 1e-3) + 1e-9);
  }
  CHECK(checked >= 50);
}
