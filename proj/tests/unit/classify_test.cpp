#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "famfeat/classify/evaluation.hpp"
#include "famfeat/error.hpp"
#include "fixtures.hpp"

namespace famfeat {
namespace {

using testing::blobs;
using testing::dual_feasibility_problem;
using testing::Labelled;

std::vector<double> row_of(const Eigen::MatrixXd& x, Eigen::Index i) {
  std::vector<double> r(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index c = 0; c < x.cols(); ++c) r[static_cast<std::size_t>(c)] = x(i, c);
  return r;
}

// Two interleaved noisy moons, labels +-1.
Labelled noisy_moons(std::uint64_t seed, std::size_t n, double noise) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> t(0.0, std::numbers::pi);
  std::normal_distribution<double> e(0.0, noise);
  Labelled d{Eigen::MatrixXd(static_cast<Eigen::Index>(n), 2), std::vector<int>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double a = t(rng);
    const bool upper = i % 2 == 0;
    const auto r = static_cast<Eigen::Index>(i);
    d.x(r, 0) = (upper ? std::cos(a) : 1.0 - std::cos(a)) + e(rng);
    d.x(r, 1) = (upper ? std::sin(a) : 0.5 - std::sin(a)) + e(rng);
    d.y[i] = upper ? 1 : -1;
  }
  return d;
}

TEST(Kernel, UnitDiagonalAndPositiveSemidefiniteGram) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Eigen::MatrixXd x(60, 4);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = g(rng);
  Eigen::MatrixXd k(60, 60);
  for (Eigen::Index i = 0; i < 60; ++i) {
    EXPECT_DOUBLE_EQ(gaussian_kernel(row_of(x, i), row_of(x, i), 0.7), 1.0);
    for (Eigen::Index j = 0; j < 60; ++j) k(i, j) = gaussian_kernel(row_of(x, i), row_of(x, j), 0.7);
  }
  EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(k).eigenvalues().minCoeff(), -1e-10);
  EXPECT_NEAR(gaussian_kernel(std::vector<double>{0, 0}, std::vector<double>{1, 1}, 1.0), std::exp(-1.0), 1e-15);
  EXPECT_THROW(gaussian_kernel(std::vector<double>{0}, std::vector<double>{1, 1}, 1.0), ParameterError);
}

TEST(Svm, DualFeasibleAndMarginsHold) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto d = noisy_moons(seed, 120, 0.2);
    for (double C : {0.5, 10.0}) {
      const auto m = train_svm(d.x, d.y, 0.5, C);
      EXPECT_EQ(dual_feasibility_problem(m), "") << "seed " << seed << " C " << C;
      // Free support vectors sit on the margin.
      for (Eigen::Index s = 0; s < m.support_vectors.rows(); ++s) {
        const double a = std::abs(m.dual_coefficients[static_cast<std::size_t>(s)]);
        if (a < 1e-6 * C || a > C * (1.0 - 1e-6)) continue;
        const double y = m.dual_coefficients[static_cast<std::size_t>(s)] > 0 ? 1.0 : -1.0;
        EXPECT_NEAR(y * predict(m, row_of(m.support_vectors, s)).decision, 1.0, 2e-3);
      }
    }
  }
}

TEST(Svm, NonSupportVectorsRespectTheMargin) {
  const auto d = blobs(3, 100);
  const auto m = train_svm(d.x, d.y, 1.0, 1.0);
  for (Eigen::Index i = 0; i < d.x.rows(); ++i) {
    bool is_sv = false;
    for (Eigen::Index s = 0; s < m.support_vectors.rows() && !is_sv; ++s) {
      is_sv = (m.support_vectors.row(s) - d.x.row(i)).norm() == 0.0;
    }
    if (!is_sv) EXPECT_GE(d.y[static_cast<std::size_t>(i)] * predict(m, row_of(d.x, i)).decision, 1.0 - 2e-3);
  }
}

TEST(Svm, TranslationAndRowOrderInvariance) {
  const auto d = noisy_moons(7, 100, 0.25);
  // Tight tolerance so the comparison sees the invariance, not solver slack.
  const SvmOptions tight{.tolerance = 1e-10};
  const auto base = train_svm(d.x, d.y, 0.6, 2.0, tight);

  Eigen::MatrixXd shifted = d.x;
  shifted.col(0).array() += 3.0;
  shifted.col(1).array() -= 1.5;
  const auto moved = train_svm(shifted, d.y, 0.6, 2.0, tight);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(d.x.rows()));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), std::mt19937_64(7));
  Eigen::MatrixXd permuted(d.x.rows(), 2);
  std::vector<int> py;
  for (std::size_t i = 0; i < order.size(); ++i) {
    permuted.row(static_cast<Eigen::Index>(i)) = d.x.row(order[i]);
    py.push_back(d.y[static_cast<std::size_t>(order[i])]);
  }
  const auto reordered = train_svm(permuted, py, 0.6, 2.0, tight);

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.5, 2.5);
  for (int probe = 0; probe < 200; ++probe) {
    const std::vector<double> p = {u(rng), u(rng)};
    const std::vector<double> q = {p[0] + 3.0, p[1] - 1.5};
    const double f = predict(base, p).decision;
    EXPECT_NEAR(predict(moved, q).decision, f, 1e-6);
    EXPECT_EQ(predict(reordered, p).decision, f);
  }
}

TEST(Svm, RejectsBadInput) {
  const auto d = blobs(4, 20);
  EXPECT_THROW(train_svm(d.x, d.y, 0.0, 1.0), ParameterError);
  EXPECT_THROW(train_svm(d.x, d.y, 1.0, -1.0), ParameterError);
  EXPECT_THROW(train_svm(d.x, std::vector<int>(20, 1), 1.0, 1.0), ParameterError);
  auto y = d.y;
  y[0] = 2;
  EXPECT_THROW(train_svm(d.x, y, 1.0, 1.0), ParameterError);
  const auto m = train_svm(d.x, d.y, 1.0, 1.0);
  EXPECT_THROW(predict(m, std::vector<double>{1, 2, 3}), ParameterError);
}

TEST(Svm, BlobProbesClassifiedByQuadrant) {
  const auto m = train_svm(blobs(5, 200).x, blobs(5, 200).y, 1.0, 1.0);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  std::size_t right = 0;
  for (int i = 0; i < 1000; ++i) {
    const int label = i % 2 == 0 ? 1 : -1;
    const std::vector<double> p = {3.0 * label + g(rng), 3.0 * label + g(rng)};
    right += predict(m, p).label == label;
  }
  EXPECT_GE(right, 990u);
}

// Three well separated clusters, labels 0, 1, 2.
Labelled three_clusters(std::uint64_t seed, std::size_t per_class) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 0.5);
  const double cx[3] = {0.0, 4.0, 0.0}, cy[3] = {0.0, 0.0, 4.0};
  Labelled d{Eigen::MatrixXd(static_cast<Eigen::Index>(3 * per_class), 2), {}};
  for (std::size_t i = 0; i < 3 * per_class; ++i) {
    const int c = static_cast<int>(i % 3);
    d.x(static_cast<Eigen::Index>(i), 0) = cx[c] + g(rng);
    d.x(static_cast<Eigen::Index>(i), 1) = cy[c] + g(rng);
    d.y.push_back(c);
  }
  return d;
}

TEST(OneVsOne, OneMachinePerPairAndPerfectOnClusters) {
  const auto d = three_clusters(11, 40);
  const auto m = train_one_vs_one(d.x, d.y, 1.0, 1.0);
  ASSERT_EQ(m.classes, (std::vector<int>{0, 1, 2}));
  ASSERT_EQ(m.machines.size(), 3u);
  EXPECT_EQ(m.machines[0].class_pair, (std::pair<int, int>{0, 1}));
  EXPECT_EQ(m.machines[1].class_pair, (std::pair<int, int>{0, 2}));
  EXPECT_EQ(m.machines[2].class_pair, (std::pair<int, int>{1, 2}));
  for (Eigen::Index i = 0; i < d.x.rows(); ++i) {
    EXPECT_EQ(predict_one_vs_one(m, row_of(d.x, i)), d.y[static_cast<std::size_t>(i)]);
  }
  EXPECT_THROW(train_one_vs_one(d.x, std::vector<int>(d.y.size(), 1), 1.0, 1.0), ParameterError);
}

TEST(OneVsOne, TwoClassesMatchTheBinaryMachine) {
  const auto d = noisy_moons(12, 100, 0.3);
  const auto binary = train_svm(d.x, d.y, 0.5, 1.0);
  const auto multi = train_one_vs_one(d.x, d.y, 0.5, 1.0);
  ASSERT_EQ(multi.machines.size(), 1u);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.5, 2.5);
  for (int probe = 0; probe < 200; ++probe) {
    const std::vector<double> p = {u(rng), u(rng)};
    EXPECT_EQ(predict_one_vs_one(multi, p), predict(binary, p).label);
  }
}

TEST(OneVsOne, RelabellingClassesKeepsTheRegions) {
  const auto d = three_clusters(13, 30);
  const int rename[3] = {7, -2, 4};
  std::vector<int> y2;
  for (int v : d.y) y2.push_back(rename[v]);
  const auto a = train_one_vs_one(d.x, d.y, 1.5, 1.0);
  const auto b = train_one_vs_one(d.x, y2, 1.5, 1.0);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 5.0);
  for (int probe = 0; probe < 300; ++probe) {
    const std::vector<double> p = {u(rng), u(rng)};
    EXPECT_EQ(predict_one_vs_one(b, p), rename[predict_one_vs_one(a, p)]);
  }
}

SvmModel constant_machine(int first, int second, double decision) {
  SvmModel m;
  m.support_vectors = Eigen::MatrixXd::Zero(1, 1);
  m.dual_coefficients = {0.0};
  m.bias = decision;
  m.class_pair = {first, second};
  return m;
}

TEST(OneVsOne, CyclicTieGoesToStrongestVotes) {
  MulticlassModel m;
  m.classes = {0, 1, 2};
  m.machines = {constant_machine(0, 1, 0.5), constant_machine(0, 2, -2.0), constant_machine(1, 2, 1.0)};
  const auto v = vote_one_vs_one(m, std::vector<double>{0.0});
  EXPECT_EQ(v.votes, (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(v.label, 2);
  EXPECT_DOUBLE_EQ(v.decision_sum[2], 2.0);

  m.machines[1] = constant_machine(0, 2, -1.0);
  m.machines[0] = constant_machine(0, 1, 1.0);
  EXPECT_EQ(vote_one_vs_one(m, std::vector<double>{0.0}).label, 0);
}

TEST(Folds, StratifiedAndSeeded) {
  std::vector<int> y;
  for (int i = 0; i < 53; ++i) y.push_back(i < 31 ? 1 : -1);
  const auto f = stratified_folds(y, 5, 3);
  for (std::size_t k = 0; k < 5; ++k) {
    std::size_t pos = 0, neg = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (f[i] == k) (y[i] > 0 ? pos : neg)++;
    }
    EXPECT_TRUE(pos == 6 || pos == 7);
    EXPECT_TRUE(neg == 4 || neg == 5);
  }
  EXPECT_EQ(f, stratified_folds(y, 5, 3));
  EXPECT_NE(f, stratified_folds(y, 5, 4));
  EXPECT_THROW(stratified_folds(std::vector<int>{1, 1, -1}, 2, 0), ParameterError);
}

TEST(CrossValidation, SeparableDataIsPerfectWithDiagonalConfusion) {
  const auto d = three_clusters(14, 30);
  const auto r = cross_validated_ccr(d.x, d.y, 1.0, 1.0, 5, 14);
  EXPECT_EQ(r.ccr, 100.0);
  ASSERT_EQ(r.confusion.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(r.confusion[i][j], i == j ? 30u : 0u);
  }
  EXPECT_EQ(r.per_fold.size(), 5u);
}

TEST(CrossValidation, CcrIsTraceOverTotalAndDeterministic) {
  const auto d = noisy_moons(15, 150, 0.45);
  const auto a = cross_validated_ccr(d.x, d.y, 0.4, 1.0, 5, 15);
  const auto b = cross_validated_ccr(d.x, d.y, 0.4, 1.0, 5, 15);
  std::size_t trace = 0, total = 0;
  for (std::size_t i = 0; i < a.confusion.size(); ++i) {
    trace += a.confusion[i][i];
    for (auto v : a.confusion[i]) total += v;
  }
  EXPECT_EQ(total, 150u);
  EXPECT_DOUBLE_EQ(a.ccr, 100.0 * static_cast<double>(trace) / 150.0);
  EXPECT_EQ(a.ccr, b.ccr);
  EXPECT_EQ(a.per_fold, b.per_fold);
  EXPECT_EQ(a.confusion, b.confusion);
}

TEST(CrossValidation, ShuffledLabelsStayNearChance) {
  std::size_t inside = 0;
  const int runs = 20;
  for (int run = 0; run < runs; ++run) {
    std::mt19937_64 rng(100 + run);
    std::normal_distribution<double> g;
    Eigen::MatrixXd x(400, 5);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = g(rng);
    std::vector<int> y(400);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = i < 200 ? 1 : -1;
    std::shuffle(y.begin(), y.end(), rng);
    const double ccr = cross_validated_ccr(x, y, std::sqrt(5.0), 1.0, 5, 100 + run).ccr;
    inside += ccr >= 40.0 && ccr <= 60.0;
  }
  EXPECT_GE(inside, 19u);
}

TEST(SigmaSearch, GridAndRefinementStayInRange) {
  const auto grid = default_sigma_grid();
  ASSERT_EQ(grid.size(), 7u);
  EXPECT_DOUBLE_EQ(grid.front(), 0.1);
  EXPECT_DOUBLE_EQ(grid.back(), 6.4);
  const auto d = noisy_moons(16, 150, 0.2);
  const auto r = sigma_search(d.x, d.y, 1.0, grid, 3, 5, 16);
  EXPECT_GE(r.sigma, grid.front());
  EXPECT_LE(r.sigma, grid.back());
  EXPECT_GE(r.table.size(), grid.size());
  double best = 0.0;
  for (const auto& [s, ccr] : r.table) best = std::max(best, ccr);
  EXPECT_EQ(r.ccr, best);
  EXPECT_GE(r.ccr, 90.0);
}

// Labels from the sign of a kernel expansion of known width on standard
// normal inputs, with 10% of labels flipped so the narrowest kernels overfit.
TEST(SigmaSearch, LandsNearTheGeneratingScale) {
  constexpr double kScale = 0.85;
  constexpr int kCentres = 4, kRows = 300;
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u01;
  Eigen::MatrixXd centres(kCentres, 2);
  std::vector<double> w(kCentres);
  for (int c = 0; c < kCentres; ++c) {
    centres(c, 0) = g(rng), centres(c, 1) = g(rng);
    w[static_cast<std::size_t>(c)] = (c % 2 ? 1.0 : -1.0) * (0.5 + u01(rng));
  }
  Eigen::MatrixXd x(kRows, 2);
  std::vector<int> y(kRows);
  for (int i = 0; i < kRows; ++i) {
    x(i, 0) = g(rng), x(i, 1) = g(rng);
    double f = 0.0;
    for (int c = 0; c < kCentres; ++c) {
      f += w[static_cast<std::size_t>(c)] * gaussian_kernel(row_of(x, i), row_of(centres, c), kScale);
    }
    y[static_cast<std::size_t>(i)] = f >= 0.0 ? 1 : -1;
    if (u01(rng) < 0.1) y[static_cast<std::size_t>(i)] *= -1;
  }

  // Oracle: exhaustive fine grid, 2^(1/4) steps.
  double oracle_sigma = 0.0, oracle_ccr = -1.0;
  for (double s = 0.1; s <= 6.4; s *= std::pow(2.0, 0.25)) {
    const double ccr = cross_validated_ccr(x, y, s, 10.0, 5, 17).ccr;
    if (ccr > oracle_ccr) oracle_sigma = s, oracle_ccr = ccr;
  }
  ASSERT_GE(oracle_sigma, 0.4);
  ASSERT_LE(oracle_sigma, 1.7);

  const auto r = sigma_search(x, y, 10.0, default_sigma_grid(), 3, 5, 17);
  EXPECT_GE(r.sigma, 0.4);
  EXPECT_LE(r.sigma, 1.7);
  EXPECT_GE(r.ccr, oracle_ccr - 1.0);
}

TEST(Standardizer, ZeroSpreadColumnMapsToConstant) {
  Eigen::MatrixXd x(4, 2);
  x << 1, 5, 2, 5, 3, 5, 4, 5;
  const auto s = Standardizer::fit(x);
  const auto z = s.apply(x);
  EXPECT_NEAR(z.col(0).mean(), 0.0, 1e-15);
  EXPECT_NEAR(z.col(0).squaredNorm() / 4.0, 1.0, 1e-12);
  EXPECT_EQ(z.col(1), Eigen::VectorXd::Zero(4));
  EXPECT_THROW(s.apply(std::vector<double>{1.0}), ParameterError);
}

}  // namespace
}  // namespace famfeat
