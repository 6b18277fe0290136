#include "famfeat/classify/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include <fmt/format.h>

#include "famfeat/error.hpp"

namespace famfeat {

Standardizer Standardizer::fit(const Eigen::MatrixXd& x) {
  Standardizer s;
  const double n = static_cast<double>(x.rows());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double m = x.col(j).mean();
    const double var = (x.col(j).array() - m).square().sum() / n;
    const double sd = std::sqrt(var);
    s.mean.push_back(m);
    s.scale.push_back(sd > 1e-12 * std::max(1.0, std::abs(m)) ? sd : 1.0);
  }
  return s;
}

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd& x) const {
  if (static_cast<std::size_t>(x.cols()) != mean.size()) throw ParameterError("standardizer dimension mismatch");
  Eigen::MatrixXd out(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const auto jj = static_cast<std::size_t>(j);
    out.col(j) = (x.col(j).array() - mean[jj]) / scale[jj];
  }
  return out;
}

std::vector<double> Standardizer::apply(std::span<const double> row) const {
  if (row.size() != mean.size()) throw ParameterError("standardizer dimension mismatch");
  std::vector<double> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) out[j] = (row[j] - mean[j]) / scale[j];
  return out;
}

std::vector<std::size_t> stratified_folds(std::span<const int> y, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw ParameterError(fmt::format("need at least 2 folds, got {}", k));
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < y.size(); ++i) by_class[y[i]].push_back(i);
  std::vector<std::size_t> fold(y.size(), 0);
  std::mt19937_64 rng(seed);
  std::size_t offset = 0;
  for (auto& [label, rows] : by_class) {
    if (rows.size() < k) {
      throw ParameterError(
          fmt::format("class {} has {} rows, too few to stratify into {} folds", label, rows.size(), k));
    }
    // Fisher-Yates with explicit draws so the permutation is library-independent.
    for (std::size_t i = rows.size() - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
      std::swap(rows[i], rows[j]);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) fold[rows[i]] = (i + offset) % k;
    offset += rows.size();
  }
  return fold;
}

EvalResult cross_validated_ccr(const Eigen::MatrixXd& x, std::span<const int> y, double sigma, double C,
                               std::size_t k_folds, std::uint64_t seed, const SvmOptions& options) {
  const auto folds = stratified_folds(y, k_folds, seed);
  return cross_validated_ccr(x, y, sigma, C, folds, k_folds, options);
}

EvalResult cross_validated_ccr(const Eigen::MatrixXd& x, std::span<const int> y, double sigma, double C,
                               std::span<const std::size_t> folds, std::size_t k_folds,
                               const SvmOptions& options) {
  if (y.size() != static_cast<std::size_t>(x.rows()) || folds.size() != y.size()) {
    throw ParameterError("rows, labels and fold assignment differ in length");
  }
  if (k_folds < 2) throw ParameterError("need at least 2 folds");
  const std::set<int> distinct(y.begin(), y.end());

  EvalResult result;
  result.classes.assign(distinct.begin(), distinct.end());
  const std::size_t k = result.classes.size();
  result.confusion.assign(k, std::vector<std::size_t>(k, 0));
  auto index_of = [&](int label) {
    return static_cast<std::size_t>(std::lower_bound(result.classes.begin(), result.classes.end(), label) -
                                    result.classes.begin());
  };

  std::size_t correct_total = 0;
  for (std::size_t f = 0; f < k_folds; ++f) {
    std::vector<Eigen::Index> train, test;
    for (std::size_t i = 0; i < y.size(); ++i) {
      (folds[i] == f ? test : train).push_back(static_cast<Eigen::Index>(i));
    }
    if (test.empty()) continue;

    Eigen::MatrixXd xtr(static_cast<Eigen::Index>(train.size()), x.cols());
    std::vector<int> ytr;
    for (std::size_t r = 0; r < train.size(); ++r) {
      xtr.row(static_cast<Eigen::Index>(r)) = x.row(train[r]);
      ytr.push_back(y[static_cast<std::size_t>(train[r])]);
    }
    const auto scaler = Standardizer::fit(xtr);
    const auto model = train_one_vs_one(scaler.apply(xtr), ytr, sigma, C, options);

    std::size_t correct = 0;
    std::vector<double> row(static_cast<std::size_t>(x.cols()));
    for (auto t : test) {
      for (Eigen::Index j = 0; j < x.cols(); ++j) row[static_cast<std::size_t>(j)] = x(t, j);
      const int predicted = predict_one_vs_one(model, scaler.apply(row));
      const int truth = y[static_cast<std::size_t>(t)];
      result.confusion[index_of(truth)][index_of(predicted)] += 1;
      correct += predicted == truth;
    }
    correct_total += correct;
    result.per_fold.push_back(100.0 * static_cast<double>(correct) / static_cast<double>(test.size()));
  }
  result.ccr = 100.0 * static_cast<double>(correct_total) / static_cast<double>(y.size());
  return result;
}

std::vector<double> default_sigma_grid() {
  std::vector<double> grid;
  for (double s = 0.1; s <= 10.0 + 1e-12; s *= 2.0) grid.push_back(s);
  return grid;
}

SigmaSearchResult sigma_search(const Eigen::MatrixXd& x, std::span<const int> y, double C,
                               std::span<const double> coarse_grid, std::size_t refine_steps,
                               std::size_t k_folds, std::uint64_t seed, const SvmOptions& options) {
  if (coarse_grid.empty()) throw ParameterError("sigma grid is empty");
  std::vector<double> grid(coarse_grid.begin(), coarse_grid.end());
  std::sort(grid.begin(), grid.end());
  for (double s : grid) {
    if (!(s > 0.0)) throw ParameterError(fmt::format("sigma grid values must be positive, got {}", s));
  }
  const auto folds = stratified_folds(y, k_folds, seed);

  SigmaSearchResult out;
  std::map<double, double> seen;
  auto evaluate = [&](double sigma) {
    if (auto it = seen.find(sigma); it != seen.end()) return it->second;
    double ccr = 0.0;
    try {
      ccr = cross_validated_ccr(x, y, sigma, C, folds, k_folds, options).ccr;
    } catch (const Error& e) {
      out.failures.push_back(fmt::format("sigma {}: {}", sigma, e.what()));
    }
    seen[sigma] = ccr;
    out.table.emplace_back(sigma, ccr);
    return ccr;
  };
  auto better = [](double ccr, double sigma, double best_ccr, double best_sigma) {
    return ccr > best_ccr || (ccr == best_ccr && sigma < best_sigma);
  };

  out.sigma = grid.front();
  out.ccr = evaluate(grid.front());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double ccr = evaluate(grid[i]);
    if (better(ccr, grid[i], out.ccr, out.sigma)) {
      out.sigma = grid[i];
      out.ccr = ccr;
    }
  }

  // Log2 spacing of the coarse grid (factor 2 for a single point).
  double step = 1.0;
  if (grid.size() > 1) step = std::log2(grid.back() / grid.front()) / static_cast<double>(grid.size() - 1);
  const double lo = grid.front(), hi = grid.back();
  for (std::size_t r = 0; r < refine_steps; ++r) {
    step /= 2.0;
    const double center = out.sigma;
    for (double candidate : {center * std::exp2(-step), center * std::exp2(step)}) {
      if (candidate < lo || candidate > hi) continue;
      const double ccr = evaluate(candidate);
      if (better(ccr, candidate, out.ccr, out.sigma)) {
        out.sigma = candidate;
        out.ccr = ccr;
      }
    }
  }
  return out;
}

}  // namespace famfeat
