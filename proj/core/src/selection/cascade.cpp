#include "famfeat/selection/cascade.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "famfeat/classify/evaluation.hpp"
#include "famfeat/error.hpp"

namespace famfeat {

void CascadeConfig::validate() const {
  if (stage3_size < 1 || !(stage1_size > stage2_size && stage2_size > stage3_size)) {
    throw ParameterError(fmt::format("selection sizes must be strictly decreasing and positive, got {}/{}/{}",
                                     stage1_size, stage2_size, stage3_size));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError(fmt::format("alpha must lie in (0, 1), got {}", alpha));
  if (folds < 2) throw ParameterError("wrapper needs at least 2 folds");
  if (!(C > 0.0)) throw ParameterError("C must be positive");
  if (!(sigma_scale > 0.0)) throw ParameterError("sigma scale must be positive");
  if (!(search.r > search.l) || search.l < 1) throw ParameterError("floating search needs r > l >= 1");
}

std::vector<std::string> SelectionReport::final_names() const {
  std::vector<std::string> out;
  for (auto id : stage3) out.push_back(names.at(id));
  return out;
}

SvmSubsetEvaluator::SvmSubsetEvaluator(const FeatureMatrix& fm, Familiarity a, Familiarity b,
                                       const CascadeConfig& config)
    : k_(config.folds), C_(config.C), sigma_scale_(config.sigma_scale), svm_(config.svm) {
  const FeatureMatrix sub = fm.two_class(a, b);
  std::vector<int> labels;
  for (auto l : sub.labels) {
    labels.push_back(l == a ? 1 : -1);
    y_.push_back(l == a ? 1.0 : -1.0);
  }
  folds_ = stratified_folds(labels, k_, config.seed);
  z_ = Standardizer::fit(sub.values).apply(sub.values);
}

double SvmSubsetEvaluator::operator()(std::span<const std::size_t> columns) const {
  if (columns.empty()) throw ParameterError("empty feature subset");
  const auto n = z_.rows();
  const double sigma = sigma_scale_ * std::sqrt(static_cast<double>(columns.size()));
  const double inv = -1.0 / (2.0 * sigma * sigma);

  Eigen::MatrixXd kernel(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    kernel(i, i) = 1.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      double d2 = 0.0;
      for (auto c : columns) {
        const double d = z_(i, static_cast<Eigen::Index>(c)) - z_(j, static_cast<Eigen::Index>(c));
        d2 += d * d;
      }
      kernel(i, j) = kernel(j, i) = std::exp(d2 * inv);
    }
  }

  std::size_t correct = 0;
  for (std::size_t f = 0; f < k_; ++f) {
    std::vector<Eigen::Index> train, test;
    for (Eigen::Index i = 0; i < n; ++i) (folds_[static_cast<std::size_t>(i)] == f ? test : train).push_back(i);
    const auto m = static_cast<Eigen::Index>(train.size());
    Eigen::MatrixXd kt(m, m);
    std::vector<double> yt(train.size());
    for (Eigen::Index r = 0; r < m; ++r) {
      yt[static_cast<std::size_t>(r)] = y_[static_cast<std::size_t>(train[static_cast<std::size_t>(r)])];
      for (Eigen::Index c = 0; c < m; ++c) {
        kt(r, c) = kernel(train[static_cast<std::size_t>(r)], train[static_cast<std::size_t>(c)]);
      }
    }
    const auto dual = solve_svm_dual(kt, yt, C_, svm_);
    for (auto t : test) {
      double decision = dual.bias;
      for (Eigen::Index r = 0; r < m; ++r) {
        const double a = dual.alpha[static_cast<std::size_t>(r)];
        if (a > 0.0) decision += a * yt[static_cast<std::size_t>(r)] * kernel(t, train[static_cast<std::size_t>(r)]);
      }
      const double predicted = decision >= 0.0 ? 1.0 : -1.0;
      correct += predicted == y_[static_cast<std::size_t>(t)];
    }
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(n);
}

SelectionReport run_selection_cascade(const FeatureMatrix& fm, Familiarity a, Familiarity b,
                                      const CascadeConfig& config) {
  config.validate();
  if (a == b) throw ParameterError("class pair must name two different classes");
  const FeatureMatrix sub = fm.two_class(a, b);
  sub.validate();
  if (sub.rows_of(a).size() < config.folds || sub.rows_of(b).size() < config.folds) {
    throw ParameterError(fmt::format("each class needs at least {} rows for the wrapper folds", config.folds));
  }

  SelectionReport report;
  report.class_a = std::string(to_string(a));
  report.class_b = std::string(to_string(b));
  report.names = fm.names;

  const auto pv = t_test_pvalues(sub, a, b, config.ttest);
  report.degenerate_columns = static_cast<std::size_t>(std::count(pv.degenerate.begin(), pv.degenerate.end(), true));
  report.stage1 = pvalue_filter(pv.p, config.alpha, config.stage1_size);
  for (auto id : report.stage1) report.stage1_p.push_back(pv.p[id]);
  if (report.stage1.size() < config.stage3_size) report.partial = true;
  if (report.stage1.empty()) return report;

  const FeatureMatrix s1 = sub.select_columns(report.stage1);
  const std::size_t k2 = std::min(config.stage2_size, report.stage1.size());
  const auto ortho = gram_schmidt_fdr_select(s1, a, b, k2, config.fdr);
  for (std::size_t i = 0; i < ortho.ids.size(); ++i) {
    report.stage2.push_back(report.stage1[ortho.ids[i]]);
    report.stage2_fdr.push_back(ortho.scores[i]);
  }
  report.stage2_shortfall = ortho.shortfall;
  if (report.stage2.size() < config.stage3_size) report.partial = true;
  if (report.stage2.empty()) return report;

  const FeatureMatrix s2 = sub.select_columns(report.stage2);
  const SvmSubsetEvaluator evaluator(s2, a, b, config);
  std::vector<std::size_t> local(report.stage2.size());
  for (std::size_t i = 0; i < local.size(); ++i) local[i] = i;
  const std::size_t target = std::min(config.stage3_size, report.stage2.size());
  const auto result = plus_r_take_away_l(
      local, target, config.search,
      [&evaluator](std::span<const std::size_t> cols) { return evaluator(cols); });

  for (auto i : result.ids) report.stage3.push_back(report.stage2[i]);
  std::sort(report.stage3.begin(), report.stage3.end());
  report.stage3_ccr = result.ccr;
  report.trace = result.trace;
  for (auto& step : report.trace) {
    if (step.action != SearchStep::Action::start) step.feature = report.stage2[step.feature];
  }
  report.failures = result.failures;
  return report;
}

}  // namespace famfeat
