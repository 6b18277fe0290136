#include "famfeat/pipeline/nested.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <fmt/format.h>

#include "famfeat/classify/multiclass.hpp"
#include "famfeat/error.hpp"
#include "famfeat/synth/synth.hpp"

namespace famfeat {
namespace {

std::vector<int> class_ids(const std::vector<Familiarity>& labels) {
  std::vector<int> y;
  for (auto l : labels) y.push_back(static_cast<int>(l));
  return y;
}

std::vector<std::string> class_names(std::span<const int> ids) {
  std::vector<std::string> out;
  for (int c : ids) out.emplace_back(to_string(static_cast<Familiarity>(c)));
  return out;
}

SvmOptions svm_options(const PipelineConfig& config) {
  SvmOptions o;
  o.tolerance = config.svm.tolerance;
  return o;
}

}  // namespace

EvalReport evaluate_columns(const FeatureMatrix& fm, const PipelineConfig& config) {
  fm.validate();
  const auto y = class_ids(fm.labels);
  if (fm.classes().size() < 2) throw ParameterError("evaluation needs at least two classes");
  if (fm.cols() == 0) throw ParameterError("evaluation needs at least one feature");

  EvalReport r;
  r.features = fm.names;
  r.folds = config.cv_folds;
  r.seed = config.seed;
  const auto opts = svm_options(config);
  if (config.svm.sigma_search) {
    const auto grid = config.svm.grid();
    const auto ss = sigma_search(fm.values, y, config.svm.C, grid, config.svm.refine_steps, config.cv_folds,
                                 config.seed, opts);
    r.sigma = ss.sigma;
    r.sigma_table = ss.table;
  } else {
    r.sigma = config.svm.default_sigma;
  }
  r.result = cross_validated_ccr(fm.values, y, r.sigma, config.svm.C, config.cv_folds, config.seed, opts);
  r.classes = class_names(r.result.classes);
  return r;
}

NestedEvaluation nested_evaluate(const FeatureMatrix& fm_all, Familiarity a, Familiarity b,
                                 const PipelineConfig& config) {
  config.validate();
  const FeatureMatrix fm = fm_all.two_class(a, b);
  fm.validate();
  const auto y = class_ids(fm.labels);
  const std::size_t k = config.cv_folds;
  const auto outer = stratified_folds(y, k, derive_seed(config.seed, 0x0B7E2));
  const auto opts = svm_options(config);

  NestedEvaluation out;
  EvalReport& r = out.report;
  r.protocol = "nested";
  r.folds = k;
  r.seed = config.seed;
  EvalResult& res = r.result;
  res.classes = {std::min(static_cast<int>(a), static_cast<int>(b)), std::max(static_cast<int>(a), static_cast<int>(b))};
  res.confusion.assign(2, std::vector<std::size_t>(2, 0));
  auto index_of = [&](int label) { return label == res.classes[0] ? std::size_t{0} : std::size_t{1}; };

  std::size_t correct_total = 0;
  double sigma_sum = 0.0;
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<std::size_t> train, test;
    for (std::size_t i = 0; i < y.size(); ++i) (outer[i] == f ? test : train).push_back(i);
    const FeatureMatrix tr = fm.select_rows(train);
    const auto sel = run_selection_cascade(tr, a, b, config.cascade());

    NestedFold fold;
    fold.partial = sel.partial;
    std::vector<int> predicted(test.size());
    if (sel.stage3.empty()) {
      // Nothing survived selection: fall back to the training majority.
      const auto na = tr.rows_of(a).size(), nb = tr.rows_of(b).size();
      const int majority = na >= nb ? static_cast<int>(a) : static_cast<int>(b);
      std::fill(predicted.begin(), predicted.end(), majority);
    } else {
      const FeatureMatrix trs = tr.select_columns(sel.stage3);
      fold.features = trs.names;
      const auto ytr = class_ids(trs.labels);
      fold.sigma = config.svm.default_sigma;
      if (config.svm.sigma_search) {
        const auto grid = config.svm.grid();
        fold.sigma = sigma_search(trs.values, ytr, config.svm.C, grid, config.svm.refine_steps, k, config.seed, opts).sigma;
      }
      const auto scaler = Standardizer::fit(trs.values);
      const auto model = train_one_vs_one(scaler.apply(trs.values), ytr, fold.sigma, config.svm.C, opts);
      std::vector<double> row(sel.stage3.size());
      for (std::size_t t = 0; t < test.size(); ++t) {
        for (std::size_t j = 0; j < sel.stage3.size(); ++j) {
          row[j] = fm.values(static_cast<Eigen::Index>(test[t]), static_cast<Eigen::Index>(sel.stage3[j]));
        }
        predicted[t] = predict_one_vs_one(model, scaler.apply(row));
      }
    }
    std::size_t correct = 0;
    for (std::size_t t = 0; t < test.size(); ++t) {
      const int truth = y[test[t]];
      res.confusion[index_of(truth)][index_of(predicted[t])] += 1;
      correct += predicted[t] == truth;
    }
    correct_total += correct;
    res.per_fold.push_back(100.0 * static_cast<double>(correct) / static_cast<double>(test.size()));
    sigma_sum += fold.sigma;
    out.folds.push_back(std::move(fold));
  }
  res.ccr = 100.0 * static_cast<double>(correct_total) / static_cast<double>(y.size());
  r.sigma = sigma_sum / static_cast<double>(k);
  r.classes = class_names(res.classes);
  return out;
}

}  // namespace famfeat
