#include "famfeat/classify/multiclass.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "famfeat/error.hpp"
#include "famfeat/parallel.hpp"

namespace famfeat {

MulticlassModel train_one_vs_one(const Eigen::MatrixXd& x, std::span<const int> y, double sigma,
                                 double C, const SvmOptions& options) {
  if (y.size() != static_cast<std::size_t>(x.rows())) {
    throw ParameterError("label count does not match row count");
  }
  const std::set<int> distinct(y.begin(), y.end());
  MulticlassModel model;
  model.classes.assign(distinct.begin(), distinct.end());
  if (model.classes.size() < 2) throw ParameterError("one-vs-one needs at least 2 classes");
  for (int c : model.classes) {
    if (std::count(y.begin(), y.end(), c) < 2) {
      throw ParameterError(fmt::format("class {} has fewer than 2 rows", c));
    }
  }

  std::vector<std::pair<int, int>> pairs;
  for (std::size_t a = 0; a < model.classes.size(); ++a)
    for (std::size_t b = a + 1; b < model.classes.size(); ++b)
      pairs.emplace_back(model.classes[a], model.classes[b]);

  model.machines.resize(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t p) {
    const auto [ca, cb] = pairs[p];
    std::vector<Eigen::Index> rows;
    std::vector<int> labels;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] == ca || y[i] == cb) {
        rows.push_back(static_cast<Eigen::Index>(i));
        labels.push_back(y[i] == ca ? 1 : -1);
      }
    }
    Eigen::MatrixXd sub(static_cast<Eigen::Index>(rows.size()), x.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) sub.row(static_cast<Eigen::Index>(r)) = x.row(rows[r]);
    SvmModel m = train_svm(sub, labels, sigma, C, options);
    m.class_pair = {ca, cb};
    model.machines[p] = std::move(m);
  });
  return model;
}

VoteResult vote_one_vs_one(const MulticlassModel& model, std::span<const double> x) {
  const std::size_t k = model.classes.size();
  VoteResult out;
  out.votes.assign(k, 0);
  out.decision_sum.assign(k, 0.0);
  auto index_of = [&](int label) {
    return static_cast<std::size_t>(std::find(model.classes.begin(), model.classes.end(), label) -
                                    model.classes.begin());
  };
  for (const auto& m : model.machines) {
    const auto p = predict(m, x);
    const std::size_t winner = index_of(p.label > 0 ? m.class_pair.first : m.class_pair.second);
    out.votes[winner] += 1;
    out.decision_sum[winner] += std::abs(p.decision);
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < k; ++c) {
    if (out.votes[c] > out.votes[best] ||
        (out.votes[c] == out.votes[best] && out.decision_sum[c] > out.decision_sum[best])) {
      best = c;
    }
  }
  out.label = model.classes[best];
  return out;
}

int predict_one_vs_one(const MulticlassModel& model, std::span<const double> x) {
  return vote_one_vs_one(model, x).label;
}

}  // namespace famfeat
