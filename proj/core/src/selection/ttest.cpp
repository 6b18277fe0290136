#include "famfeat/selection/ttest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "famfeat/error.hpp"

namespace famfeat {
namespace {

struct Summary {
  double n = 0.0, mean = 0.0, var = 0.0;  // sample variance (n - 1)
};

Summary summarize(std::span<const double> x) {
  Summary s;
  s.n = static_cast<double>(x.size());
  for (double v : x) s.mean += v;
  s.mean /= s.n;
  for (double v : x) s.var += (v - s.mean) * (v - s.mean);
  s.var /= (s.n - 1.0);
  return s;
}

std::vector<double> gather(std::span<const double> col, const std::vector<std::size_t>& rows) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (auto r : rows) out.push_back(col[r]);
  return out;
}

}  // namespace

double t_test_pvalue(std::span<const double> xa, std::span<const double> xb, TTestKind kind,
                     bool* degenerate) {
  if (xa.size() < 2 || xb.size() < 2) throw ParameterError("t-test needs at least 2 rows per class");
  const Summary a = summarize(xa);
  const Summary b = summarize(xb);
  if (degenerate) *degenerate = false;
  if (a.var <= 0.0 && b.var <= 0.0) {
    if (degenerate) *degenerate = true;
    return 1.0;
  }

  double t = 0.0, df = 0.0;
  if (kind == TTestKind::welch) {
    const double va = a.var / a.n, vb = b.var / b.n;
    t = (a.mean - b.mean) / std::sqrt(va + vb);
    df = (va + vb) * (va + vb) / (va * va / (a.n - 1.0) + vb * vb / (b.n - 1.0));
  } else {
    df = a.n + b.n - 2.0;
    const double pooled = ((a.n - 1.0) * a.var + (b.n - 1.0) * b.var) / df;
    t = (a.mean - b.mean) / std::sqrt(pooled * (1.0 / a.n + 1.0 / b.n));
  }
  if (!std::isfinite(t)) return std::numeric_limits<double>::min();

  const boost::math::students_t dist(df);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return std::clamp(p, std::numeric_limits<double>::min(), 1.0);
}

PValues t_test_pvalues(const FeatureMatrix& fm, Familiarity a, Familiarity b, TTestKind kind) {
  const auto rows_a = fm.rows_of(a);
  const auto rows_b = fm.rows_of(b);
  if (rows_a.size() < 2 || rows_b.size() < 2) {
    throw ParameterError(fmt::format("t-test needs >= 2 rows of {} and {} (have {} and {})",
                                     to_string(a), to_string(b), rows_a.size(), rows_b.size()));
  }
  PValues out;
  out.p.resize(fm.cols());
  out.degenerate.resize(fm.cols());
  for (std::size_t j = 0; j < fm.cols(); ++j) {
    bool deg = false;
    out.p[j] = t_test_pvalue(gather(fm.column(j), rows_a), gather(fm.column(j), rows_b), kind, &deg);
    out.degenerate[j] = deg;
  }
  return out;
}

std::vector<std::size_t> pvalue_filter(std::span<const double> pvalues, double alpha, std::size_t cap) {
  if (cap < 1) throw ParameterError("p-value filter cap must be >= 1");
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < pvalues.size(); ++j) {
    if (pvalues[j] < alpha) keep.push_back(j);
  }
  std::stable_sort(keep.begin(), keep.end(),
                   [&](std::size_t x, std::size_t y) { return pvalues[x] < pvalues[y]; });
  if (keep.size() > cap) keep.resize(cap);
  return keep;
}

}  // namespace famfeat
