#include "famfeat/features/moments.hpp"

#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "famfeat/error.hpp"
#include "famfeat/stats.hpp"

namespace famfeat {
namespace {

std::vector<double> scaled_diff(std::span<const double> x, double fs) {
  std::vector<double> d(x.size() - 1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) d[i] = (x[i + 1] - x[i]) * fs;
  return d;
}

}  // namespace

double central_moment(std::span<const double> x, int k) {
  if (x.empty()) throw ParameterError("central moment of an empty signal");
  if (k < 1) throw ParameterError(fmt::format("moment order must be >= 1, got {}", k));
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += std::pow(v - m, k);
  return s / static_cast<double>(x.size());
}

double hjorth_mobility(std::span<const double> x, double fs) {
  if (x.size() < 2) throw ParameterError("mobility needs at least 2 samples");
  if (!(fs > 0.0)) throw ParameterError("sampling rate must be positive");
  const double vx = variance(x);
  if (vx <= 0.0) throw UndefinedError("mobility of a constant signal");
  const auto d = scaled_diff(x, fs);
  return std::sqrt(variance(d) / vx);
}

StatisticalTimeFeatures statistical_time_features(std::span<const double> x, double fs) {
  if (x.size() < 3) throw ParameterError(fmt::format("need at least 3 samples, got {}", x.size()));
  const double m2 = central_moment(x, 2);
  if (m2 <= 0.0) throw UndefinedError("moments of a constant signal (m2 = 0)");

  StatisticalTimeFeatures f;
  f.skewness = central_moment(x, 3) / (m2 * std::sqrt(m2));
  f.kurtosis = central_moment(x, 4) / (m2 * m2);
  f.activity = m2;
  f.mobility = hjorth_mobility(x, fs);
  const auto d = scaled_diff(x, fs);
  if (variance(d) <= 0.0) throw UndefinedError("complexity of a linear ramp (constant derivative)");
  f.complexity = hjorth_mobility(d, fs) / f.mobility;
  return f;
}

}  // namespace famfeat
