#include "famfeat/selection/fisher.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "famfeat/error.hpp"

namespace famfeat {
namespace {

constexpr double kDependentRms = 1e-10;

struct ClassStats {
  double mean = 0.0, var = 0.0;
};

ClassStats class_stats(std::span<const double> x, std::span<const int> cls, int which) {
  ClassStats s;
  double n = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (cls[i] == which) {
      s.mean += x[i];
      n += 1.0;
    }
  }
  s.mean /= n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (cls[i] == which) s.var += (x[i] - s.mean) * (x[i] - s.mean);
  }
  s.var /= n;
  return s;
}

double fdr_of(std::span<const double> x, std::span<const int> cls, FdrDenominator mode) {
  const auto s0 = class_stats(x, cls, 0);
  const auto s1 = class_stats(x, cls, 1);
  return fisher_discriminant_ratio(s0.mean, s1.mean, s0.var, s1.var, mode);
}

}  // namespace

double fisher_discriminant_ratio(double m1, double m2, double var1, double var2, FdrDenominator mode) {
  const double num = (m1 - m2) * (m1 - m2);
  const double s = var1 + var2;
  const double den = mode == FdrDenominator::squared ? s * s : s;
  if (!(den > 0.0)) return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return num / den;
}

double fisher_discriminant_ratio(std::span<const double> col, std::span<const Familiarity> labels,
                                 Familiarity a, Familiarity b, FdrDenominator mode) {
  if (col.size() != labels.size()) throw ParameterError("column and labels differ in length");
  std::vector<double> x;
  std::vector<int> cls;
  std::size_t na = 0, nb = 0;
  for (std::size_t i = 0; i < col.size(); ++i) {
    if (labels[i] == a) {
      x.push_back(col[i]);
      cls.push_back(0);
      ++na;
    } else if (labels[i] == b) {
      x.push_back(col[i]);
      cls.push_back(1);
      ++nb;
    }
  }
  if (na < 2 || nb < 2) throw ParameterError("FDR needs at least 2 rows per class");
  return fdr_of(x, cls, mode);
}

OrthogonalSelection gram_schmidt_fdr_select(const FeatureMatrix& fm, Familiarity a, Familiarity b,
                                            std::size_t k, FdrDenominator mode) {
  const FeatureMatrix sub = fm.two_class(a, b);
  const std::size_t n = sub.rows();
  std::vector<int> cls(n);
  std::size_t na = 0;
  for (std::size_t i = 0; i < n; ++i) {
    cls[i] = sub.labels[i] == a ? 0 : 1;
    na += cls[i] == 0;
  }
  if (na < 2 || n - na < 2) throw ParameterError("orthogonal selection needs at least 2 rows per class");
  if (k > sub.cols()) {
    throw ParameterError(fmt::format("cannot select {} of {} columns", k, sub.cols()));
  }

  const double dn = static_cast<double>(n);
  auto rms = [&](const Eigen::VectorXd& v) { return std::sqrt(v.squaredNorm() / dn); };

  // Residuals start as z-scored columns; constant columns are dependent from the start.
  Eigen::MatrixXd residual(static_cast<Eigen::Index>(n), sub.values.cols());
  std::vector<bool> alive(sub.cols(), true);
  for (Eigen::Index j = 0; j < sub.values.cols(); ++j) {
    const Eigen::VectorXd centered = sub.values.col(j).array() - sub.values.col(j).mean();
    const double sd = rms(centered);
    const double scale = std::max(1.0, sub.values.col(j).cwiseAbs().maxCoeff());
    if (!(sd > kDependentRms * scale)) {
      alive[static_cast<std::size_t>(j)] = false;
      residual.col(j).setZero();
    } else {
      residual.col(j) = centered / sd;
    }
  }

  OrthogonalSelection out;
  std::vector<double> buffer(n);
  while (out.ids.size() < k) {
    std::size_t best = sub.cols();
    double best_score = -1.0;
    for (std::size_t j = 0; j < sub.cols(); ++j) {
      if (!alive[j]) continue;
      const auto col = residual.col(static_cast<Eigen::Index>(j));
      const double r = rms(col);
      if (r < kDependentRms) {
        alive[j] = false;
        continue;
      }
      for (std::size_t i = 0; i < n; ++i) buffer[i] = col(static_cast<Eigen::Index>(i)) / r;
      const double score = fdr_of(buffer, cls, mode);
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    if (best == sub.cols()) {
      out.shortfall = true;
      break;
    }

    out.ids.push_back(best);
    out.scores.push_back(best_score);
    alive[best] = false;
    const Eigen::VectorXd q = residual.col(static_cast<Eigen::Index>(best)).normalized();
    for (std::size_t j = 0; j < sub.cols(); ++j) {
      if (!alive[j]) continue;
      auto col = residual.col(static_cast<Eigen::Index>(j));
      col -= q.dot(col) * q;
    }
  }
  return out;
}

}  // namespace famfeat
