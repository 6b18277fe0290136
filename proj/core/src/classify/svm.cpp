#include "famfeat/classify/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "famfeat/error.hpp"

namespace famfeat {
namespace {

constexpr double kTau = 1e-12;

std::span<const double> row_span(const Eigen::MatrixXd& rows, Eigen::Index i,
                                 std::vector<double>& scratch) {
  scratch.resize(static_cast<std::size_t>(rows.cols()));
  for (Eigen::Index j = 0; j < rows.cols(); ++j) scratch[static_cast<std::size_t>(j)] = rows(i, j);
  return scratch;
}

}  // namespace

double gaussian_kernel(std::span<const double> u, std::span<const double> v, double sigma) {
  if (u.size() != v.size()) throw ParameterError("kernel arguments differ in dimension");
  double d2 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) d2 += (u[i] - v[i]) * (u[i] - v[i]);
  return std::exp(-d2 / (2.0 * sigma * sigma));
}

DualSolution solve_svm_dual(const Eigen::MatrixXd& k, std::span<const double> y, double C,
                            const SvmOptions& options) {
  const auto n = y.size();
  if (static_cast<std::size_t>(k.rows()) != n || static_cast<std::size_t>(k.cols()) != n) {
    throw ParameterError("kernel matrix does not match label count");
  }
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);
  const double eps = options.tolerance;
  const std::size_t max_iter =
      options.max_iterations > 0 ? options.max_iterations : std::max<std::size_t>(1000000, 1000 * n);

  auto is_up = [&](std::size_t t) { return (y[t] > 0 && alpha[t] < C) || (y[t] < 0 && alpha[t] > 0); };
  auto is_low = [&](std::size_t t) { return (y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < C); };

  std::size_t iter = 0;
  for (;; ++iter) {
    double m = -std::numeric_limits<double>::infinity();
    double big_m = std::numeric_limits<double>::infinity();
    std::size_t i = n, j = n;
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -y[t] * grad[t];
      if (is_up(t) && v > m) {
        m = v;
        i = t;
      }
      if (is_low(t) && v < big_m) {
        big_m = v;
        j = t;
      }
    }
    if (i == n || j == n || m - big_m < eps) break;

    if (iter >= max_iter) {
      std::size_t violations = 0;
      for (std::size_t t = 0; t < n; ++t) {
        const double v = -y[t] * grad[t];
        if ((is_up(t) && v > big_m + eps) || (is_low(t) && v < m - eps)) ++violations;
      }
      throw ConvergenceError("SVM dual did not reach KKT tolerance", iter, violations);
    }

    const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
    const double old_ai = alpha[i], old_aj = alpha[j];
    double quad = k(ii, ii) + k(jj, jj) - 2.0 * k(ii, jj);
    if (quad <= 0.0) quad = kTau;

    if (y[i] != y[j]) {
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0) {
        if (alpha[j] < 0) {
          alpha[j] = 0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = -diff;
      }
      if (diff > 0) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = C - diff;
        }
      } else if (alpha[j] > C) {
        alpha[j] = C;
        alpha[i] = C + diff;
      }
    } else {
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > C) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = sum - C;
        }
      } else if (alpha[j] < 0) {
        alpha[j] = 0;
        alpha[i] = sum;
      }
      if (sum > C) {
        if (alpha[j] > C) {
          alpha[j] = C;
          alpha[i] = sum - C;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = sum;
      }
    }

    const double dai = alpha[i] - old_ai, daj = alpha[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t) {
      const auto tt = static_cast<Eigen::Index>(t);
      grad[t] += y[t] * (y[i] * k(tt, ii) * dai + y[j] * k(tt, jj) * daj);
    }
  }

  // rho: mean of y*grad over free vectors, else midpoint of the feasible range.
  double sum_free = 0.0, n_free = 0.0;
  double ub = std::numeric_limits<double>::infinity(), lb = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] >= C) {
      if (y[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (alpha[t] <= 0) {
      if (y[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      sum_free += yg;
      n_free += 1.0;
    }
  }
  const double rho = n_free > 0 ? sum_free / n_free : (ub + lb) / 2.0;
  return {std::move(alpha), -rho, iter};

}

SvmModel train_svm(const Eigen::MatrixXd& x_in, std::span<const int> y_in, double sigma, double C,
                   const SvmOptions& options) {
  const auto n = static_cast<std::size_t>(x_in.rows());
  if (!(sigma > 0.0)) throw ParameterError(fmt::format("sigma must be positive, got {}", sigma));
  if (!(C > 0.0)) throw ParameterError(fmt::format("C must be positive, got {}", C));
  if (y_in.size() != n) throw ParameterError("label count does not match row count");
  bool has_pos = false, has_neg = false;
  for (int v : y_in) {
    if (v == 1) {
      has_pos = true;
    } else if (v == -1) {
      has_neg = true;
    } else {
      throw ParameterError(fmt::format("binary labels must be +1 or -1, got {}", v));
    }
  }
  if (!has_pos || !has_neg) throw ParameterError("both labels must be present");
  if (!x_in.allFinite()) throw ParameterError("training data contains non-finite values");

  // Canonical row order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    for (Eigen::Index j = 0; j < x_in.cols(); ++j) {
      const double va = x_in(static_cast<Eigen::Index>(a), j);
      const double vb = x_in(static_cast<Eigen::Index>(b), j);
      if (va != vb) return va < vb;
    }
    return y_in[a] < y_in[b];
  });
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), x_in.cols());
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x.row(static_cast<Eigen::Index>(i)) = x_in.row(static_cast<Eigen::Index>(order[i]));
    y[i] = static_cast<double>(y_in[order[i]]);
  }

  // Full kernel matrix; n is a few hundred at most in this pipeline.
  const double inv = -1.0 / (2.0 * sigma * sigma);
  Eigen::MatrixXd k(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < k.rows(); ++i) {
    k(i, i) = 1.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double d2 = (x.row(i) - x.row(j)).squaredNorm();
      k(i, j) = k(j, i) = std::exp(d2 * inv);
    }
  }

  const auto dual = solve_svm_dual(k, y, C, options);
  const auto& alpha = dual.alpha;

  SvmModel model;
  model.sigma = sigma;
  model.C = C;
  model.bias = dual.bias;
  model.iterations = dual.iterations;
  std::vector<std::size_t> sv;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0) sv.push_back(t);
  }
  model.support_vectors.resize(static_cast<Eigen::Index>(sv.size()), x.cols());
  for (std::size_t s = 0; s < sv.size(); ++s) {
    model.support_vectors.row(static_cast<Eigen::Index>(s)) = x.row(static_cast<Eigen::Index>(sv[s]));
    model.dual_coefficients.push_back(alpha[sv[s]] * y[sv[s]]);
  }
  return model;
}

SvmPrediction predict(const SvmModel& model, std::span<const double> x) {
  if (x.size() != model.dimension()) {
    throw ParameterError(fmt::format("input has dimension {}, model expects {}", x.size(), model.dimension()));
  }
  std::vector<double> scratch;
  double f = model.bias;
  for (Eigen::Index s = 0; s < model.support_vectors.rows(); ++s) {
    f += model.dual_coefficients[static_cast<std::size_t>(s)] *
         gaussian_kernel(row_span(model.support_vectors, s, scratch), x, model.sigma);
  }
  return {f >= 0.0 ? 1 : -1, f};
}

}  // namespace famfeat
