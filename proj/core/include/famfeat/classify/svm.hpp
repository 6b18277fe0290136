#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace famfeat {

/// exp(-|u - v|^2 / (2 sigma^2))
double gaussian_kernel(std::span<const double> u, std::span<const double> v, double sigma);

struct SvmOptions {
  double tolerance = 1e-3;        // KKT gap m(alpha) - M(alpha)
  std::size_t max_iterations = 0; // 0: max(10^6, 1000 n)
};

/// Binary soft-margin SVM with a Gaussian kernel. Label +1 maps to
/// class_pair.first, -1 to class_pair.second.
struct SvmModel {
  Eigen::MatrixXd support_vectors;        // one row per support vector
  std::vector<double> dual_coefficients;  // alpha_i * y_i
  double bias = 0.0;
  double sigma = 1.0;
  double C = 1.0;
  std::pair<int, int> class_pair{1, -1};
  std::size_t iterations = 0;

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(support_vectors.cols()); }
};

/// Solves the dual by sequential pairwise optimization with maximal-violating-
/// pair working-set selection. Rows are processed in a canonical
/// (lexicographic) order, so the model does not depend on row order.
/// Throws ConvergenceError with the KKT-violation count on iteration overrun.
SvmModel train_svm(const Eigen::MatrixXd& x, std::span<const int> y, double sigma, double C,
                   const SvmOptions& options = {});

struct DualSolution {
  std::vector<double> alpha;  // unsigned multipliers in [0, C]
  double bias = 0.0;          // decision = sum alpha_i y_i K(x_i, x) + bias
  std::size_t iterations = 0;
};

/// The dual solver behind train_svm, on a precomputed kernel matrix and +-1
/// labels. Lets callers reuse one Gram matrix across folds.
DualSolution solve_svm_dual(const Eigen::MatrixXd& kernel, std::span<const double> y, double C,
                            const SvmOptions& options = {});

struct SvmPrediction {
  int label = 1;  // +1 or -1; a decision value of exactly 0 maps to +1
  double decision = 0.0;
};

SvmPrediction predict(const SvmModel& model, std::span<const double> x);

}  // namespace famfeat
