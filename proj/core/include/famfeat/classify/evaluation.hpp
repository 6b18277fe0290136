#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "famfeat/classify/multiclass.hpp"

namespace famfeat {

/// Column-wise z-score fitted on training rows. Zero-spread columns get
/// scale 1 so they map to a constant instead of dividing by zero.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const Eigen::MatrixXd& x);
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
  std::vector<double> apply(std::span<const double> row) const;
};

/// Fold index per row. Each class's rows are shuffled with the seed and dealt
/// round-robin, so every fold holds floor or ceil of n_class / k rows of it.
/// Throws ParameterError when a class has fewer than k rows.
std::vector<std::size_t> stratified_folds(std::span<const int> y, std::size_t k, std::uint64_t seed);

struct EvalResult {
  double ccr = 0.0;                          // percent, 100 * trace / total
  std::vector<double> per_fold;              // percent per held-out fold
  std::vector<int> classes;                  // confusion row/column order
  std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
};

/// Stratified k-fold CV of a standardized one-vs-one Gaussian SVM (a single
/// machine for two classes). Training errors propagate.
EvalResult cross_validated_ccr(const Eigen::MatrixXd& x, std::span<const int> y, double sigma, double C,
                               std::size_t k_folds, std::uint64_t seed, const SvmOptions& options = {});

/// Same, with explicit fold assignment (shared across candidate evaluations).
EvalResult cross_validated_ccr(const Eigen::MatrixXd& x, std::span<const int> y, double sigma, double C,
                               std::span<const std::size_t> folds, std::size_t k_folds,
                               const SvmOptions& options = {});

/// 0.1 * 2^i for i = 0.. while <= 10.
std::vector<double> default_sigma_grid();

struct SigmaSearchResult {
  double sigma = 0.0;
  double ccr = 0.0;
  std::vector<std::pair<double, double>> table;  // (sigma, CV CCR) in evaluation order
  std::vector<std::string> failures;
};

/// Coarse grid, then `refine_steps` rounds around the incumbent with the
/// log-step halved each round. Stays inside [min grid, max grid]; ties keep
/// the smaller sigma.
SigmaSearchResult sigma_search(const Eigen::MatrixXd& x, std::span<const int> y, double C,
                               std::span<const double> coarse_grid, std::size_t refine_steps,
                               std::size_t k_folds, std::uint64_t seed, const SvmOptions& options = {});

}  // namespace famfeat
