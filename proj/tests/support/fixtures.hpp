#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "famfeat/classify/svm.hpp"
#include "famfeat/preprocess/recording.hpp"
#include "famfeat/selection/feature_matrix.hpp"

namespace famfeat::testing {

std::vector<double> sine(double f, double fs, std::size_t n, double amp = 1.0, double phase = 0.0);
std::vector<double> gaussian_noise(std::size_t n, std::mt19937_64& rng, double sd = 1.0);
std::vector<double> column(const Eigen::MatrixXd& m, Eigen::Index c);

/// Epoch from per-channel signals; channel names default to ch0, ch1, ...
Epoch make_epoch(const std::vector<std::vector<double>>& channels, double fs,
                 std::vector<std::string> names = {});
Recording make_recording(const std::vector<std::vector<double>>& channels, double fs,
                         std::vector<std::string> names = {});

/// Sparse train of Gaussian bumps at Poisson times.
std::vector<double> blink_train(std::size_t n, double fs, double rate_hz, double width_s,
                                std::mt19937_64& rng);

/// n rows, `cols` columns of N(0, 1) noise; column `informative` gets class
/// means +1 (unfamiliar) and -1 (familiar).
FeatureMatrix informative_matrix(std::uint64_t seed, std::size_t n = 200, std::size_t cols = 100,
                                 std::size_t informative = 37);

/// Five columns: `a` and `b` carry an XOR pattern (label = sign(xa * xb),
/// |x| drawn from [0.5, 1.5]) and the rest are uniform noise on [-1.5, 1.5].
FeatureMatrix xor_matrix(std::uint64_t seed, std::size_t n = 200, std::size_t a = 1, std::size_t b = 3);

struct Labelled {
  Eigen::MatrixXd x;
  std::vector<int> y;
};
/// Gaussian blobs at +-(3, 3) with unit variance, labels +1 / -1.
Labelled blobs(std::uint64_t seed, std::size_t n = 200);
/// The four XOR corners (+-1, +-1), label = sign(x0 * x1).
Labelled xor_corners();

/// Empty string when the model satisfies the dual constraints, else a reason.
std::string dual_feasibility_problem(const SvmModel& model, double tol = 1e-6);

}  // namespace famfeat::testing
