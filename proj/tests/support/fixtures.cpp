#include "fixtures.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

namespace famfeat::testing {

std::vector<double> sine(double f, double fs, std::size_t n, double amp, double phase) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = amp * std::sin(2.0 * std::numbers::pi * f * static_cast<double>(i) / fs + phase);
  }
  return x;
}

std::vector<double> gaussian_noise(std::size_t n, std::mt19937_64& rng, double sd) {
  std::normal_distribution<double> dist(0.0, sd);
  std::vector<double> x(n);
  for (auto& v : x) v = dist(rng);
  return x;
}

std::vector<double> column(const Eigen::MatrixXd& m, Eigen::Index c) {
  return {m.col(c).data(), m.col(c).data() + m.rows()};
}

namespace {

Eigen::MatrixXd stack(const std::vector<std::vector<double>>& channels) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(channels.front().size()),
                    static_cast<Eigen::Index>(channels.size()));
  for (std::size_t c = 0; c < channels.size(); ++c) {
    for (std::size_t i = 0; i < channels[c].size(); ++i) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = channels[c][i];
    }
  }
  return m;
}

std::vector<std::string> default_names(std::size_t n, std::vector<std::string> names) {
  if (!names.empty()) return names;
  for (std::size_t c = 0; c < n; ++c) names.push_back(fmt::format("ch{}", c));
  return names;
}

}  // namespace

Epoch make_epoch(const std::vector<std::vector<double>>& channels, double fs,
                 std::vector<std::string> names) {
  Epoch ep;
  ep.channels = default_names(channels.size(), std::move(names));
  ep.samples = stack(channels);
  ep.fs = fs;
  return ep;
}

Recording make_recording(const std::vector<std::vector<double>>& channels, double fs,
                         std::vector<std::string> names) {
  Recording rec;
  rec.channels = default_names(channels.size(), std::move(names));
  rec.samples = stack(channels);
  rec.fs = fs;
  return rec;
}

std::vector<double> blink_train(std::size_t n, double fs, double rate_hz, double width_s,
                                std::mt19937_64& rng) {
  std::vector<double> x(n, 0.0);
  std::exponential_distribution<double> gap(rate_hz);
  const double sd = width_s * fs;
  for (double t = gap(rng) * fs; t < static_cast<double>(n); t += gap(rng) * fs) {
    const auto lo = static_cast<std::ptrdiff_t>(t - 5 * sd);
    const auto hi = static_cast<std::ptrdiff_t>(t + 5 * sd);
    for (auto i = std::max<std::ptrdiff_t>(0, lo); i < std::min<std::ptrdiff_t>(hi, static_cast<std::ptrdiff_t>(n)); ++i) {
      const double u = (static_cast<double>(i) - t) / sd;
      x[static_cast<std::size_t>(i)] += std::exp(-0.5 * u * u);
    }
  }
  return x;
}

FeatureMatrix informative_matrix(std::uint64_t seed, std::size_t n, std::size_t cols, std::size_t informative) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  FeatureMatrix fm;
  fm.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < n; ++i) {
    const bool first = i % 2 == 0;
    fm.labels.push_back(first ? Familiarity::unfamiliar : Familiarity::familiar);
    for (std::size_t j = 0; j < cols; ++j) {
      const double shift = j == informative ? (first ? 1.0 : -1.0) : 0.0;
      fm.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = shift + z(rng);
    }
  }
  for (std::size_t j = 0; j < cols; ++j) fm.names.push_back(fmt::format("f{:03}", j));
  return fm;
}

FeatureMatrix xor_matrix(std::uint64_t seed, std::size_t n, std::size_t a, std::size_t b) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(0.5, 1.5), noise(-1.5, 1.5);
  std::bernoulli_distribution coin(0.5);
  FeatureMatrix fm;
  fm.values.resize(static_cast<Eigen::Index>(n), 5);
  for (std::size_t i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < 5; ++j) fm.values(static_cast<Eigen::Index>(i), j) = noise(rng);
    const double xa = (coin(rng) ? 1.0 : -1.0) * mag(rng);
    const double xb = (coin(rng) ? 1.0 : -1.0) * mag(rng);
    fm.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) = xa;
    fm.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b)) = xb;
    fm.labels.push_back(xa * xb > 0 ? Familiarity::unfamiliar : Familiarity::familiar);
  }
  for (int j = 0; j < 5; ++j) fm.names.push_back(fmt::format("x{}", j));
  return fm;
}

Labelled blobs(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  Labelled out;
  out.x.resize(static_cast<Eigen::Index>(n), 2);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = i % 2 == 0 ? 1 : -1;
    out.y.push_back(label);
    out.x(static_cast<Eigen::Index>(i), 0) = 3.0 * label + z(rng);
    out.x(static_cast<Eigen::Index>(i), 1) = 3.0 * label + z(rng);
  }
  return out;
}

Labelled xor_corners() {
  Labelled out;
  out.x.resize(4, 2);
  out.x << 1, 1, -1, -1, 1, -1, -1, 1;
  out.y = {1, 1, -1, -1};
  return out;
}

std::string dual_feasibility_problem(const SvmModel& model, double tol) {
  double sum = 0.0;
  for (std::size_t i = 0; i < model.dual_coefficients.size(); ++i) {
    const double c = model.dual_coefficients[i];
    if (!std::isfinite(c) || std::abs(c) > model.C * (1.0 + 1e-12)) {
      return fmt::format("coefficient {} = {} outside [-C, C] with C = {}", i, c, model.C);
    }
    sum += c;
  }
  if (std::abs(sum) > tol) return fmt::format("signed coefficients sum to {}", sum);
  if (!model.support_vectors.allFinite()) return "non-finite support vector";
  return {};
}

}  // namespace famfeat::testing
