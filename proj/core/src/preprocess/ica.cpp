#include "famfeat/preprocess/ica.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "famfeat/error.hpp"
#include "famfeat/stats.hpp"

namespace famfeat {
namespace {

// (W W^T)^{-1/2} W
Eigen::MatrixXd symmetric_decorrelate(const Eigen::MatrixXd& w) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w * w.transpose());
  const Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose() * w;
}

Eigen::MatrixXd eeg_block(const Recording& rec, const std::vector<std::size_t>& channels) {
  Eigen::MatrixXd x(rec.samples.rows(), static_cast<Eigen::Index>(channels.size()));
  for (std::size_t k = 0; k < channels.size(); ++k) {
    x.col(static_cast<Eigen::Index>(k)) = rec.samples.col(static_cast<Eigen::Index>(channels[k]));
  }
  return x;
}

}  // namespace

IcaDecomposition ica_decompose(const Recording& rec, std::size_t n_components,
                               const IcaOptions& options) {
  rec.validate();
  const auto channels = rec.eeg_channels();
  const std::size_t n_ch = channels.size();
  const auto n = static_cast<Eigen::Index>(rec.sample_count());
  if (n_components == 0 || n_components > n_ch) {
    throw ParameterError(fmt::format("n_components must be in [1, {}], got {}", n_ch, n_components));
  }
  if (rec.sample_count() < 10 * n_ch) {
    throw ParameterError(fmt::format("ICA needs at least {} samples for {} channels, got {}",
                                     10 * n_ch, n_ch, rec.sample_count()));
  }

  const Eigen::MatrixXd x = eeg_block(rec, channels);
  const Eigen::RowVectorXd mu = x.colwise().mean();
  const Eigen::MatrixXd xc = x.rowwise() - mu;
  const Eigen::MatrixXd cov = (xc.transpose() * xc) / static_cast<double>(n);

  // Eigenvalues ascend; keep the top n_components.
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> pca(cov);
  const auto k = static_cast<Eigen::Index>(n_components);
  const Eigen::VectorXd lambda = pca.eigenvalues().tail(k).reverse();
  const Eigen::MatrixXd basis = pca.eigenvectors().rightCols(k).rowwise().reverse();
  const double largest = pca.eigenvalues().maxCoeff();
  if (!(largest > 0.0) || lambda.minCoeff() <= 1e-10 * largest) {
    throw ParameterError(fmt::format(
        "channel covariance is rank deficient for {} components (smallest retained eigenvalue "
        "{:.3g} vs largest {:.3g})",
        n_components, lambda.minCoeff(), largest));
  }

  const Eigen::MatrixXd whitening = lambda.cwiseSqrt().cwiseInverse().asDiagonal() * basis.transpose();
  const Eigen::MatrixXd dewhitening = basis * lambda.cwiseSqrt().asDiagonal();
  const Eigen::MatrixXd z = xc * whitening.transpose();  // n x k, identity covariance

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd w(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) w(i, j) = normal(rng);
  w = symmetric_decorrelate(w);

  const double inv_n = 1.0 / static_cast<double>(n);
  std::size_t iter = 0;
  bool converged = false;
  double delta = 0.0;
  while (iter < options.max_iterations) {
    ++iter;
    const Eigen::MatrixXd y = z * w.transpose();
    const Eigen::MatrixXd g = y.array().tanh().matrix();
    const Eigen::VectorXd g_prime_mean = (1.0 - g.array().square()).colwise().mean().transpose();
    Eigen::MatrixXd w_new = (g.transpose() * z) * inv_n - g_prime_mean.asDiagonal() * w;
    w_new = symmetric_decorrelate(w_new);

    delta = ((w_new * w.transpose()).diagonal().cwiseAbs().array() - 1.0).abs().maxCoeff();
    w = std::move(w_new);
    if (delta < options.tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw ConvergenceError(fmt::format("FastICA did not converge (last update delta {:.3g})", delta), iter);
  }

  Eigen::MatrixXd unmixing = w * whitening;    // k x channels
  Eigen::MatrixXd mixing = dewhitening * w.transpose();  // channels x k

  // Canonical order and sign.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return mixing.col(a).squaredNorm() > mixing.col(b).squaredNorm();
  });
  IcaDecomposition dec;
  dec.channels = channels;
  dec.iterations = iter;
  dec.unmixing.resize(k, static_cast<Eigen::Index>(n_ch));
  dec.mixing.resize(static_cast<Eigen::Index>(n_ch), k);
  for (Eigen::Index c = 0; c < k; ++c) {
    const Eigen::Index src = order[static_cast<std::size_t>(c)];
    Eigen::Index arg = 0;
    mixing.col(src).cwiseAbs().maxCoeff(&arg);
    const double sign = mixing(arg, src) < 0.0 ? -1.0 : 1.0;
    dec.mixing.col(c) = sign * mixing.col(src);
    dec.unmixing.row(c) = sign * unmixing.row(src);
  }
  dec.sources = x * dec.unmixing.transpose();
  return dec;
}

Recording remove_components(const Recording& rec, const IcaDecomposition& dec,
                            const std::set<std::size_t>& which) {
  for (auto c : which) {
    if (c >= dec.component_count()) {
      throw ParameterError(fmt::format("component index {} out of range ({} components)", c,
                                       dec.component_count()));
    }
  }
  if (static_cast<std::size_t>(dec.sources.rows()) != rec.sample_count()) {
    throw ParameterError("decomposition does not match recording length");
  }
  for (auto ch : dec.channels) {
    if (ch >= rec.channel_count()) throw ParameterError("decomposition does not match recording channels");
  }

  Recording out = rec;
  out.eog_channel = rec.eog_channel;
  if (which.empty()) return out;

  Eigen::MatrixXd artifact = Eigen::MatrixXd::Zero(rec.samples.rows(), static_cast<Eigen::Index>(dec.channels.size()));
  for (auto c : which) {
    const auto ci = static_cast<Eigen::Index>(c);
    artifact.noalias() += dec.sources.col(ci) * dec.mixing.col(ci).transpose();
  }
  for (std::size_t k = 0; k < dec.channels.size(); ++k) {
    out.samples.col(static_cast<Eigen::Index>(dec.channels[k])) -= artifact.col(static_cast<Eigen::Index>(k));
  }
  return out;
}

std::set<std::size_t> auto_flag_eog(const IcaDecomposition& dec, std::span<const double> eog,
                                    double threshold) {
  if (eog.size() != static_cast<std::size_t>(dec.sources.rows())) {
    throw ParameterError(fmt::format("EOG length {} does not match source length {}", eog.size(),
                                     dec.sources.rows()));
  }
  std::set<std::size_t> flagged;
  for (Eigen::Index c = 0; c < dec.sources.cols(); ++c) {
    const auto col = dec.sources.col(c);
    double r = 0.0;
    try {
      r = pearson(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())), eog);
    } catch (const UndefinedError&) {
      continue;
    }
    if (std::abs(r) > threshold) flagged.insert(static_cast<std::size_t>(c));
  }
  return flagged;
}

}  // namespace famfeat
