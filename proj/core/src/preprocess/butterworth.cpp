#include "famfeat/preprocess/butterworth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include <fmt/format.h>

#include "famfeat/error.hpp"

namespace famfeat {
namespace {

constexpr std::size_t kMaxSections = 16;

// Q of the k-th conjugate pole pair of an order-N Butterworth prototype.
double butterworth_q(int k, int order) {
  const double theta = (2.0 * k + 1.0) * std::numbers::pi / (2.0 * order);
  return 1.0 / (2.0 * std::cos(theta));
}

Biquad lowpass_section(double f0, double fs, double q) {
  const double w0 = 2.0 * std::numbers::pi * f0 / fs;
  const double c = std::cos(w0);
  const double alpha = std::sin(w0) / (2.0 * q);
  const double a0 = 1.0 + alpha;
  Biquad s;
  s.b0 = (1.0 - c) / 2.0 / a0;
  s.b1 = (1.0 - c) / a0;
  s.b2 = s.b0;
  s.a1 = -2.0 * c / a0;
  s.a2 = (1.0 - alpha) / a0;
  return s;
}

Biquad highpass_section(double f0, double fs, double q) {
  const double w0 = 2.0 * std::numbers::pi * f0 / fs;
  const double c = std::cos(w0);
  const double alpha = std::sin(w0) / (2.0 * q);
  const double a0 = 1.0 + alpha;
  Biquad s;
  s.b0 = (1.0 + c) / 2.0 / a0;
  s.b1 = -(1.0 + c) / a0;
  s.b2 = s.b0;
  s.a1 = -2.0 * c / a0;
  s.a2 = (1.0 - alpha) / a0;
  return s;
}

double dc_gain(const Biquad& s) { return (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2); }

}  // namespace

BandpassFilter::BandpassFilter(double lo, double hi, double fs, int order)
    : lo_(lo), hi_(hi), fs_(fs), order_(order) {
  if (!(fs > 0.0)) throw ParameterError(fmt::format("sampling rate must be positive, got {}", fs));
  if (order < 2 || order % 2 != 0 || order > static_cast<int>(kMaxSections)) {
    throw ParameterError(fmt::format("filter order must be even and in [2, {}], got {}", kMaxSections, order));
  }
  if (!(lo > 0.0) || !(lo < hi)) {
    throw ParameterError(fmt::format("invalid band edges ({}, {}) Hz", lo, hi));
  }
  if (!(hi < fs / 2.0)) {
    throw ParameterError(
        fmt::format("upper edge {} Hz is not below Nyquist ({} Hz) for fs = {}", hi, fs / 2.0, fs));
  }
  for (int k = 0; k < order / 2; ++k) sections_.push_back(highpass_section(lo, fs, butterworth_q(k, order)));
  for (int k = 0; k < order / 2; ++k) sections_.push_back(lowpass_section(hi, fs, butterworth_q(k, order)));
}

double BandpassFilter::magnitude(double f) const {
  const std::complex<double> z1 = std::polar(1.0, -2.0 * std::numbers::pi * f / fs_);
  const std::complex<double> z2 = z1 * z1;
  std::complex<double> h = 1.0;
  for (const auto& s : sections_) {
    h *= (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
  }
  return std::abs(h);
}

void BandpassFilter::run(std::vector<double>& x) const {
  if (x.empty()) return;
  // All sections advance together per sample so their recursions overlap.
  const std::size_t m = sections_.size();
  std::array<double, kMaxSections> s1{}, s2{};
  double level = x.front();
  for (std::size_t k = 0; k < m; ++k) {
    const auto& s = sections_[k];
    const double y0 = dc_gain(s) * level;
    s2[k] = s.b2 * level - s.a2 * y0;
    s1[k] = s.b1 * level - s.a1 * y0 + s2[k];
    level = y0;
  }
  for (double& v : x) {
    double in = v;
    for (std::size_t k = 0; k < m; ++k) {
      const auto& s = sections_[k];
      const double out = s.b0 * in + s1[k];
      s1[k] = s.b1 * in - s.a1 * out + s2[k];
      s2[k] = s.b2 * in - s.a2 * out;
      in = out;
    }
    v = in;
  }
}

std::vector<double> BandpassFilter::filter(std::span<const double> x) const {
  std::vector<double> y(x.begin(), x.end());
  for (const auto& s : sections_) {
    double s1 = 0.0, s2 = 0.0;
    for (double& v : y) {
      const double in = v;
      const double out = s.b0 * in + s1;
      s1 = s.b1 * in - s.a1 * out + s2;
      s2 = s.b2 * in - s.a2 * out;
      v = out;
    }
  }
  return y;
}

std::vector<double> BandpassFilter::filtfilt(std::span<const double> x) const {
  const std::size_t n = x.size();
  if (n == 0) return {};
  const std::size_t pad = std::min(pad_length(), n - 1);

  std::vector<double> ext;
  ext.reserve(n + 2 * pad);
  for (std::size_t k = pad; k >= 1; --k) ext.push_back(2.0 * x[0] - x[k]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t k = 1; k <= pad; ++k) ext.push_back(2.0 * x[n - 1] - x[n - 1 - k]);

  run(ext);
  std::reverse(ext.begin(), ext.end());
  run(ext);
  std::reverse(ext.begin(), ext.end());

  return {ext.begin() + static_cast<std::ptrdiff_t>(pad),
          ext.begin() + static_cast<std::ptrdiff_t>(pad + n)};
}

Recording bandpass_filter(const Recording& rec, double lo, double hi, int order) {
  rec.validate();
  const BandpassFilter filter(lo, hi, rec.fs, order);
  Recording out = rec;
  for (Eigen::Index c = 0; c < rec.samples.cols(); ++c) {
    const auto col = rec.samples.col(c);
    const auto y = filter.filtfilt(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())));
    out.samples.col(c) = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
  }
  return out;
}

}  // namespace famfeat
