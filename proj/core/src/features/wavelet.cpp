#include "famfeat/features/wavelet.hpp"

#include <cmath>

#include <fmt/format.h>

#include "famfeat/error.hpp"
#include "famfeat/features/moments.hpp"
#include "famfeat/stats.hpp"

namespace famfeat {
namespace {

constexpr std::array<double, 2> kHaar = {0.7071067811865476, 0.7071067811865476};
constexpr std::array<double, 4> kDb2 = {0.48296291314453414, 0.8365163037378079,
                                        0.2241438680420134, -0.12940952255126037};
constexpr std::array<double, 8> kDb4 = {0.2303778133088965,   0.7148465705529157,
                                        0.6308807679298589,   -0.027983769416859854,
                                        -0.18703481171909309, 0.030841381835560764,
                                        0.0328830116668852,   -0.010597401785069032};

// One analysis step on an even-length periodic signal.
void analyze(std::span<const double> x, std::span<const double> h, std::vector<double>& approx,
             std::vector<double>& detail) {
  const std::size_t n = x.size();
  const std::size_t taps = h.size();
  approx.assign(n / 2, 0.0);
  detail.assign(n / 2, 0.0);
  for (std::size_t i = 0; i < n / 2; ++i) {
    double a = 0.0, d = 0.0;
    for (std::size_t k = 0; k < taps; ++k) {
      const double v = x[(2 * i + k) % n];
      // Quadrature mirror: g[k] = (-1)^k h[taps-1-k]
      const double g = (k % 2 == 0 ? 1.0 : -1.0) * h[taps - 1 - k];
      a += h[k] * v;
      d += g * v;
    }
    approx[i] = a;
    detail[i] = d;
  }
}

}  // namespace

std::span<const double> scaling_filter(WaveletKind kind) {
  switch (kind) {
    case WaveletKind::haar: return kHaar;
    case WaveletKind::db2: return kDb2;
    case WaveletKind::db4: return kDb4;
  }
  return kDb4;
}

std::string_view to_string(WaveletKind kind) noexcept {
  switch (kind) {
    case WaveletKind::haar: return "haar";
    case WaveletKind::db2: return "db2";
    case WaveletKind::db4: return "db4";
  }
  return "db4";
}

WaveletKind parse_wavelet(std::string_view name) {
  for (auto k : {WaveletKind::haar, WaveletKind::db2, WaveletKind::db4}) {
    if (to_string(k) == name) return k;
  }
  throw ParameterError(fmt::format("unknown wavelet '{}' (expected haar, db2 or db4)", name));
}

double DwtCoefficients::energy() const {
  double e = 0.0;
  for (const auto& d : details)
    for (double v : d) e += v * v;
  for (double v : approximation) e += v * v;
  return e;
}

DwtCoefficients dwt(std::span<const double> x, int levels, WaveletKind kind) {
  if (levels < 1) throw ParameterError("DWT needs at least one level");
  const std::size_t block = std::size_t{1} << levels;
  if (x.size() < block) {
    throw ParameterError(fmt::format("signal of {} samples is too short for a {}-level DWT (needs {})",
                                     x.size(), levels, block));
  }
  const auto h = scaling_filter(kind);

  DwtCoefficients out;
  out.padded_length = (x.size() + block - 1) / block * block;
  std::vector<double> current(x.begin(), x.end());
  current.resize(out.padded_length, 0.0);

  std::vector<double> approx, detail;
  for (int level = 0; level < levels; ++level) {
    analyze(current, h, approx, detail);
    out.details.push_back(detail);
    current.swap(approx);
  }
  out.approximation = std::move(current);
  return out;
}

std::array<double, 16> dwt_band_moments(std::span<const double> x, double fs,
                                        const WaveletOptions& options) {
  if (!(fs >= 384.0 && fs <= 640.0)) {
    throw ParameterError(fmt::format(
        "a {}-level dyadic split at fs = {} Hz does not bracket the 0-4/4-8/8-16/16-32 Hz groups",
        kWaveletLevels, fs));
  }
  const auto coeffs = dwt(x, kWaveletLevels, options.kind);
  const std::array<const std::vector<double>*, 4> groups = {
      &coeffs.approximation, &coeffs.details[5], &coeffs.details[4], &coeffs.details[3]};

  std::array<double, 16> out{};
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const std::span<const double> c(*groups[g]);
    const double m = mean(c);
    const double m2 = central_moment(c, 2);
    double* slot = &out[4 * g];
    slot[0] = m;
    if (options.moments == WaveletMoments::central) {
      slot[1] = m2;
      slot[2] = central_moment(c, 3);
      slot[3] = central_moment(c, 4);
    } else {
      if (!(m2 > 0.0)) {
        throw UndefinedError(fmt::format("standardized moments of constant wavelet group {}",
                                         kWaveletGroups[g]));
      }
      slot[1] = std::sqrt(m2);
      slot[2] = central_moment(c, 3) / (m2 * std::sqrt(m2));
      slot[3] = central_moment(c, 4) / (m2 * m2);
    }
  }
  return out;
}

}  // namespace famfeat
