#include "famfeat/features/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include <fftw3.h>
#include <fmt/format.h>

#include "famfeat/error.hpp"

namespace famfeat {
namespace {

struct FftwDeleter {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwDeleter>;

// FFTW planning is not thread-safe; execution with the new-array interface is.
fftw_plan r2c_plan(std::size_t n) {
  static std::mutex mutex;
  static std::vector<std::pair<std::size_t, fftw_plan>> plans;
  std::lock_guard lock(mutex);
  for (const auto& [size, plan] : plans) {
    if (size == n) return plan;
  }
  FftwBuffer<double> in(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
  FftwBuffer<fftw_complex> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1))));
  fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
  plans.emplace_back(n, plan);
  return plan;
}

constexpr double kEdgeEps = 1e-9;

bool in_half_open(double f, double lo, double hi) { return f >= lo - kEdgeEps && f < hi - kEdgeEps; }
bool in_closed(double f, double lo, double hi) { return f >= lo - kEdgeEps && f <= hi + kEdgeEps; }

}  // namespace

double Psd::total_power() const {
  double s = 0.0;
  for (double p : power) s += p;
  return s * resolution;
}

Psd estimate_psd(std::span<const double> x, double fs, const PsdOptions& options) {
  const std::size_t len = options.segment_length;
  if (!(fs > 0.0)) throw ParameterError("sampling rate must be positive");
  if (len < 2) throw ParameterError("segment length must be at least 2");
  if (!(options.overlap >= 0.0 && options.overlap < 1.0)) {
    throw ParameterError(fmt::format("overlap must be in [0, 1), got {}", options.overlap));
  }
  if (x.size() < len) {
    throw ParameterError(fmt::format("signal of {} samples is shorter than one {}-sample segment",
                                     x.size(), len));
  }

  const auto step = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(static_cast<double>(len) * (1.0 - options.overlap))));
  std::vector<double> window(len);
  double window_energy = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    // Periodic Hann, as used for spectral averaging.
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(len));
    window_energy += window[i] * window[i];
  }

  const std::size_t bins = len / 2 + 1;
  Psd psd;
  psd.resolution = fs / static_cast<double>(len);
  psd.freqs.resize(bins);
  psd.power.assign(bins, 0.0);
  for (std::size_t k = 0; k < bins; ++k) psd.freqs[k] = static_cast<double>(k) * fs / static_cast<double>(len);

  const fftw_plan plan = r2c_plan(len);
  FftwBuffer<double> in(static_cast<double*>(fftw_malloc(sizeof(double) * len)));
  FftwBuffer<fftw_complex> out(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins)));

  std::size_t segments = 0;
  for (std::size_t start = 0; start + len <= x.size(); start += step) {
    double m = 0.0;
    for (std::size_t i = 0; i < len; ++i) m += x[start + i];
    m /= static_cast<double>(len);
    for (std::size_t i = 0; i < len; ++i) in[i] = (x[start + i] - m) * window[i];
    fftw_execute_dft_r2c(plan, in.get(), out.get());
    for (std::size_t k = 0; k < bins; ++k) {
      psd.power[k] += out[k][0] * out[k][0] + out[k][1] * out[k][1];
    }
    ++segments;
  }

  const double scale = 1.0 / (fs * window_energy * static_cast<double>(segments));
  for (std::size_t k = 0; k < bins; ++k) {
    const bool unpaired = k == 0 || (len % 2 == 0 && k == bins - 1);
    psd.power[k] *= unpaired ? scale : 2.0 * scale;
  }
  return psd;
}

SpectralFrequencies spectral_frequency_features(const Psd& psd) {
  double total = 0.0, weighted = 0.0;
  std::size_t mode_idx = 0;
  for (std::size_t k = 0; k < psd.power.size(); ++k) {
    total += psd.power[k];
    weighted += psd.freqs[k] * psd.power[k];
    if (psd.power[k] > psd.power[mode_idx]) mode_idx = k;
  }
  if (!(total > 0.0)) throw UndefinedError("spectral frequencies of a zero-power spectrum");

  SpectralFrequencies out;
  out.mode = psd.freqs[mode_idx];
  out.mean = weighted / total;
  double cumulative = 0.0;
  for (std::size_t k = 0; k < psd.power.size(); ++k) {
    cumulative += psd.power[k];
    if (cumulative >= 0.5 * total) {
      out.median = psd.freqs[k];
      break;
    }
  }
  return out;
}

BandPlan BandPlan::standard() {
  BandPlan plan;
  plan.sub_bands = {
      {"Delta1", 0.5, 2.0, "delta"},  {"Delta2", 2.0, 4.0, "delta"},
      {"Theta1", 4.0, 6.0, "theta"},  {"Theta2", 6.0, 8.0, "theta"},
      {"Alpha1", 8.0, 10.0, "alpha"}, {"Alpha2", 10.0, 12.0, "alpha"},
      {"Alpha3", 12.0, 14.0, "alpha"}, {"Beta1", 14.0, 16.0, "beta"},
      {"Beta2", 16.0, 25.0, "beta"},  {"Beta3", 25.0, 35.0, "beta"},
  };
  plan.parents = {{"delta", 0.5, 4.0}, {"theta", 4.0, 8.0}, {"alpha", 8.0, 14.0}, {"beta", 14.0, 35.0}};
  plan.full_band = {"full", 0.5, 35.0};
  return plan;
}

const Band& BandPlan::parent(const std::string& name) const {
  for (const auto& p : parents) {
    if (p.name == name) return p;
  }
  throw ParameterError("unknown parent band '" + name + "'");
}

void BandPlan::validate() const {
  if (sub_bands.empty()) throw ParameterError("band plan has no sub-bands");
  if (std::abs(sub_bands.front().lo - full_band.lo) > kEdgeEps ||
      std::abs(sub_bands.back().hi - full_band.hi) > kEdgeEps) {
    throw ParameterError("sub-bands do not span the full band");
  }
  for (std::size_t i = 0; i < sub_bands.size(); ++i) {
    if (!(sub_bands[i].lo < sub_bands[i].hi)) {
      throw ParameterError("sub-band '" + sub_bands[i].name + "' is empty");
    }
    if (i > 0 && std::abs(sub_bands[i].lo - sub_bands[i - 1].hi) > kEdgeEps) {
      throw ParameterError("sub-bands '" + sub_bands[i - 1].name + "' and '" + sub_bands[i].name +
                           "' are not contiguous");
    }
  }
  for (const auto& p : parents) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& s : sub_bands) {
      if (s.parent == p.name) {
        lo = std::min(lo, s.lo);
        hi = std::max(hi, s.hi);
      }
    }
    if (std::abs(lo - p.lo) > kEdgeEps || std::abs(hi - p.hi) > kEdgeEps) {
      throw ParameterError("parent band '" + p.name + "' is not the union of its sub-bands");
    }
  }
  for (const auto& s : sub_bands) parent(s.parent);
}

BandPowers band_powers(const Psd& psd, const BandPlan& plan) {
  if (psd.freqs.empty() || psd.freqs.front() > plan.full_band.lo + kEdgeEps ||
      psd.freqs.back() < plan.full_band.hi - kEdgeEps) {
    throw ParameterError(fmt::format("PSD grid does not cover the band plan ({}-{} Hz)",
                                     plan.full_band.lo, plan.full_band.hi));
  }
  BandPowers out;
  out.absolute.assign(plan.sub_bands.size(), 0.0);
  out.parent_absolute.assign(plan.parents.size(), 0.0);
  const std::size_t last = plan.sub_bands.size() - 1;
  for (std::size_t k = 0; k < psd.freqs.size(); ++k) {
    const double f = psd.freqs[k];
    for (std::size_t b = 0; b <= last; ++b) {
      const auto& sb = plan.sub_bands[b];
      const bool inside = b == last ? in_closed(f, sb.lo, sb.hi) : in_half_open(f, sb.lo, sb.hi);
      if (inside) {
        out.absolute[b] += psd.power[k] * psd.resolution;
        break;
      }
    }
  }
  for (std::size_t b = 0; b <= last; ++b) {
    out.total += out.absolute[b];
    for (std::size_t p = 0; p < plan.parents.size(); ++p) {
      if (plan.parents[p].name == plan.sub_bands[b].parent) out.parent_absolute[p] += out.absolute[b];
    }
  }
  if (!(out.total > 0.0)) throw UndefinedError("relative spectral power of a zero-power band");
  out.relative.resize(out.absolute.size());
  for (std::size_t b = 0; b <= last; ++b) out.relative[b] = out.absolute[b] / out.total;
  return out;
}

SlowWaveIndices slow_wave_indices(double delta, double theta, double alpha) {
  if (delta < 0.0 || theta < 0.0 || alpha < 0.0) {
    throw ParameterError("band powers must be non-negative");
  }
  auto ratio = [](double num, double den, const char* name) {
    if (!(den > 0.0)) throw UndefinedError(fmt::format("{} has a zero denominator", name));
    return num / den;
  };
  SlowWaveIndices out;
  out.dsi = ratio(delta, theta + alpha, "DSI");
  out.tsi = ratio(theta, delta + alpha, "TSI");
  out.asi = ratio(alpha, delta + theta, "ASI");
  return out;
}

HarmonicParameters harmonic_parameters(const Psd& psd, double lo, double hi) {
  if (!(lo < hi)) throw ParameterError(fmt::format("invalid band [{}, {}] Hz", lo, hi));
  if (psd.freqs.empty() || psd.freqs.front() > lo + kEdgeEps || psd.freqs.back() < hi - kEdgeEps) {
    throw ParameterError(fmt::format("band [{}, {}] Hz lies outside the PSD grid", lo, hi));
  }
  double p_sum = 0.0, fp_sum = 0.0;
  for (std::size_t k = 0; k < psd.freqs.size(); ++k) {
    if (in_closed(psd.freqs[k], lo, hi)) {
      p_sum += psd.power[k];
      fp_sum += psd.freqs[k] * psd.power[k];
    }
  }
  if (!(p_sum > 0.0)) throw UndefinedError(fmt::format("no power in band [{}, {}] Hz", lo, hi));

  HarmonicParameters out;
  out.center = fp_sum / p_sum;
  double var_sum = 0.0;
  for (std::size_t k = 0; k < psd.freqs.size(); ++k) {
    if (in_closed(psd.freqs[k], lo, hi)) {
      const double d = psd.freqs[k] - out.center;
      var_sum += d * d * psd.power[k];
    }
  }
  out.spread = std::sqrt(var_sum / p_sum);

  std::size_t nearest = 0;
  for (std::size_t k = 1; k < psd.freqs.size(); ++k) {
    if (std::abs(psd.freqs[k] - out.center) < std::abs(psd.freqs[nearest] - out.center)) nearest = k;
  }
  out.density = psd.power[nearest];
  return out;
}

}  // namespace famfeat
