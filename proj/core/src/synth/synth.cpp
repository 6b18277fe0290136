#include "famfeat/synth/synth.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <random>

#include <fftw3.h>
#include <fmt/format.h>

#include "famfeat/error.hpp"

namespace famfeat {
namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_profile(std::span<const double> rsp, const BandPlan& plan, const std::string& what) {
  if (rsp.empty()) throw ParameterError(what + ": empty band profile");
  if (rsp.size() != plan.sub_bands.size()) {
    throw ParameterError(fmt::format("{}: profile has {} entries, band plan has {} sub-bands", what,
                                     rsp.size(), plan.sub_bands.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < rsp.size(); ++i) {
    if (!(rsp[i] >= 0.0) || !std::isfinite(rsp[i])) {
      throw ParameterError(fmt::format("{}: entry {} ({}) must be finite and >= 0", what,
                                       plan.sub_bands[i].name, rsp[i]));
    }
    sum += rsp[i];
  }
  if (sum > 1.0 + 1e-9) throw ParameterError(fmt::format("{}: profile sums to {} > 1", what, sum));
  if (!(sum > 0.0)) throw ParameterError(what + ": profile carries no power");
}

// White noise long enough that filter transients fall outside the kept centre.
struct FftwDeleter {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwDeleter>;

fftw_plan c2r_plan(std::size_t n) {
  static std::mutex mutex;
  static std::vector<std::pair<std::size_t, fftw_plan>> plans;
  std::lock_guard lock(mutex);
  for (const auto& [size, plan] : plans) {
    if (size == n) return plan;
  }
  FftwBuffer<fftw_complex> in(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1))));
  FftwBuffer<double> out(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
  fftw_plan plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
  plans.emplace_back(n, plan);
  return plan;
}

// Gaussian noise whose spectrum is confined to the DFT bins inside the band:
// independent complex normal coefficients there, zero elsewhere.
std::vector<double> band_component(const SubBand& band, bool closed, double fs, std::size_t samples,
                                   std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t bins = samples / 2 + 1;
  FftwBuffer<fftw_complex> spec(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins)));
  FftwBuffer<double> out(static_cast<double*>(fftw_malloc(sizeof(double) * samples)));
  std::size_t used = 0;
  for (std::size_t k = 0; k < bins; ++k) {
    const double f = static_cast<double>(k) * fs / static_cast<double>(samples);
    const bool inside = k > 0 && f >= band.lo - 1e-9 && (closed ? f <= band.hi + 1e-9 : f < band.hi - 1e-9);
    spec[k][0] = inside ? normal(rng) : 0.0;
    spec[k][1] = inside ? normal(rng) : 0.0;
    used += inside;
  }
  if (used == 0) {
    throw ParameterError(fmt::format("{} samples at {} Hz cannot resolve sub-band {} ({}-{} Hz)", samples, fs,
                                     band.name, band.lo, band.hi));
  }
  if (samples % 2 == 0) spec[bins - 1][1] = 0.0;
  fftw_execute_dft_c2r(c2r_plan(samples), spec.get(), out.get());
  return {out.get(), out.get() + samples};
}

}  // namespace

void SynthSpec::validate() const {
  if (classes.empty()) throw ParameterError("synth spec: no classes");
  if (channels.empty()) throw ParameterError("synth spec: no channels");
  plan.validate();
  if (!(fs > 2.0 * plan.full_band.hi)) {
    throw ParameterError(fmt::format("synth spec: fs {} must exceed twice the highest band edge {}", fs,
                                     plan.full_band.hi));
  }
  if (samples < 2) throw ParameterError("synth spec: samples must be >= 2");
  if (!(total_power > 0.0)) throw ParameterError("synth spec: total_power must be positive");
  if (!(noise_floor >= 0.0)) throw ParameterError("synth spec: noise_floor must be >= 0");
  std::vector<Familiarity> seen;
  for (const auto& c : classes) {
    const std::string what = fmt::format("synth spec: class {}", to_string(c.label));
    if (std::find(seen.begin(), seen.end(), c.label) != seen.end()) throw ParameterError(what + " listed twice");
    seen.push_back(c.label);
    if (c.epochs == 0) throw ParameterError(what + ": epoch count must be positive");
    check_profile(c.rsp, plan, what);
  }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  return splitmix(splitmix(splitmix(base) ^ a) ^ (b * 0x2545f4914f6cdd1dULL));
}

Epoch synth_tone_epoch(double f, double amp, double fs, const std::vector<std::string>& channels,
                       double noise_sd, std::uint64_t seed) {
  if (!(fs > 0.0)) throw ParameterError(fmt::format("sampling rate must be positive, got {}", fs));
  if (!(f > 0.0 && f < fs / 2.0)) {
    throw ParameterError(fmt::format("tone frequency {} Hz outside (0, {}) Hz", f, fs / 2.0));
  }
  if (!(noise_sd >= 0.0)) throw ParameterError("noise sd must be >= 0");
  const auto n = static_cast<Eigen::Index>(std::lround(1.8 * fs));
  Epoch ep;
  ep.channels = channels;
  ep.fs = fs;
  ep.samples.resize(n, static_cast<Eigen::Index>(channels.size()));
  for (std::size_t c = 0; c < channels.size(); ++c) {
    std::mt19937_64 rng(derive_seed(seed, c));
    std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double phase = phase_dist(rng);
    for (Eigen::Index t = 0; t < n; ++t) {
      double v = amp * std::sin(2.0 * std::numbers::pi * f * static_cast<double>(t) / fs + phase);
      if (noise_sd > 0.0) v += noise_sd * normal(rng);
      ep.samples(t, static_cast<Eigen::Index>(c)) = v;
    }
  }
  return ep;
}

Eigen::MatrixXd synth_band_noise(std::span<const double> rsp, const BandPlan& plan, double fs,
                                 std::size_t samples, std::size_t channels, double total_power,
                                 std::uint64_t seed, std::span<const std::uint64_t> channel_seeds) {
  check_profile(rsp, plan, "band noise");
  if (!channel_seeds.empty() && channel_seeds.size() != channels) {
    throw ParameterError(fmt::format("{} channel seeds for {} channels", channel_seeds.size(), channels));
  }

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(samples), static_cast<Eigen::Index>(channels));
  for (std::size_t c = 0; c < channels; ++c) {
    std::mt19937_64 rng(channel_seeds.empty() ? derive_seed(seed, c) : channel_seeds[c]);
    auto col = out.col(static_cast<Eigen::Index>(c));
    for (std::size_t b = 0; b < plan.sub_bands.size(); ++b) {
      if (rsp[b] <= 0.0) continue;
      const bool last = b + 1 == plan.sub_bands.size();
      const auto y = band_component(plan.sub_bands[b], last, fs, samples, rng);
      const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(samples);
      double var = 0.0;
      for (double v : y) var += (v - mean) * (v - mean);
      var /= static_cast<double>(samples);
      const double gain = var > 0.0 ? std::sqrt(rsp[b] * total_power / var) : 0.0;
      for (std::size_t t = 0; t < samples; ++t) col(static_cast<Eigen::Index>(t)) += gain * (y[t] - mean);
    }
  }
  return out;
}

Epoch synth_band_noise_epoch(std::span<const double> rsp, double fs, const std::vector<std::string>& channels,
                             std::uint64_t seed, std::span<const std::uint64_t> channel_seeds) {
  Epoch ep;
  ep.channels = channels;
  ep.fs = fs;
  ep.samples = synth_band_noise(rsp, BandPlan::standard(), fs, 900, channels.size(), 100.0, seed, channel_seeds);
  return ep;
}

std::vector<Epoch> synth_labelled_dataset(const SynthSpec& spec) {
  spec.validate();
  std::vector<Epoch> out;
  std::mt19937_64 noise_rng(derive_seed(spec.seed, 0xF100u));
  for (std::size_t k = 0; k < spec.classes.size(); ++k) {
    const auto& cls = spec.classes[k];
    for (std::size_t e = 0; e < cls.epochs; ++e) {
      Epoch ep;
      ep.channels = spec.channels;
      ep.fs = spec.fs;
      ep.label = cls.label;
      ep.subject = spec.subject;
      ep.samples = synth_band_noise(cls.rsp, spec.plan, spec.fs, spec.samples, spec.channels.size(),
                                    spec.total_power, derive_seed(spec.seed, k + 1, e));
      out.push_back(std::move(ep));
    }
  }
  if (spec.noise_floor > 0.0) {
    std::normal_distribution<double> normal(0.0, spec.noise_floor);
    for (auto& ep : out) {
      for (Eigen::Index c = 0; c < ep.samples.cols(); ++c) {
        for (Eigen::Index t = 0; t < ep.samples.rows(); ++t) ep.samples(t, c) += normal(noise_rng);
      }
    }
  }
  std::mt19937_64 order_rng(derive_seed(spec.seed, 0x5EED));
  for (std::size_t i = out.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(order_rng() % i);
    std::swap(out[i - 1], out[j]);
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].trial = i;
  return out;
}

std::vector<double> dominant_profile(const BandPlan& plan, const std::string& parent_band) {
  const std::size_t n = plan.sub_bands.size();
  std::vector<double> rsp(n, 0.0);
  if (parent_band == "flat") {
    std::fill(rsp.begin(), rsp.end(), 0.9 / static_cast<double>(n));
    return rsp;
  }
  plan.parent(parent_band);  // throws for unknown names
  std::size_t members = 0;
  for (const auto& b : plan.sub_bands) members += b.parent == parent_band;
  for (std::size_t i = 0; i < n; ++i) {
    rsp[i] = 0.04;
    if (plan.sub_bands[i].parent == parent_band) rsp[i] += 0.5 / static_cast<double>(members);
  }
  return rsp;
}

double blink_weight(const std::string& electrode) {
  if (electrode == "Fp1" || electrode == "Fp2") return 0.8;
  if (electrode == "F7" || electrode == "F8") return 0.45;
  if (electrode == "F3" || electrode == "F4" || electrode == "Fz") return 0.35;
  return 0.0;
}

SyntheticRecording synth_recording(const SynthSpec& spec, const RecordingLayout& layout) {
  spec.validate();
  if (!(layout.trial_s > 0.0) || !(layout.lead_s >= 0.0) || !(layout.blink_rate_hz >= 0.0) ||
      !(layout.blink_width_s > 0.0)) {
    throw ParameterError("recording layout: durations must be positive and rates >= 0");
  }
  const double fs = spec.fs;
  const auto trial_n = static_cast<std::size_t>(std::lround(layout.trial_s * fs));
  const auto lead_n = static_cast<std::size_t>(std::lround(layout.lead_s * fs));
  const std::size_t nch = spec.channels.size();

  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < spec.classes.size(); ++k) order.insert(order.end(), spec.classes[k].epochs, k);
  std::mt19937_64 order_rng(derive_seed(spec.seed, 0x5EED));
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(order_rng() % i);
    std::swap(order[i - 1], order[j]);
  }

  std::vector<double> mean_rsp(spec.plan.sub_bands.size(), 0.0);
  for (const auto& c : spec.classes) {
    for (std::size_t b = 0; b < mean_rsp.size(); ++b) mean_rsp[b] += c.rsp[b] / static_cast<double>(spec.classes.size());
  }

  const std::size_t total = 2 * lead_n + order.size() * trial_n;
  SyntheticRecording out;
  Recording& rec = out.recording;
  rec.fs = fs;
  rec.channels = spec.channels;
  rec.channels.push_back("EOG");
  rec.eog_channel = nch;
  rec.samples = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(nch + 1));

  auto place = [&](std::size_t start, const Eigen::MatrixXd& block) {
    rec.samples.block(static_cast<Eigen::Index>(start), 0, block.rows(), block.cols()) = block;
  };
  if (lead_n > 0) {
    place(0, synth_band_noise(mean_rsp, spec.plan, fs, lead_n, nch, spec.total_power, derive_seed(spec.seed, 0, 0)));
    place(total - lead_n,
          synth_band_noise(mean_rsp, spec.plan, fs, lead_n, nch, spec.total_power, derive_seed(spec.seed, 0, 1)));
  }
  for (std::size_t t = 0; t < order.size(); ++t) {
    const std::size_t onset = lead_n + t * trial_n;
    const auto& cls = spec.classes[order[t]];
    place(onset, synth_band_noise(cls.rsp, spec.plan, fs, trial_n, nch, spec.total_power,
                                  derive_seed(spec.seed, order[t] + 1, t)));
    rec.stimulus_onsets.push_back(onset);
    out.labels.push_back(cls.label);
  }

  std::mt19937_64 rng(derive_seed(spec.seed, 0xB11Cu));
  std::normal_distribution<double> normal(0.0, 1.0);
  auto eog = rec.samples.col(static_cast<Eigen::Index>(nch));
  if (layout.blink_rate_hz > 0.0) {
    std::exponential_distribution<double> gap(layout.blink_rate_hz);
    const double width = layout.blink_width_s * fs;
    for (double at = gap(rng) * fs; at < static_cast<double>(total); at += gap(rng) * fs) {
      const auto from = static_cast<Eigen::Index>(std::max(0.0, at - 5.0 * width));
      const auto to = static_cast<Eigen::Index>(std::min(static_cast<double>(total), at + 5.0 * width));
      for (Eigen::Index i = from; i < to; ++i) {
        const double z = (static_cast<double>(i) - at) / width;
        eog(i) += layout.blink_amplitude * std::exp(-0.5 * z * z);
      }
    }
  }
  for (std::size_t c = 0; c < nch; ++c) {
    const double w = blink_weight(spec.channels[c]);
    if (w > 0.0) rec.samples.col(static_cast<Eigen::Index>(c)) += w * eog;
  }
  for (Eigen::Index i = 0; i < eog.size(); ++i) eog(i) += 2.0 * normal(rng);
  if (spec.noise_floor > 0.0) {
    for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(nch); ++c) {
      for (Eigen::Index i = 0; i < rec.samples.rows(); ++i) rec.samples(i, c) += spec.noise_floor * normal(rng);
    }
  }
  return out;
}

}  // namespace famfeat
