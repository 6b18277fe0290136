#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "famfeat/features/spectrum.hpp"
#include "famfeat/montage.hpp"
#include "famfeat/preprocess/recording.hpp"

namespace famfeat {

/// Target relative power per sub-band of a class, plus its epoch count.
struct ClassProfile {
  Familiarity label = Familiarity::unfamiliar;
  std::vector<double> rsp;  // parallel to the band plan's sub-bands
  std::size_t epochs = 0;
};

struct SynthSpec {
  std::vector<ClassProfile> classes;
  std::vector<std::string> channels = standard_montage();
  BandPlan plan = BandPlan::standard();
  double fs = 500.0;
  std::size_t samples = 900;
  double total_power = 100.0;  // uV^2 carried by a profile summing to 1
  double noise_floor = 0.5;    // sd of white noise added on top, uV
  std::string subject = "synth";
  std::uint64_t seed = 0;

  /// Throws ParameterError naming the offending field.
  void validate() const;
};

/// Stable per-stream seed derived from a base seed and two indices.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

/// amp * sin(2 pi f t + phase) + N(0, noise_sd) on every channel, with an
/// independent random phase per channel. round(1.8 fs) samples.
Epoch synth_tone_epoch(double f, double amp, double fs, const std::vector<std::string>& channels,
                       double noise_sd, std::uint64_t seed);

/// Band-limited Gaussian noise of `samples` points: for each sub-band with
/// positive weight, random Fourier coefficients on the DFT bins inside that
/// sub-band are inverse transformed and scaled to rsp * total_power variance.
/// Throws ParameterError when a weighted sub-band holds no bin. Channel c draws from channel_seeds[c] when
/// given, else from derive_seed(seed, c).
Eigen::MatrixXd synth_band_noise(std::span<const double> rsp, const BandPlan& plan, double fs,
                                 std::size_t samples, std::size_t channels, double total_power,
                                 std::uint64_t seed, std::span<const std::uint64_t> channel_seeds = {});

/// Epoch wrapper around synth_band_noise with the standard 900-sample length
/// at fs = 500.
Epoch synth_band_noise_epoch(std::span<const double> rsp, double fs,
                             const std::vector<std::string>& channels, std::uint64_t seed,
                             std::span<const std::uint64_t> channel_seeds = {});

/// Epochs of every class, shuffled by the seed. Trial numbers follow the
/// shuffled order.
std::vector<Epoch> synth_labelled_dataset(const SynthSpec& spec);

/// Relative profiles used by the benchmarks: a flat floor with the named
/// parent band boosted. "flat" gives the floor alone, scaled to sum 0.9.
std::vector<double> dominant_profile(const BandPlan& plan, const std::string& parent_band);

struct RecordingLayout {
  double trial_s = 2.0;       // spacing between onsets
  double lead_s = 1.0;        // before the first onset and after the last trial
  double blink_rate_hz = 0.3;
  double blink_amplitude = 150.0;  // uV at the EOG channel
  double blink_width_s = 0.05;     // Gaussian sd
};

struct SyntheticRecording {
  Recording recording;  // EEG channels then "EOG"
  std::vector<Familiarity> labels;  // per onset
};

/// Continuous recording: each trial block carries its class's band profile,
/// lead-in and tail use the mean profile, and blinks recorded on the EOG
/// channel leak into the frontal electrodes with decreasing weight.
SyntheticRecording synth_recording(const SynthSpec& spec, const RecordingLayout& layout = {});

/// Weight of the blink source on an electrode (0 for non-frontal sites).
double blink_weight(const std::string& electrode);

}  // namespace famfeat
