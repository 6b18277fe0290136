#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace famfeat {

/// One-sided power spectral density on a uniform grid starting at 0 Hz.
struct Psd {
  std::vector<double> freqs;  // Hz, strictly increasing
  std::vector<double> power;  // density, units^2 / Hz
  double resolution = 0.0;    // grid spacing, Hz

  double total_power() const;  // sum(power) * resolution
};

/// Averaged periodogram (Welch): Hann-windowed, mean-detrended segments.
struct PsdOptions {
  std::size_t segment_length = 900;
  double overlap = 0.5;
};

/// Throws ParameterError when x is shorter than one segment.
Psd estimate_psd(std::span<const double> x, double fs, const PsdOptions& options = {});

struct SpectralFrequencies {
  double mode = 0.0;
  double median = 0.0;
  double mean = 0.0;
};

/// Mode, median and mean frequency over the whole grid. Throws UndefinedError
/// for zero total power.
SpectralFrequencies spectral_frequency_features(const Psd& psd);

struct SubBand {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  std::string parent;
};

struct Band {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
};

/// Sub-band partition of the analysis range. Sub-bands are half-open [lo, hi)
/// except the last, which also takes its upper edge.
struct BandPlan {
  std::vector<SubBand> sub_bands;
  std::vector<Band> parents;  // delta, theta, alpha, beta
  Band full_band{"full", 0.5, 35.0};

  /// Ten clinical sub-bands over 0.5-35 Hz grouped into delta/theta/alpha/beta.
  static BandPlan standard();

  /// Throws ParameterError unless sub-bands are contiguous, non-overlapping,
  /// span the full band, and each parent is the union of its sub-bands.
  void validate() const;

  const Band& parent(const std::string& name) const;
};

struct BandPowers {
  std::vector<double> absolute;       // per sub-band
  std::vector<double> relative;       // per sub-band, sums to 1
  std::vector<double> parent_absolute;  // per parent band
  double total = 0.0;                 // full-band power
};

/// Integrates the PSD over each sub-band. Throws ParameterError if the grid
/// does not reach both edges of the full band and UndefinedError when the
/// full band carries no power.
BandPowers band_powers(const Psd& psd, const BandPlan& plan);

struct SlowWaveIndices {
  double dsi = 0.0;
  double tsi = 0.0;
  double asi = 0.0;
};

/// Ratios of each slow band's power to the sum of the other two.
SlowWaveIndices slow_wave_indices(double delta, double theta, double alpha);

struct HarmonicParameters {
  double center = 0.0;   // f_c, Hz
  double spread = 0.0;   // f_sigma, Hz
  double density = 0.0;  // PSD at the grid point nearest f_c
};

/// Spectral centroid, spread and centroid density over grid points in
/// [lo, hi] inclusive.
HarmonicParameters harmonic_parameters(const Psd& psd, double lo, double hi);

}  // namespace famfeat
