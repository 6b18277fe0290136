#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "famfeat/preprocess/recording.hpp"

namespace famfeat {

/// Second-order section in transposed direct form II, a0 normalized to 1.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
};

/// Butterworth band-pass realized as an order-N high-pass at `lo` cascaded
/// with an order-N low-pass at `hi`, both bilinear-transformed with cutoff
/// prewarping. `order` must be even.
class BandpassFilter {
 public:
  BandpassFilter(double lo, double hi, double fs, int order = 4);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double fs() const noexcept { return fs_; }
  int order() const noexcept { return order_; }
  std::span<const Biquad> sections() const noexcept { return sections_; }

  /// Single-pass magnitude response |H(f)|.
  double magnitude(double f) const;

  /// Causal single pass with zero initial state.
  std::vector<double> filter(std::span<const double> x) const;

  /// Zero-phase forward-backward pass. The input is extended at both ends by
  /// odd reflection of 3 x (band-pass order) samples and each pass starts
  /// from the steady state for its first padded sample.
  std::vector<double> filtfilt(std::span<const double> x) const;

  std::size_t pad_length() const noexcept { return static_cast<std::size_t>(3 * 2 * order_); }

 private:
  void run(std::vector<double>& x) const;

  double lo_, hi_, fs_;
  int order_;
  std::vector<Biquad> sections_;
};

/// Zero-phase band-pass of every channel (the EOG reference included).
Recording bandpass_filter(const Recording& rec, double lo, double hi, int order = 4);

}  // namespace famfeat
