#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace famfeat {

/// Orthonormal Daubechies scaling filter (sum h = sqrt 2, sum h^2 = 1).
/// Taps: haar = 2, db2 = 4, db4 = 8.
enum class WaveletKind { haar, db2, db4 };

std::span<const double> scaling_filter(WaveletKind kind);
std::string_view to_string(WaveletKind kind) noexcept;
WaveletKind parse_wavelet(std::string_view name);

/// Multilevel periodized DWT. The input is zero-padded to a multiple of
/// 2^levels so every level sees an even length and the transform stays
/// orthogonal: energy is preserved exactly up to rounding.
struct DwtCoefficients {
  std::vector<std::vector<double>> details;  // details[0] = D1 (finest)
  std::vector<double> approximation;         // A_levels
  std::size_t padded_length = 0;

  double energy() const;
};

DwtCoefficients dwt(std::span<const double> x, int levels, WaveletKind kind = WaveletKind::db4);

/// Statistics reported per coefficient group.
enum class WaveletMoments {
  standardized,  // mean, standard deviation, skewness, kurtosis
  central,       // mean, m2, m3, m4
};

struct WaveletOptions {
  WaveletKind kind = WaveletKind::db4;
  WaveletMoments moments = WaveletMoments::standardized;
};

inline constexpr int kWaveletLevels = 6;

/// Group labels in output order: A6 (~0-4 Hz), D6 (~4-8), D5 (~8-16), D4 (~16-31) at 500 Hz.
inline constexpr std::array<std::string_view, 4> kWaveletGroups = {"A6", "D6", "D5", "D4"};

/// 16 statistics, group-major then statistic-minor. Requires x.size() >= 64
/// and fs in [384, 640] Hz so the last four groups bracket the target bands.
/// In standardized mode a zero-variance group raises UndefinedError.
std::array<double, 16> dwt_band_moments(std::span<const double> x, double fs,
                                        const WaveletOptions& options = {});

}  // namespace famfeat
