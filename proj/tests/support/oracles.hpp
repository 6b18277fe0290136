#pragma once

// Brute-force reference implementations used to cross-check the library.
// Everything here works by direct summation on the textbook definitions in
// long double, with no shared code paths into famfeat.

#include <cstddef>
#include <vector>

namespace famfeat::oracle {

long double mean(const std::vector<double>& x);
long double central_moment(const std::vector<double>& x, int k);

struct TimeStats {
  double skewness, kurtosis, activity, mobility, complexity;
};
TimeStats time_stats(const std::vector<double>& x, double fs);

/// One-sided Welch spectrum by an O(n^2) DFT. Periodic Hann window,
/// per-segment mean removal, density scaling, 50% overlap.
struct Spectrum {
  std::vector<double> freqs;
  std::vector<double> power;
  double df = 0.0;
};
Spectrum welch(const std::vector<double>& x, double fs, std::size_t segment);

/// Rectangle-rule integral over grid points in [lo, hi), or [lo, hi] when
/// `closed` is set.
double band_integral(const Spectrum& s, double lo, double hi, bool closed);

struct Centroid {
  double center, spread, density;
};
Centroid harmonic(const Spectrum& s, double lo, double hi);

struct Frequencies {
  double mode, median, mean;
};
Frequencies spectral_frequencies(const Spectrum& s);

/// Periodized DWT by explicit analysis matrices. details[0] is the finest level.
struct Dwt {
  std::vector<std::vector<double>> details;
  std::vector<double> approximation;
};
Dwt dwt(std::vector<double> x, int levels, const std::vector<double>& h);

/// Dense one-level analysis matrix for an even length n.
std::vector<std::vector<double>> analysis_matrix(std::size_t n, const std::vector<double>& h);

double pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Least-squares fit x ~ a sin(wt) + b cos(wt) + c over [first, last).
struct SineFit {
  double amplitude, phase;
};
SineFit fit_sine(const std::vector<double>& x, double f, double fs, std::size_t first, std::size_t last);

double rms(const std::vector<double>& x, std::size_t first, std::size_t last);

/// Two-sided permutation p-value for a difference in means.
double permutation_pvalue(const std::vector<double>& a, const std::vector<double>& b,
                          std::size_t permutations, unsigned seed);

}  // namespace famfeat::oracle
