#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "famfeat/error.hpp"
#include "famfeat/features/correlation.hpp"
#include "famfeat/features/extract.hpp"
#include "famfeat/features/moments.hpp"
#include "famfeat/features/spectrum.hpp"
#include "famfeat/features/wavelet.hpp"
#include "famfeat/montage.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace famfeat {
namespace {

using testing::gaussian_noise;
using testing::make_epoch;
using testing::sine;

TEST(CentralMoment, FirstMomentAndConstantsVanish) {
  std::mt19937_64 rng(1);
  const auto x = gaussian_noise(500, rng, 3.0);
  EXPECT_NEAR(central_moment(x, 1), 0.0, 1e-12);
  const std::vector<double> flat(40, 2.5);
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(central_moment(flat, k), 0.0);
  EXPECT_THROW(central_moment(std::vector<double>{}, 2), ParameterError);
}

TEST(StatisticalTime, GaussianMoments) {
  std::mt19937_64 rng(2);
  const auto x = gaussian_noise(1'000'000, rng);
  const auto f = statistical_time_features(x, 500.0);
  EXPECT_GT(f.skewness, -0.02);
  EXPECT_LT(f.skewness, 0.02);
  EXPECT_GT(f.kurtosis, 2.95);
  EXPECT_LT(f.kurtosis, 3.05);
}

TEST(StatisticalTime, ConstantSignalIsUndefined) {
  EXPECT_THROW(statistical_time_features(std::vector<double>(100, 1.0), 500.0), UndefinedError);
  EXPECT_THROW(statistical_time_features(std::vector<double>{1.0, 2.0}, 500.0), ParameterError);
}

TEST(StatisticalTime, ScaleInvariance) {
  std::mt19937_64 rng(3);
  const auto x = gaussian_noise(900, rng);
  const auto base = statistical_time_features(x, 500.0);
  for (double c : {0.01, 3.0, 250.0}) {
    std::vector<double> y(x);
    for (auto& v : y) v *= c;
    const auto f = statistical_time_features(y, 500.0);
    EXPECT_NEAR(f.skewness, base.skewness, 1e-9 * std::abs(base.skewness) + 1e-12);
    EXPECT_NEAR(f.kurtosis, base.kurtosis, 1e-9 * base.kurtosis);
    EXPECT_NEAR(f.mobility, base.mobility, 1e-9 * base.mobility);
    EXPECT_NEAR(f.complexity, base.complexity, 1e-9 * base.complexity);
    EXPECT_NEAR(f.activity, c * c * base.activity, 1e-9 * c * c * base.activity);
  }
}

TEST(Psd, TonePeakAndZeroSignal) {
  const auto psd = estimate_psd(sine(10.0, 500.0, 900), 500.0);
  const auto peak = std::max_element(psd.power.begin(), psd.power.end()) - psd.power.begin();
  EXPECT_NEAR(psd.freqs[static_cast<std::size_t>(peak)], 10.0, psd.resolution);
  for (double p : estimate_psd(std::vector<double>(900, 0.0), 500.0).power) EXPECT_EQ(p, 0.0);
  EXPECT_THROW(estimate_psd(std::vector<double>(100, 0.0), 500.0), ParameterError);
}

TEST(Psd, GridIsIncreasingAndNonNegative) {
  std::mt19937_64 rng(4);
  const auto psd = estimate_psd(gaussian_noise(2000, rng), 500.0, {.segment_length = 256, .overlap = 0.5});
  for (std::size_t k = 1; k < psd.freqs.size(); ++k) EXPECT_LT(psd.freqs[k - 1], psd.freqs[k]);
  for (double p : psd.power) EXPECT_GE(p, 0.0);
  EXPECT_GT(psd.total_power(), 0.0);
}

TEST(Psd, ParsevalWithinFivePercent) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = gaussian_noise(9000, rng, 1.0 + trial);
    const double var = static_cast<double>(oracle::central_moment(x, 2));
    EXPECT_NEAR(estimate_psd(x, 500.0).total_power(), var, 0.05 * var);
  }
}

TEST(SpectralFrequencies, PureToneAndZeroPower) {
  const auto psd = estimate_psd(sine(10.0, 500.0, 900), 500.0);
  const auto f = spectral_frequency_features(psd);
  EXPECT_NEAR(f.mode, 10.0, psd.resolution);
  EXPECT_NEAR(f.median, 10.0, psd.resolution);
  EXPECT_NEAR(f.mean, 10.0, psd.resolution);
  EXPECT_THROW(spectral_frequency_features(estimate_psd(std::vector<double>(900, 0.0), 500.0)), UndefinedError);
}

TEST(BandPlan, StandardPlanIsValid) {
  const auto plan = BandPlan::standard();
  EXPECT_NO_THROW(plan.validate());
  ASSERT_EQ(plan.sub_bands.size(), 10u);
  EXPECT_EQ(plan.sub_bands.front().name, "Delta1");
  EXPECT_EQ(plan.sub_bands.back().hi, 35.0);
  auto broken = plan;
  broken.sub_bands[3].lo = 6.5;
  EXPECT_THROW(broken.validate(), ParameterError);
}

TEST(BandPowers, RelativePowersSumToOneAndScaleFree) {
  std::mt19937_64 rng(6);
  const auto plan = BandPlan::standard();
  const auto x = gaussian_noise(900, rng);
  const auto a = band_powers(estimate_psd(x, 500.0), plan);
  double sum = 0.0;
  for (double r : a.relative) sum += r;
  EXPECT_NEAR(sum, 1.0, 1e-9);
  std::vector<double> y(x);
  for (auto& v : y) v *= 7.0;
  const auto b = band_powers(estimate_psd(y, 500.0), plan);
  for (std::size_t i = 0; i < a.relative.size(); ++i) EXPECT_NEAR(a.relative[i], b.relative[i], 1e-9);
}

TEST(BandPowers, GridMustCoverThePlan) {
  Psd psd;
  psd.resolution = 1.0;
  for (int k = 0; k <= 20; ++k) psd.freqs.push_back(k), psd.power.push_back(1.0);
  EXPECT_THROW(band_powers(psd, BandPlan::standard()), ParameterError);
}

TEST(SlowWave, HandArithmetic) {
  auto s = slow_wave_indices(2, 1, 1);
  EXPECT_DOUBLE_EQ(s.dsi, 1.0);
  EXPECT_DOUBLE_EQ(s.tsi, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.asi, 1.0 / 3.0);
  s = slow_wave_indices(1, 1, 1);
  EXPECT_DOUBLE_EQ(s.dsi, 0.5);
  EXPECT_DOUBLE_EQ(s.tsi, 0.5);
  EXPECT_DOUBLE_EQ(s.asi, 0.5);
  s = slow_wave_indices(0, 1, 1);
  EXPECT_DOUBLE_EQ(s.dsi, 0.0);
  EXPECT_DOUBLE_EQ(s.tsi, 1.0);
  EXPECT_DOUBLE_EQ(s.asi, 1.0);
  try {
    slow_wave_indices(1, 0, 0);
    FAIL();
  } catch (const UndefinedError& e) {
    EXPECT_NE(std::string(e.what()).find("DSI"), std::string::npos);
  }
}

TEST(Harmonic, EmptyBandIsUndefined) {
  const auto psd = estimate_psd(sine(30.0, 500.0, 900), 500.0);
  Psd zero = psd;
  std::fill(zero.power.begin(), zero.power.end(), 0.0);
  EXPECT_THROW(harmonic_parameters(zero, 4.0, 8.0), UndefinedError);
}

TEST(Dwt, ZeroSignal) {
  const std::vector<double> zero(900, 0.0);
  const auto central = dwt_band_moments(zero, 500.0, {.moments = WaveletMoments::central});
  for (double v : central) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(dwt_band_moments(zero, 500.0), UndefinedError);
  EXPECT_THROW(dwt(std::vector<double>(40, 1.0), 6), ParameterError);
}

TEST(Dwt, EveryWaveletIsOrthogonal) {
  std::mt19937_64 rng(7);
  for (auto kind : {WaveletKind::haar, WaveletKind::db2, WaveletKind::db4}) {
    const auto span = scaling_filter(kind);
    const std::vector<double> h(span.begin(), span.end());
    const auto w = oracle::analysis_matrix(64, h);
    for (std::size_t r = 0; r < 64; ++r) {
      for (std::size_t s = 0; s < 64; ++s) {
        double dot = 0.0;
        for (std::size_t c = 0; c < 64; ++c) dot += w[r][c] * w[s][c];
        ASSERT_NEAR(dot, r == s ? 1.0 : 0.0, 1e-12) << to_string(kind);
      }
    }
    const auto x = gaussian_noise(777, rng);
    double e = 0.0;
    for (double v : x) e += v * v;
    EXPECT_NEAR(dwt(x, 6, kind).energy(), e, 1e-8 * e);
  }
}

TEST(Correlation, SelfAndSignFlip) {
  std::mt19937_64 rng(8);
  const auto a = gaussian_noise(900, rng);
  std::vector<double> neg(a);
  for (auto& v : neg) v = -v;
  const auto ep = make_epoch({a, neg}, 500.0);
  const auto r = channel_correlations(ep, {{0, 0}, {0, 1}});
  EXPECT_NEAR(r[0], 1.0, 1e-12);
  EXPECT_NEAR(r[1], -1.0, 1e-12);
}

TEST(Correlation, ConstantChannelNamed) {
  std::mt19937_64 rng(9);
  const auto ep = make_epoch({gaussian_noise(900, rng), std::vector<double>(900, 3.0)}, 500.0, {"Fz", "Cz"});
  try {
    channel_correlations(ep, {{0, 1}});
    FAIL();
  } catch (const UndefinedError& e) {
    EXPECT_NE(std::string(e.what()).find("Cz"), std::string::npos);
  }
}

TEST(Correlation, MatrixIsPositiveSemidefinite) {
  std::mt19937_64 rng(10);
  std::vector<std::vector<double>> ch;
  for (int c = 0; c < 8; ++c) ch.push_back(gaussian_noise(900, rng));
  for (std::size_t i = 0; i < 900; ++i) ch[3][i] += ch[2][i];
  const auto ep = make_epoch(ch, 500.0);
  const auto pairs = all_channel_pairs(8);
  ASSERT_EQ(pairs.size(), 28u);
  const auto r = channel_correlations(ep, pairs);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(8, 8);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    m(static_cast<Eigen::Index>(pairs[p].first), static_cast<Eigen::Index>(pairs[p].second)) = r[p];
    m(static_cast<Eigen::Index>(pairs[p].second), static_cast<Eigen::Index>(pairs[p].first)) = r[p];
  }
  EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff(), -1e-9);
}

Epoch noise_epoch(const std::vector<std::string>& channels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> ch;
  for (std::size_t c = 0; c < channels.size(); ++c) {
    auto x = gaussian_noise(900, rng);
    const auto tone = sine(6.0 + static_cast<double>(c), 500.0, 900, 2.0);
    for (std::size_t i = 0; i < 900; ++i) x[i] += tone[i];
    ch.push_back(x);
  }
  return make_epoch(ch, 500.0, channels);
}

TEST(Extract, SingleChannelLayout) {
  const auto fv = extract_epoch_features(noise_epoch({"Cz"}, 11), ExtractConfig{});
  EXPECT_EQ(fv.values.size(), kPerChannelFeatures);
  std::map<FeatureFamily, std::size_t> per_family;
  for (const auto& n : fv.names) ++per_family[parse_feature_name(n).family];
  EXPECT_EQ(per_family[FeatureFamily::statistical_time], 5u);
  EXPECT_EQ(per_family[FeatureFamily::frequency], 16u);
  EXPECT_EQ(per_family[FeatureFamily::harmonic], 15u);
  EXPECT_EQ(per_family[FeatureFamily::wavelet], 16u);
}

TEST(Extract, NamesAreABijectionAndRunsAreBitIdentical) {
  const auto ep = noise_epoch(standard_montage(), 12);
  const auto a = extract_epoch_features(ep, ExtractConfig{});
  const auto b = extract_epoch_features(ep, ExtractConfig{});
  EXPECT_EQ(a.names, feature_names(ep.channels, ExtractConfig{}));
  EXPECT_EQ(std::set<std::string>(a.names.begin(), a.names.end()).size(), a.names.size());
  EXPECT_EQ(a.values, b.values);
  for (double v : a.values) EXPECT_TRUE(std::isfinite(v));
  for (const auto& n : a.names) {
    const auto id = parse_feature_name(n);
    EXPECT_EQ(id.channels.size(), id.family == FeatureFamily::correlation ? 2u : 1u) << n;
  }
}

TEST(Extract, FamilyToggleRemovesOnlyItsColumns) {
  const auto ep = noise_epoch({"Fz", "Cz", "Pz"}, 13);
  ExtractConfig no_wavelet;
  no_wavelet.families.wavelet = false;
  const auto all = extract_epoch_features(ep, ExtractConfig{});
  const auto some = extract_epoch_features(ep, no_wavelet);
  EXPECT_EQ(some.values.size(), all.values.size() - 3 * 16);
  std::size_t j = 0;
  for (std::size_t i = 0; i < all.names.size(); ++i) {
    if (parse_feature_name(all.names[i]).family == FeatureFamily::wavelet) continue;
    ASSERT_EQ(some.names[j], all.names[i]);
    EXPECT_EQ(some.values[j], all.values[i]);
    ++j;
  }
}

TEST(Extract, UndefinedFeatureCarriesItsName) {
  auto ep = noise_epoch({"Fz", "Cz"}, 14);
  ep.samples.col(1).setConstant(1.0);
  try {
    extract_epoch_features(ep, ExtractConfig{});
    FAIL();
  } catch (const UndefinedError& e) {
    EXPECT_NE(std::string(e.what()).find("Cz"), std::string::npos) << e.what();
  }
  const auto tolerant = extract_epoch_features_tolerant(ep, ExtractConfig{});
  EXPECT_FALSE(tolerant.missing.empty());
  for (std::size_t i = 0; i < tolerant.features.values.size(); ++i) {
    const bool missing = std::find(tolerant.missing.begin(), tolerant.missing.end(), tolerant.features.names[i]) !=
                         tolerant.missing.end();
    EXPECT_EQ(std::isnan(tolerant.features.values[i]), missing) << tolerant.features.names[i];
  }
}

TEST(Extract, UnknownNamesRejected) {
  EXPECT_THROW(parse_feature_name("nonsense"), ParameterError);
}

}  // namespace
}  // namespace famfeat
