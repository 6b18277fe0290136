#include <random>

#include <benchmark/benchmark.h>

#include "famfeat/features/extract.hpp"
#include "famfeat/montage.hpp"
#include "famfeat/preprocess/butterworth.hpp"
#include "famfeat/synth/synth.hpp"

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> x(n);
  for (auto& v : x) v = g(rng);
  return x;
}

void BM_Filtfilt(benchmark::State& state) {
  const famfeat::BandpassFilter f(0.5, 35.0, 500.0);
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(f.filtfilt(x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Filtfilt)->Arg(900)->Arg(500 * 60);

void BM_Welch(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(famfeat::estimate_psd(x, 500.0));
}
BENCHMARK(BM_Welch)->Arg(900)->Arg(9000);

void BM_Dwt(benchmark::State& state) {
  const auto x = noise(900, 3);
  for (auto _ : state) benchmark::DoNotOptimize(famfeat::dwt_band_moments(x, 500.0));
}
BENCHMARK(BM_Dwt);

// One 21-channel epoch through every feature family.
void BM_ExtractEpoch(benchmark::State& state) {
  const auto plan = famfeat::BandPlan::standard();
  const auto ep = famfeat::synth_band_noise_epoch(famfeat::dominant_profile(plan, "alpha"), 500.0,
                                                  famfeat::standard_montage(), 4);
  const famfeat::ExtractConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(famfeat::extract_epoch_features(ep, config));
}
BENCHMARK(BM_ExtractEpoch)->Unit(benchmark::kMillisecond);

}  // namespace
