#include <numeric>
#include <random>

#include <benchmark/benchmark.h>

#include "famfeat/classify/svm.hpp"
#include "famfeat/selection/cascade.hpp"

namespace {

struct Data {
  Eigen::MatrixXd x;
  std::vector<int> y;
};

Data two_gaussians(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Data out{Eigen::MatrixXd(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d)), std::vector<int>(n)};
  for (Eigen::Index i = 0; i < out.x.rows(); ++i) {
    const int label = i % 2 == 0 ? 1 : -1;
    out.y[static_cast<std::size_t>(i)] = label;
    for (Eigen::Index j = 0; j < out.x.cols(); ++j) out.x(i, j) = g(rng) + (j == 0 ? 0.8 * label : 0.0);
  }
  return out;
}

void BM_TrainSvm(benchmark::State& state) {
  const auto d = two_gaussians(static_cast<std::size_t>(state.range(0)), 20, 1);
  for (auto _ : state) benchmark::DoNotOptimize(famfeat::train_svm(d.x, d.y, 4.0, 1.0));
}
BENCHMARK(BM_TrainSvm)->Arg(160)->Arg(400)->Unit(benchmark::kMillisecond);

// One wrapper evaluation: 5-fold CV of a 20-column subset on 200 rows.
void BM_SubsetEvaluator(benchmark::State& state) {
  const auto d = two_gaussians(200, 100, 2);
  famfeat::FeatureMatrix fm;
  fm.values = d.x;
  for (std::size_t j = 0; j < 100; ++j) fm.names.push_back("c" + std::to_string(j));
  for (int v : d.y) fm.labels.push_back(v > 0 ? famfeat::Familiarity::unfamiliar : famfeat::Familiarity::familiar);
  const famfeat::SvmSubsetEvaluator eval(fm, famfeat::Familiarity::unfamiliar, famfeat::Familiarity::familiar,
                                         famfeat::CascadeConfig{});
  std::vector<std::size_t> cols(static_cast<std::size_t>(state.range(0)));
  std::iota(cols.begin(), cols.end(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(eval(cols));
}
BENCHMARK(BM_SubsetEvaluator)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
