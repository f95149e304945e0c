#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "ostat/albin.hpp"
#include "ostat/comparison.hpp"
#include "ostat/fft.hpp"
#include "ostat/gaussian_paths.hpp"
#include "ostat/processes.hpp"
#include "ostat/random.hpp"

namespace {

void BM_Normals(benchmark::State& state) {
  ostat::RandomStream s(1, 0);
  std::vector<double> out(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    s.fill_normal(out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Normals)->Arg(1 << 12)->Arg(1 << 16);

void BM_InverseFft(benchmark::State& state) {
  ostat::RealInverseFft fft(ostat::next_fft_size(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    auto spec = fft.spectrum();
    for (auto& c : spec) c = {1.0, 0.5};
    fft.execute();
    benchmark::DoNotOptimize(fft.signal().data());
  }
}
BENCHMARK(BM_InverseFft)->Arg(2000)->Arg(20000)->Arg(400000);

void BM_BuildEmbedding(benchmark::State& state) {
  const ostat::CovarianceModel model{ostat::CovarianceModel::Family::stable_exponential, 1.0, 1.0};
  const ostat::UniformGrid grid{0.01, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(ostat::build_embedding(model, grid));
}
BENCHMARK(BM_BuildEmbedding)->Arg(1001)->Arg(100001);

void BM_StationaryPath(benchmark::State& state) {
  const ostat::CovarianceModel model{ostat::CovarianceModel::Family::stable_exponential, 1.0, 1.0};
  const ostat::UniformGrid grid{0.01, static_cast<std::size_t>(state.range(0))};
  ostat::StationarySampler sampler(std::make_shared<const ostat::SpectralEmbedding>(ostat::build_embedding(model, grid)));
  std::vector<double> out(grid.n_points);
  ostat::RandomStream s(2, 0);
  for (auto _ : state) {
    sampler.sample(s, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StationaryPath)->Arg(1001)->Arg(4001)->Arg(100001);

void BM_LimitFieldSup(benchmark::State& state) {
  ostat::LimitFieldSampler sampler(1.0, 0.01, 3000);
  std::uint64_t rep = 0;
  for (auto _ : state) {
    auto s = ostat::split_stream(3, rep++);
    benchmark::DoNotOptimize(sampler.sample_sup(static_cast<int>(state.range(0)), s));
  }
}
BENCHMARK(BM_LimitFieldSup)->Arg(1)->Arg(2);

void BM_EstimateAlbin(benchmark::State& state) {
  ostat::AlbinConfig cfg;
  cfg.grid_a = 0.04;
  cfg.reps = 2000;
  cfg.seed = 4;
  for (auto _ : state) benchmark::DoNotOptimize(ostat::estimate_albin(cfg, 1));
  state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_EstimateAlbin)->Unit(benchmark::kMillisecond);

void BM_AStar(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ostat::a_star(0.9, -0.3, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_AStar)->Arg(1)->Arg(3);

void BM_VerifyBound(benchmark::State& state) {
  Eigen::MatrixXd s1(3, 3), s0(3, 3);
  s1 << 1, 0.4, -0.2, 0.4, 1, 0.1, -0.2, 0.1, 1;
  s0 << 1, -0.1, 0.3, -0.1, 1, 0.5, 0.3, 0.5, 1;
  const ostat::GaussianPair pair{s1, s0};
  const std::vector<double> u{1.0, 1.5, 2.0};
  const ostat::RandomStream stream(5, 0);
  for (auto _ : state) benchmark::DoNotOptimize(ostat::verify_bound(pair, u, 3, 3, 100000, stream, ostat::BoundKind::orderstat, 1));
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_VerifyBound)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
