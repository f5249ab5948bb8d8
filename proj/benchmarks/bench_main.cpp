#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "systolica/extremal.hpp"
#include "systolica/scene.hpp"
#include "systolica/shear_hessian.hpp"
#include "systolica/variational.hpp"
#include "systolica/verify.hpp"

namespace {

using namespace systolica;

shear::ChordConfig config(int n) {
  std::vector<shear::LeafCrossing> c;
  for (int i = 0; i < n; ++i) c.push_back({2.0 * (i + 1) / (n + 1), 0.4 + 2.0 * i / (n + 1)});
  return shear::ChordConfig(2.0, c);
}

void BM_HessianMatrix(benchmark::State& state) {
  const auto cfg = config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(shear::hessian_matrix(cfg));
}
BENCHMARK(BM_HessianMatrix)->DenseRange(0, 6, 2);

void BM_HessianMinEigenvalue(benchmark::State& state) {
  const auto H = shear::hessian_matrix(config(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
    benchmark::DoNotOptimize(es.eigenvalues()[0]);
  }
}
BENCHMARK(BM_HessianMinEigenvalue)->DenseRange(0, 6, 2);

void BM_FdSecondDerivative(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto cfg = config(n);
  const shear::FdOracle fd(shear::realize_scene(cfg), cfg);
  const shear::TransverseWeights w{std::vector<double>(n, 0.3)};
  const shear::EndpointVariation ev{0.2, 0.1, -0.1, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(fd.second(w, ev));
}
BENCHMARK(BM_FdSecondDerivative)->DenseRange(0, 6, 2);

void BM_HessianSweep(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify::hessian({static_cast<int>(state.range(0)), 1, std::nullopt}));
  }
}
BENCHMARK(BM_HessianSweep)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_LoopSolve(benchmark::State& state) {
  const extremal::SurfaceSignature sig{-static_cast<int>(state.range(0)), {0.0, 0.5}, {}, 0.0};
  const auto method = state.range(1) ? extremal::RootMethod::newton : extremal::RootMethod::bisection;
  for (auto _ : state) benchmark::DoNotOptimize(extremal::solve_loop_extreme(sig, method).x);
}
BENCHMARK(BM_LoopSolve)->ArgsProduct({{1, 4, 16}, {0, 1}});

void BM_ArcSolve(benchmark::State& state) {
  const extremal::SurfaceSignature sig{-2, {0.3, 0.7}, {1, 2}, 9.0};
  for (auto _ : state) benchmark::DoNotOptimize(extremal::solve_arc_extreme(sig).x);
}
BENCHMARK(BM_ArcSolve);

void BM_Eutaxy(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  verify::Rng rng(3);
  variational::VectorFamily f{dim, {}};
  for (int k = 0; k < 2 * dim + 2; ++k) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = rng.uniform(-1.0, 1.0);
    f.vectors.push_back(v);
  }
  for (auto _ : state) benchmark::DoNotOptimize(variational::is_eutactic(f).eutactic);
}
BENCHMARK(BM_Eutaxy)->RangeMultiplier(2)->Range(2, 16);

}  // namespace

BENCHMARK_MAIN();
