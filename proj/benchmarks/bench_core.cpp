#include "eulat/analysis.hpp"
#include "eulat/bump.hpp"
#include "eulat/construction.hpp"
#include "eulat/galerkin.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace eulat;

GeneratorData demo_generator(int K, int M) {
  LatticeFrame frame;
  return calibrate_initial_data(
      frame, Box{K, M}, [](Vec3i xi) { return std::exp(-norm(xi)); },
      [](Vec3i xi) { return std::pow(norm(xi), -0.3); }, BumpSpec::half(1.0));
}

void BM_build_plane_double(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  LatticeFrame frame;
  Box box{K, K};
  auto gen = demo_generator(K, K);
  for (auto _ : state) {
    auto sol = build_solution<std::complex<double>>(frame, gen, box);
    benchmark::DoNotOptimize(sol.modes.size());
  }
}
BENCHMARK(BM_build_plane_double)->Arg(8)->Arg(12)->Arg(16);

void BM_build_plane_exact(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  LatticeFrame frame;
  Box box{K, K};
  auto gen = demo_generator(K, K);
  for (auto _ : state) {
    auto sol = build_solution<ExactScalar>(frame, gen, box);
    benchmark::DoNotOptimize(sol.modes.size());
  }
}
BENCHMARK(BM_build_plane_exact)->Arg(8)->Arg(12);

void BM_bump_derivative(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  BumpOracle f(BumpSpec::half(1.0));
  double t = 1.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.derivative(n, t));
    t += 1e-9;
  }
}
BENCHMARK(BM_bump_derivative)->Arg(1)->Arg(8)->Arg(32);

void BM_plane_rhs(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  LatticeFrame frame;
  Box box{K, K};
  PlaneSystem sys(frame, box);
  auto gen = demo_generator(K, K);
  auto sol = build_solution<std::complex<double>>(frame, gen, box);
  BumpOracle f(gen.bump);
  CVec u(3 * sys.size());
  for (const auto& [km, mode] : sol.modes) {
    auto value =
        mode.evaluate(2.0, [&](int n, double t) { return f.derivative(n, t); });
    int idx = sys.index(km.first, km.second);
    for (int c = 0; c < 3; ++c) u[3 * idx + c] = value[c];
  }
  CVec du;
  for (auto _ : state) {
    sys.rhs(2.0, u, du);
    benchmark::DoNotOptimize(du.data());
  }
}
BENCHMARK(BM_plane_rhs)->Arg(8)->Arg(12)->Arg(16);

void BM_entropy_curve(benchmark::State& state) {
  const int hi = static_cast<int>(state.range(0));
  auto weight = [](long long m) {
    double a = std::pow(static_cast<double>(m), -0.3);
    return a * a;
  };
  for (auto _ : state) {
    auto curve = entropy_curve(weight, 1.0, 2.0, DyadicRange{10, hi});
    benchmark::DoNotOptimize(curve.H.data());
  }
}
BENCHMARK(BM_entropy_curve)->Arg(18)->Arg(22)->Arg(24);

}  // namespace

BENCHMARK_MAIN();
