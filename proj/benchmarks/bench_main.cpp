#include <benchmark/benchmark.h>

#include "eop/family.hpp"
#include "eop/oprl.hpp"
#include "eop/zeros.hpp"

using namespace eop;

namespace {

const RectLattice& square() {
  static const RectLattice lat = lattice_from_branch_points(1, 0, -1);
  return lat;
}

EopFamily family(int maxN) {
  const auto& lat = square();
  const auto W = weight_example_w(0.5, 0.5);
  return build_family(W, make_anchor(lat.omega1, Contour::Gamma2, lat), lat, default_grid(Contour::Gamma2, lat, W), maxN);
}

}  // namespace

static void BM_WpAll(benchmark::State& st) {
  const auto& lat = square();
  cplx z(0.37, 0.61);
  for (auto _ : st) {
    benchmark::DoNotOptimize(wp_all(z, lat));
    z += cplx(1e-9, 0);
  }
}
BENCHMARK(BM_WpAll);

static void BM_Lattice(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(lattice_from_half_periods(0.5, 0.75));
}
BENCHMARK(BM_Lattice);

static void BM_BuildFamily(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(family(int(st.range(0))));
}
BENCHMARK(BM_BuildFamily)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_FindZeros(benchmark::State& st) {
  const auto fam = family(8);
  const auto& c = fam.F[std::size_t(st.range(0))];
  for (auto _ : st) benchmark::DoNotOptimize(find_zeros(c, Contour::Gamma2));
}
BENCHMARK(BM_FindZeros)->Arg(3)->Arg(8)->Unit(benchmark::kMicrosecond);

static void BM_JacobiCorollary(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(verify_corollary_jacobi(6, 0.5, 0.5));
}
BENCHMARK(BM_JacobiCorollary)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
