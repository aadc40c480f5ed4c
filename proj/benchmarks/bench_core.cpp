#include <benchmark/benchmark.h>

#include "forminv/inversion.hpp"
#include "forminv/symmetric.hpp"
#include "forminv/trees.hpp"

namespace {

using namespace forminv;

// Dense polynomial with every monomial of degree in [lo, hi] present.
Poly dense_poly(int nvars, int lo, int hi) {
  Poly p(nvars);
  std::vector<int> e(static_cast<std::size_t>(nvars), 0);
  auto emit = [&](auto&& self, int var, int left, int used) -> void {
    if (var == nvars - 1) {
      e[static_cast<std::size_t>(var)] = left;
      int deg = used + left;
      if (deg >= lo)
        p.add_term(Monomial(e),
                   GaussianRational(Rational(BigInt(deg + 1), BigInt(var + 2))));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[static_cast<std::size_t>(var)] = k;
      self(self, var + 1, left - k, used + k);
    }
  };
  for (int d = lo; d <= hi; ++d) emit(emit, 0, d, 0);
  return p;
}

FormalMap dense_map(int nvars, int trunc) {
  std::vector<TruncatedSeries> comps;
  for (int i = 0; i < nvars; ++i)
    comps.push_back(TruncatedSeries(dense_poly(nvars, 2, trunc), trunc));
  return FormalMap(std::move(comps));
}

void BM_MulWindow(benchmark::State& state) {
  int trunc = static_cast<int>(state.range(0));
  Poly a = dense_poly(3, 2, trunc);
  for (auto _ : state) benchmark::DoNotOptimize(mul_window(a, a, trunc));
}
BENCHMARK(BM_MulWindow)->Arg(8)->Arg(12);

void BM_Compose(benchmark::State& state) {
  int trunc = static_cast<int>(state.range(0));
  FormalMap h = dense_map(2, trunc);
  InverseExpansion expansion = expand_inverse(h, trunc - 1);
  FormalMap g = assemble_inverse(expansion, GaussianRational(1));
  FormalMap f = FormalMap::identity(2, trunc) - GaussianRational(1) * h;
  for (auto _ : state) benchmark::DoNotOptimize(compose(g, f));
}
BENCHMARK(BM_Compose)->Arg(8)->Arg(10);

void BM_ExpandInverse(benchmark::State& state) {
  int trunc = static_cast<int>(state.range(0));
  FormalMap h = dense_map(2, trunc);
  for (auto _ : state)
    benchmark::DoNotOptimize(expand_inverse(h, trunc - 1));
}
BENCHMARK(BM_ExpandInverse)->Arg(8)->Arg(10);

void BM_ExpandPotential(benchmark::State& state) {
  int trunc = static_cast<int>(state.range(0));
  TruncatedSeries p(dense_poly(2, 2, trunc), trunc);
  for (auto _ : state)
    benchmark::DoNotOptimize(expand_potential(p, trunc - 1));
}
BENCHMARK(BM_ExpandPotential)->Arg(8)->Arg(12);

void BM_TreeExpansion(benchmark::State& state) {
  int torder = static_cast<int>(state.range(0));
  Poly cubic(1);
  cubic.add_term(Monomial{3}, GaussianRational(Rational(BigInt(1), BigInt(3))));
  TruncatedSeries p(cubic, 14);
  for (auto _ : state) benchmark::DoNotOptimize(tree_expansion(p, torder));
}
BENCHMARK(BM_TreeExpansion)->Arg(5)->Arg(7);

}  // namespace

BENCHMARK_MAIN();
