#include <benchmark/benchmark.h>

#include <random>

#include "homcirc/decomposition.hh"
#include "homcirc/immanant.hh"
#include "homcirc/oracle.hh"
#include "homcirc/synth.hh"
#include "homcirc/wl.hh"

using namespace homcirc;

namespace {

auto k33() -> BipartitePattern {
  BipartitePattern f;
  f.left_size = f.right_size = 3;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) f.edges.push_back({a, b, 1});
  f.normalize();
  return f;
}

auto c6() -> BipartitePattern {
  BipartitePattern f{3, 3, {{0, 0, 1}, {0, 1, 1}, {1, 1, 1},
                            {1, 2, 1}, {2, 2, 1}, {2, 0, 1}}};
  f.normalize();
  return f;
}

auto rand_host(int n, int m, uint64_t seed) -> WeightedHost {
  std::mt19937_64 rng(seed);
  WeightedHost h(n, m);
  for (auto& e : h.entries) e = random_rat(rng);
  return h;
}

void bm_synth_hom_k33(benchmark::State& state) {
  auto f = k33();
  auto td = exact_treewidth(f).witness;
  int n = int(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(synth_hom(f, td, n, n));
}
BENCHMARK(bm_synth_hom_k33)->Arg(3)->Arg(4)->Arg(5);

void bm_eval_hom_k33(benchmark::State& state) {
  auto f = k33();
  int n = int(state.range(0));
  auto rep = synth_hom(f, exact_treewidth(f).witness, n, n);
  auto h = rand_host(n, n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(rep.circuit.evaluate(h));
}
BENCHMARK(bm_eval_hom_k33)->Arg(3)->Arg(4)->Arg(5);

void bm_brute_hom_k33(benchmark::State& state) {
  auto f = k33();
  int n = int(state.range(0));
  auto h = rand_host(n, n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(brute_hom(f, h));
}
BENCHMARK(bm_brute_hom_k33)->Arg(3)->Arg(4)->Arg(5);

void bm_sub_moebius_c6(benchmark::State& state) {
  auto f = c6();
  int n = int(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(synth_sub_moebius(f, n, n));
}
BENCHMARK(bm_sub_moebius_c6)->Arg(3)->Arg(4);

void bm_exact_treewidth(benchmark::State& state) {
  auto f = k33();
  for (auto _ : state) benchmark::DoNotOptimize(exact_treewidth(f));
}
BENCHMARK(bm_exact_treewidth);

void bm_immanant_synth(benchmark::State& state) {
  int n = int(state.range(0));
  IntegerPartition hook{{n - 1, 1}};
  for (auto _ : state) benchmark::DoNotOptimize(synth_immanant(hook, 4));
}
BENCHMARK(bm_immanant_synth)->Arg(3)->Arg(4);

void bm_determinant_eval(benchmark::State& state) {
  int n = int(state.range(0));
  auto c = synth_symmetric_determinant(n);
  auto a = rand_host(n, n, 13);
  for (auto _ : state) benchmark::DoNotOptimize(c.evaluate(a));
}
BENCHMARK(bm_determinant_eval)->Arg(4)->Arg(8);

void bm_cfi_wl(benchmark::State& state) {
  auto base = named_base("k33");
  auto g0 = cfi(base, std::vector<int>(6, 0)).graph;
  std::vector<int> odd(6, 0);
  odd[0] = 1;
  auto g1 = cfi(base, odd).graph;
  for (auto _ : state)
    benchmark::DoNotOptimize(k_wl_equivalent(g0, g1, 2));
}
BENCHMARK(bm_cfi_wl);

}  // namespace

BENCHMARK_MAIN();
