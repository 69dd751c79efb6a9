#include <benchmark/benchmark.h>

#include "algparity/brauer.hpp"
#include "algparity/exact_linalg.hpp"
#include "algparity/instance_gen.hpp"
#include "algparity/pgroup.hpp"
#include "algparity/serialize.hpp"

using namespace algparity;

static void BM_SmithNormalForm(benchmark::State& state) {
  Rng rng(42);
  const auto n = static_cast<std::size_t>(state.range(0));
  IntMatrix a = random_matrix(rng, n, n, 50);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_Chi(benchmark::State& state) {
  GenConfig cfg;
  cfg.seed = 7;
  cfg.p = 5;
  cfg.max_factors = 3;
  cfg.max_exponent = 2;
  auto inst = gen_pgroup(cfg);
  const auto method = state.range(0) == 0 ? ChiMethod::fast : ChiMethod::bruteforce;
  for (auto _ : state) benchmark::DoNotOptimize(chi(inst, method));
}
BENCHMARK(BM_Chi)->Arg(0)->Arg(1);

static void BM_BettsOrder(benchmark::State& state) {
  GenConfig cfg;
  cfg.max_rank = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  auto lattice = gen_paired_lattice(rng, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(betts_order(lattice));
}
BENCHMARK(BM_BettsOrder)->Arg(4)->Arg(8);

static void BM_DiscriminantCongruence(benchmark::State& state) {
  GenConfig cfg;
  cfg.seed = 11;
  auto pair = gen_paired_isogeny(cfg);
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_prop_3_5(pair.source, pair.target, pair.phi, pair.phi_t, Integer(3)));
}
BENCHMARK(BM_DiscriminantCongruence);

static void BM_RealizeS3(benchmark::State& state) {
  auto data = load_group("S3");
  auto theta = find_brauer_relations(data.group).front();
  for (auto _ : state) benchmark::DoNotOptimize(realize(data.group, theta));
}
BENCHMARK(BM_RealizeS3);
BENCHMARK_MAIN();
