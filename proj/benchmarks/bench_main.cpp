#include <benchmark/benchmark.h>

#include "entrogeo/composition.hpp"
#include "entrogeo/divergence.hpp"
#include "entrogeo/formal_group.hpp"
#include "entrogeo/geometry.hpp"
#include "entrogeo/hf_entropy.hpp"
#include "entrogeo/maxent.hpp"
#include "entrogeo/sampling.hpp"

using namespace entrogeo;

namespace {

ProbDist sample(std::size_t w) {
  Rng rng = make_rng(1);
  return random_distribution(rng, w);
}

std::vector<double> interior(std::size_t w) {
  Rng rng = make_rng(2);
  const auto weights = random_interior_weights(rng, w + 1);
  return {weights.begin() + 1, weights.end()};
}

void BM_SharmaMittal(benchmark::State& state) {
  const auto pair = sharma_mittal(0.5, 0.7);
  const auto p = sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eval_entropy(pair, p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SharmaMittal)->RangeMultiplier(8)->Range(8, 4096)->Complexity();

void BM_GroupCompose(benchmark::State& state) {
  const auto m = static_cast<unsigned>(state.range(0));
  std::vector<EntropyFunctional> parts;
  for (std::size_t i = 0; i < (std::size_t{1} << m); ++i) {
    parts.push_back(as_functional(sharma_mittal(0.4 + 0.45 * static_cast<double>(i), 0.7)));
  }
  const auto z = group_compose(parts, expm1_conjugator(), m);
  const auto p = sample(16);
  for (auto _ : state) benchmark::DoNotOptimize(z.entropy(p));
}
BENCHMARK(BM_GroupCompose)->DenseRange(0, 3);

void BM_GroupAxioms(benchmark::State& state) {
  const auto law = q_sum(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(check_group_axioms(law, {0.0, 1.0}, 10000, 7));
}
BENCHMARK(BM_GroupAxioms)->Unit(benchmark::kMillisecond);

void BM_DivMetric(benchmark::State& state) {
  const auto w = static_cast<std::size_t>(state.range(0));
  const auto model = simplex_model(w);
  const auto xi = interior(w);
  const auto d = sm_functional(0.5, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(div_metric(d, model, xi));
}
BENCHMARK(BM_DivMetric)->DenseRange(1, 5)->Unit(benchmark::kMicrosecond);

void BM_DivConnections(benchmark::State& state) {
  const auto w = static_cast<std::size_t>(state.range(0));
  const auto model = simplex_model(w);
  const auto xi = interior(w);
  const auto d = sm_functional(0.5, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(div_connections(d, model, xi));
}
BENCHMARK(BM_DivConnections)->DenseRange(1, 5)->Unit(benchmark::kMicrosecond);

void BM_Duality(benchmark::State& state) {
  const auto w = static_cast<std::size_t>(state.range(0));
  const auto model = simplex_model(w);
  const auto xi = interior(w);
  const auto d = kl_functional();
  for (auto _ : state) benchmark::DoNotOptimize(duality_residual(d, model, xi));
}
BENCHMARK(BM_Duality)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

void BM_MaxentGibbs(benchmark::State& state) {
  const auto w = static_cast<std::size_t>(state.range(0));
  std::vector<double> a(w);
  for (std::size_t i = 0; i < w; ++i) a[i] = static_cast<double>(i);
  const ConstraintSet constraints({{a, 0.4 * static_cast<double>(w - 1)}});
  const auto s = as_functional(shannon());
  for (auto _ : state) benchmark::DoNotOptimize(maximize(s, w, constraints));
}
BENCHMARK(BM_MaxentGibbs)->Arg(3)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_MaxentNE2(benchmark::State& state) {
  const auto s = ne2_functional(0.3, 0.7);
  const ConstraintSet constraints({{{1.0, 0.0, 2.0, 0.5}, 0.9}});
  for (auto _ : state) benchmark::DoNotOptimize(maximize(s, 4, constraints));
}
BENCHMARK(BM_MaxentNE2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
