#include <benchmark/benchmark.h>

#include "confdim/dimension.hpp"
#include "confdim/martingale.hpp"
#include "confdim/profile.hpp"
#include "confdim/qs_map.hpp"

using namespace confdim;

namespace {

std::shared_ptr<const MeasureOracle> bern_mid() {
  MeasureSpec spec;
  spec.variant = MeasureVariant::bernoulli4;
  spec.block_lo = 0;
  spec.block_hi = 0;
  spec.bern_p = {Rational(0), Rational(1, 2), Rational(1, 2), Rational(0)};
  return std::make_shared<MeasureOracle>(std::move(spec));
}

std::shared_ptr<const MeasureOracle> lebesgue() {
  MeasureSpec spec;
  spec.variant = MeasureVariant::lebesgue;
  return std::make_shared<MeasureOracle>(std::move(spec));
}

void BM_level_profile(benchmark::State& state) {
  auto tree = build_tree(bern_mid(), 0, 4, default_rho(0.5));
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto profile = level_profile(tree, n);
    benchmark::DoNotOptimize(profile.cells.size());
  }
}
BENCHMARK(BM_level_profile)->Arg(100)->Arg(400)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_covering_sum(benchmark::State& state) {
  auto tree = build_tree(bern_mid(), 0, 4, default_rho(0.5));
  auto profile = level_profile(tree, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto c = covering_sum_log(profile, tree.rho(), 0.5, true);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_covering_sum)->Arg(400)->Arg(1000);

void BM_f_eval_descent(benchmark::State& state) {
  auto tree = build_tree(lebesgue(), 0, 12, default_rho(1));
  Rational t(1, Integer(1) << 24); // depth-12 grid point
  for (auto _ : state) {
    Rational y = f_eval(tree, t);
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(BM_f_eval_descent);

void BM_walk_grid(benchmark::State& state) {
  auto tree = build_tree(lebesgue(), 0, 8, default_rho(1));
  for (auto _ : state) {
    Rational last = 0;
    tree.walk_grid(8, [&](std::uint64_t, const Rational&, const Rational& m) { last = m; });
    benchmark::DoNotOptimize(last);
  }
}
BENCHMARK(BM_walk_grid)->Unit(benchmark::kMillisecond);

void BM_submartingale(benchmark::State& state) {
  auto tree = build_tree(bern_mid(), 0, 12, default_rho(1));
  for (auto _ : state) {
    auto rep = submartingale_check(tree, 12);
    benchmark::DoNotOptimize(rep.nodes_checked);
  }
}
BENCHMARK(BM_submartingale)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
