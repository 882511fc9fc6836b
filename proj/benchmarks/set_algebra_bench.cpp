#include <benchmark/benchmark.h>

#include "ergolab/checks/random_sets.hpp"
#include "ergolab/parse.hpp"
#include "ergolab/sampling.hpp"
#include "ergolab/set_class.hpp"
#include "ergolab/system.hpp"

namespace {

using namespace ergolab;

void BM_CylinderUnion(benchmark::State& state) {
  const auto level = static_cast<std::uint32_t>(state.range(0));
  const System T = System::odometer(2);
  CounterRng rng(1);
  const SetClass a = gen::cylinder_union(T.space(), level, rng);
  const SetClass b = gen::cylinder_union(T.space(), level + 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(unite(a, b));
}
BENCHMARK(BM_CylinderUnion)->DenseRange(2, 12, 2);

void BM_CylinderDistance(benchmark::State& state) {
  const auto level = static_cast<std::uint32_t>(state.range(0));
  const System T = System::odometer(3);
  CounterRng rng(2);
  const SetClass a = gen::cylinder_union(T.space(), level, rng);
  const SetClass b = gen::cylinder_union(T.space(), level, rng);
  for (auto _ : state) benchmark::DoNotOptimize(distance(a, b));
}
BENCHMARK(BM_CylinderDistance)->DenseRange(1, 7, 2);

void BM_IntervalSymdiff(benchmark::State& state) {
  const System T = System::rotation(parse_scalar("(sqrt(5) - 1)/2"));
  SetClass a = parse_set_expr("interval(0, 1/3)", T.space());
  for (std::int64_t i = 0; i < state.range(0); ++i) a = unite(a, apply(T, a));
  const SetClass b = apply(T, a);
  for (auto _ : state) benchmark::DoNotOptimize(symdiff(a, b));
}
BENCHMARK(BM_IntervalSymdiff)->DenseRange(0, 3);

void BM_ParseSetExpr(benchmark::State& state) {
  const System T = System::odometer(2);
  const std::string text = R"(~(cyl("0110") | cyl("10")) & (cyl("1") ^ cyl("001")) \ cyl("111"))";
  for (auto _ : state) benchmark::DoNotOptimize(parse_set_expr(text, T.space()));
}
BENCHMARK(BM_ParseSetExpr);

}  // namespace
