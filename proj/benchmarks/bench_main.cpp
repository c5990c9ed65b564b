#include "cfk/constraints.hpp"
#include "support.hpp"

#include <benchmark/benchmark.h>

using namespace cfk;

namespace {

Document sv_doc() {
  return test::load_fixture("sv", test::params({{"a", "2"}, {"b", "1"}, {"c", "1/2"}}));
}

void BM_PolyMultiply(benchmark::State& state) {
  std::mt19937 rng(1);
  const std::vector<VarId> vars = {VarId::D(), VarId::L1(), VarId::L2()};
  auto p = test::random_poly(rng, vars, static_cast<unsigned>(state.range(0)), 12);
  auto q = test::random_poly(rng, vars, static_cast<unsigned>(state.range(0)), 12);
  for (auto _ : state) benchmark::DoNotOptimize(p * q);
}
BENCHMARK(BM_PolyMultiply)->Arg(2)->Arg(4)->Arg(8);

void BM_SvJacobi(benchmark::State& state) {
  auto doc = sv_doc();
  const auto& sv = *test::algebra(doc, "SV");
  for (auto _ : state) benchmark::DoNotOptimize(check_jacobi(sv));
}
BENCHMARK(BM_SvJacobi)->Unit(benchmark::kMillisecond);

void BM_SvCompile(benchmark::State& state) {
  auto doc = sv_doc();
  const auto& mp = test::pair(doc, "P");
  const auto ansatz = AnsatzSpec::uniform(2, 2, static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compile_deformation_constraints(mp, ansatz));
}
BENCHMARK(BM_SvCompile)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
