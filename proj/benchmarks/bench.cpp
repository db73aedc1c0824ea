#include <benchmark/benchmark.h>

#include <numeric>
#include <string>

#include "quantum3/complex3.hpp"
#include "quantum3/hempel.hpp"
#include "quantum3/seifert.hpp"
#include "quantum3/statesum.hpp"

using namespace quantum3;

namespace {

const complex3::Triangulation& sphere() {
  static const auto t =
      complex3::load_triangulation_file(std::string(QUANTUM3_BENCH_ASSET_DIR) + "/s3_boundary4simplex.json");
  return t;
}

const complex3::Triangulation& product() {
  static const auto t = complex3::load_triangulation_file(std::string(QUANTUM3_BENCH_ASSET_DIR) + "/s2xs1.json");
  return t;
}

void BM_SphereExact(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(statesum::tv(sphere(), r, 1).value);
}
BENCHMARK(BM_SphereExact)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

void BM_ProductFloatBatch(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  std::vector<long> s_values;
  for (long s = 1; s < 2 * r; ++s) {
    if (std::gcd(s, static_cast<long>(r)) == 1) s_values.push_back(s);
  }
  statesum::Options opt;
  opt.arithmetic = statesum::Arithmetic::kFloat;
  for (auto _ : state) benchmark::DoNotOptimize(statesum::tv_float_batch(product(), r, false, s_values, opt));
}
BENCHMARK(BM_ProductFloatBatch)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_TetWeight(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(statesum::weight_tet({2, 2, 2, 2, 2, 2}, r));
}
BENCHMARK(BM_TetWeight)->Arg(5)->Arg(7)->Arg(9);

void BM_HansenRatio(benchmark::State& state) {
  const auto sym = seifert::parse_symbol("0; 7/1, 7/1, 7/-1, 7/-1");
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(seifert::tv_seifert(sym, r));
}
BENCHMARK(BM_HansenRatio)->Arg(7)->Arg(21)->Arg(49);

void BM_DedekindSum(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(seifert::dedekind_sum(1234567, 7654321));
}
BENCHMARK(BM_DedekindSum);

void BM_HempelReport(benchmark::State& state) {
  const auto sym = seifert::parse_symbol("0; 5/1, 5/1, 5/-2");
  for (auto _ : state) benchmark::DoNotOptimize(hempel::report(sym, 2, static_cast<int>(state.range(0))).rows.size());
}
BENCHMARK(BM_HempelReport)->Arg(12)->Arg(30);

}  // namespace

BENCHMARK_MAIN();
