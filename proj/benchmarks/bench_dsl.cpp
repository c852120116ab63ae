#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "csa/dsl/barcode.hpp"
#include "csa/dsl/document.hpp"
#include "csa/dsl/lint.hpp"

namespace {

std::string soup_text() {
  std::ifstream in(CSA_SAMPLES_DIR "/products/tomato-soup.json", std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void BM_Parse(benchmark::State& state) {
  const auto text = soup_text();
  for (auto _ : state) benchmark::DoNotOptimize(csa::dsl::parse_resource(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Parse);

void BM_Serialize(benchmark::State& state) {
  const auto r = csa::dsl::parse_resource(soup_text());
  for (auto _ : state) benchmark::DoNotOptimize(csa::dsl::serialize_resource(r));
}
BENCHMARK(BM_Serialize);

void BM_Lint(benchmark::State& state) {
  const auto r = csa::dsl::parse_resource(soup_text());
  for (auto _ : state) benchmark::DoNotOptimize(csa::dsl::lint(r));
}
BENCHMARK(BM_Lint);

void BM_ValidateBarcode(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(csa::dsl::validate_barcode("4006381333931"));
}
BENCHMARK(BM_ValidateBarcode);

}  // namespace

BENCHMARK_MAIN();
