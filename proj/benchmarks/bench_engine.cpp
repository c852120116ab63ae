#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "csa/dsl/document.hpp"
#include "csa/engine/workflow.hpp"
#include "csa/host/session_host.hpp"

namespace {

namespace ev = csa::engine::event;
namespace act = csa::sim::action;

csa::dsl::CookingInstructionSet soup_set() {
  std::ifstream in(CSA_SAMPLES_DIR "/products/tomato-soup.json", std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return csa::dsl::parse_resource(s.str()).instruction_sets.front();
}

// One engine step on an idle session: the cost of handling an event the
// current instruction does not wait for.
void BM_StepIgnoredEvent(benchmark::State& state) {
  const auto r = csa::engine::init_session(soup_set());
  for (auto _ : state) benchmark::DoNotOptimize(csa::engine::step(r.state, ev::UserConfirm{}));
}
BENCHMARK(BM_StepIgnoredEvent);

void BM_InitSession(benchmark::State& state) {
  const auto set = soup_set();
  for (auto _ : state) benchmark::DoNotOptimize(csa::engine::init_session(set));
}
BENCHMARK(BM_InitSession);

// Engine and simulator together through the whole 120 s heating step at
// the default tick.
void BM_HostHeatingStep(benchmark::State& state) {
  const auto set = soup_set();
  for (auto _ : state) {
    csa::host::SessionHost h(set);
    h.apply(csa::sim::Action{act::OpenDoor{}});
    h.apply(csa::sim::Action{act::PlaceLoad{}});
    h.apply(csa::sim::Action{act::CloseDoor{}});
    benchmark::DoNotOptimize(h.apply(csa::host::input::Advance{120'000}));
  }
}
BENCHMARK(BM_HostHeatingStep)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
