#include <benchmark/benchmark.h>

#include <string>

#include "portnet/patterns.hpp"
#include "portnet/specdsl.hpp"
#include "portnet/wellformed.hpp"

using namespace portnet;

namespace {

// A request/response server with k rounds, each offering two requests.
LabeledPortnet rounds(int k) {
  std::string s = "signature S {\n  signals ";
  for (int i = 0; i < k; ++i) s += (i ? ", " : "") + ("a" + std::to_string(i)) + ", b" + std::to_string(i);
  s += "\n  notifications ";
  for (int i = 0; i < k; ++i) s += (i ? ", " : "") + ("x" + std::to_string(i));
  s += "\n}\ninterface Rounds {\n";
  for (int i = 0; i < k; ++i) {
    const std::string here = "S" + std::to_string(i), next = "S" + std::to_string(i + 1);
    const std::string n = std::to_string(i);
    s += std::string("  ") + (i == 0 ? "initial " : "") + "state " + here + " {\n";
    s += "    on a" + n + " do x" + n + " goto " + next + "\n";
    s += "    on b" + n + " goto " + next + "\n  }\n";
  }
  s += "  final state S" + std::to_string(k) + " {}\n}\n";
  return lower(parse_spec(s));
}

LabeledPortnet race() {
  return lower(parse_spec(R"(signature R { signals cmd notifications notify, done }
interface Race {
  initial state R { do notify goto A  on cmd goto B }
  state A { on cmd goto C }
  state B { do notify goto C }
  state C { do done goto F }
  final state F {}
})"));
}

void BM_ExploreSync(benchmark::State& st) {
  const auto sp = build_sync_pattern(static_cast<std::size_t>(st.range(0)));
  std::size_t n = 0;
  for (auto _ : st) {
    auto g = explore(sp.system);
    n = g.size();
    benchmark::DoNotOptimize(n);
  }
  st.counters["states"] = static_cast<double>(n);
}
BENCHMARK(BM_ExploreSync)->DenseRange(1, 5);

void BM_WellFormed(benchmark::State& st) {
  const auto n = rounds(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(check_well_formed(n).well_formed);
  st.counters["transitions"] = static_cast<double>(n.open().transitions().size());
}
BENCHMARK(BM_WellFormed)->RangeMultiplier(2)->Range(4, 64);

void BM_MirrorComposition(benchmark::State& st) {
  const auto n = rounds(static_cast<int>(st.range(0)));
  const Mirror m = derive_full_mirror(n);
  const NetSystem sys = compose_system({{"server", n.open()}, {"client", m.client.open()}});
  for (auto _ : st) {
    auto g = explore(sys);
    benchmark::DoNotOptimize(check_weak_termination(g, sys.mf).ok);
  }
}
BENCHMARK(BM_MirrorComposition)->RangeMultiplier(2)->Range(4, 64);

void BM_Pmpp(benchmark::State& st) {
  const auto s = race();
  const std::vector<Mirror> ms(static_cast<std::size_t>(st.range(0)), derive_full_mirror(s));
  std::size_t n = 0;
  for (auto _ : st) {
    const NetSystem sys = build_pmpp(s, ms);
    auto g = explore(sys);
    n = g.size();
    benchmark::DoNotOptimize(check_weak_termination(g, sys.mf).ok);
  }
  st.counters["states"] = static_cast<double>(n);
}
BENCHMARK(BM_Pmpp)->DenseRange(1, 4);

}  // namespace

BENCHMARK_MAIN();
