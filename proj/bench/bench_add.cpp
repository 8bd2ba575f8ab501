#include <benchmark/benchmark.h>

#include <random>

#include "carryfree/adder.hpp"
#include "carryfree/oracle.hpp"

using namespace carryfree;

namespace {

struct Inputs {
  AdderPipeline pipeline;
  DigitString x, y;
};

Inputs make_inputs(const BaseSpec& base, const Alphabet& alphabet, std::size_t length) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Digit> d(alphabet.lo(), alphabet.hi());
  std::vector<Digit> a(length), b(length);
  for (auto& v : a) v = d(rng);
  for (auto& v : b) v = d(rng);
  return {build_pipeline(make_system(base, alphabet)), DigitString(0, std::move(a)),
          DigitString(0, std::move(b))};
}

const Inputs& negabinary(std::size_t length) {
  static const Inputs in = make_inputs(BaseSpec::negative_integer(2), Alphabet(0, 2), length);
  return in;
}

const Inputs& three_halves(std::size_t length) {
  static const Inputs in = make_inputs(BaseSpec::rational_pos(3, 2), Alphabet(0, 4), length);
  return in;
}

constexpr std::size_t kLength = 1'000'000;

// state.range(0): 0 serial reference, n >= 1 OpenMP workers
void run_add(benchmark::State& state, const Inputs& in) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(add(in.x, in.y, in.pipeline, threads));
  std::int64_t passes = 0;
  for (const auto& step : in.pipeline.plan) passes += step.passes;
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.x.size()) * passes);
  state.counters["passes"] = static_cast<double>(passes);
}

void BM_add_negabinary(benchmark::State& state) { run_add(state, negabinary(kLength)); }
void BM_add_three_halves(benchmark::State& state) { run_add(state, three_halves(kLength)); }

void BM_ripple_negabinary(benchmark::State& state) {
  const auto& in = negabinary(kLength);
  for (auto _ : state) benchmark::DoNotOptimize(ripple_carry_add(in.x, in.y, in.pipeline.system.base));
}

void BM_ripple_three_halves(benchmark::State& state) {
  const auto& in = three_halves(kLength);
  for (auto _ : state) benchmark::DoNotOptimize(ripple_carry_add(in.x, in.y, in.pipeline.system.base));
}

}  // namespace

BENCHMARK(BM_add_negabinary)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_add_three_halves)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ripple_negabinary)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ripple_three_halves)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
