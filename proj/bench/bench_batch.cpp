#include <benchmark/benchmark.h>

#include "mauto/batch.hpp"
#include "mauto/ordinal.hpp"
#include "mauto/presentation.hpp"

using namespace mauto;

namespace {

std::vector<TupleWord> ordinal_triples(int count) {
  std::vector<TupleWord> out;
  for (int i = 0; i < count; ++i) {
    Cnf a{static_cast<std::uint64_t>(i % 4), static_cast<std::uint64_t>(i / 4 % 4), 1};
    Cnf b{static_cast<std::uint64_t>(i / 16 % 4), static_cast<std::uint64_t>(1 + i % 3)};
    out.push_back({cnf_to_word(a), cnf_to_word(b), cnf_to_word(cnf_add(a, b))});
  }
  return out;
}

const MAutomaton& plus_automaton() {
  static const AutomaticPresentation p = ordinal_presentation();
  return p.relation("plusO");
}

void BM_AcceptsSerial(benchmark::State& state) {
  const auto words = ordinal_triples(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(accepts_batch(plus_automaton(), words));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_AcceptsParallel(benchmark::State& state) {
  const auto words = ordinal_triples(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(accepts_batch_parallel(plus_automaton(), words));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_AcceptsSerial)->Arg(256)->Arg(4096);
BENCHMARK(BM_AcceptsParallel)->Arg(256)->Arg(4096);

BENCHMARK_MAIN();
