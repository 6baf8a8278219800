#include <benchmark/benchmark.h>

#include "limitlearn/classes.h"
#include "limitlearn/combinators.h"
#include "limitlearn/criteria.h"
#include "limitlearn/harness.h"
#include "limitlearn/priority.h"

namespace limitlearn {
namespace {

void BM_EncodeSeq(benchmark::State& state) {
  Sequence s;
  for (int i = 0; i < state.range(0); ++i) s.push_back(Elem::datum(i % 7));
  for (auto _ : state) benchmark::DoNotOptimize(encode_seq(s));
}
BENCHMARK(BM_EncodeSeq)->Arg(4)->Arg(8)->Arg(12);

void BM_Eval(benchmark::State& state) {
  Registry reg;
  const ProgramCode e =
      reg.compose(reg.succ(reg.argument()), reg.pad(reg.remove_element(reg.evens(), 4), BigNat(3)));
  Nat x = 0;
  for (auto _ : state) benchmark::DoNotOptimize(reg.eval(e, Value(x++ % 32), 200));
}
BENCHMARK(BM_Eval);

void BM_WBounded(benchmark::State& state) {
  Registry reg;
  const ProgramCode e = reg.remove_element(reg.cofinite(3), 7);
  const Nat t = static_cast<Nat>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reg.w_bounded(e, t));
}
BENCHMARK(BM_WBounded)->Arg(16)->Arg(64)->Arg(256);

void BM_CheckRestriction(benchmark::State& state) {
  Registry reg;
  LanguageOracle oracle(reg, 32);
  const SeparatedFamily f = mon_separator(reg, 4);
  f.family.declare(oracle);
  LanguageDescr lang = f.family.members.back().language;
  lang.universe = 32;
  const TextSource text = sample_texts(lang, 1, 40, 1)[0];
  const auto p = run_interaction(Interaction::kSd, f.learner, text, state.range(0));
  const Restriction r = static_cast<Restriction>(state.range(1));
  state.SetLabel(restriction_name(r));
  for (auto _ : state) benchmark::DoNotOptimize(check(r, p, text, oracle));
}
BENCHMARK(BM_CheckRestriction)
    ->ArgsProduct({{10, 40}, {static_cast<long>(Restriction::kCaut),
                              static_cast<long>(Restriction::kSDec),
                              static_cast<long>(Restriction::kMon)}});

void BM_FindWitness(benchmark::State& state) {
  Registry reg;
  const ProgramCode e = pool_program(reg, "grow");
  const Nat t = static_cast<Nat>(state.range(0));
  for (auto _ : state) {
    WitnessScanner scanner(reg);
    benchmark::DoNotOptimize(scanner.find_witness({0, 2}, e, t));
  }
}
BENCHMARK(BM_FindWitness)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_BuildSdec(benchmark::State& state) {
  for (auto _ : state) {
    Registry reg;
    const std::vector<ProgramCode> pool = {pool_program(reg, "ind_empty"),
                                           pool_program(reg, "ind01"), pool_program(reg, "grow")};
    benchmark::DoNotOptimize(build_sdec(reg, pool, static_cast<Nat>(state.range(0))));
  }
}
BENCHMARK(BM_BuildSdec)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Wrapper(benchmark::State& state) {
  const int which = static_cast<int>(state.range(0));
  const TextSource text = sample_texts(LanguageDescr::finite({0, 2, 3, 7}), 1, 20, 5)[0];
  for (auto _ : state) {
    Registry reg;
    const Learner base = finite_sets_learner(reg);
    const Learner h = which == 0   ? syndec(reg, base).learner
                      : which == 1 ? conv_to_sdec_caut(reg, base).learner
                      : which == 2 ? strongly_locking(base).learner
                                   : drop_caut_inf(reg, base).learner;
    benchmark::DoNotOptimize(run_interaction(Interaction::kG, h, text, 20));
  }
}
BENCHMARK(BM_Wrapper)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_Implications(benchmark::State& state) {
  ExperimentConfig c;
  c.sequences = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cmd_implications(c));
}
BENCHMARK(BM_Implications)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace limitlearn

BENCHMARK_MAIN();
