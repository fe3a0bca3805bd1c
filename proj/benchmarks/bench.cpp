#include <benchmark/benchmark.h>

#include "qcurve/ecfq.hpp"
#include "qcurve/lseries.hpp"
#include "qcurve/newform.hpp"

using namespace qcurve;

namespace {

Curve ex1() {
  auto e = [](const char* s) { return parse_element(22, s); };
  return Curve(e("0"), e("0"), e("0"), e("-7200684+1535112*sqrt(22)"), e("10456553952-2229344208*sqrt(22)"));
}

void BM_CountNaive(benchmark::State& state) {
  u64 p = state.range(0);
  Fq F(p);
  ECq E(F, F.zero(), F.zero(), F.zero(), F.from_int(3), F.from_int(7));
  for (auto _ : state) benchmark::DoNotOptimize(E.count_naive());
}
BENCHMARK(BM_CountNaive)->Arg(1009)->Arg(10007);

void BM_CountBsgs(benchmark::State& state) {
  u64 p = state.range(0);
  Fq F(p);
  ECq E(F, F.zero(), F.zero(), F.zero(), F.from_int(3), F.from_int(7));
  std::mt19937_64 rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(E.count_bsgs(rng));
}
BENCHMARK(BM_CountBsgs)->Arg(1009)->Arg(10007)->Arg(1000003);

// inert residue fields of Q(sqrt 22)
void BM_CountBsgsInert(benchmark::State& state) {
  auto K = QuadraticField::make(22);
  auto P = primes_above(K, state.range(0)).at(0);
  Curve E = ex1();
  ECq R = ECq::reduce(E, P);
  std::mt19937_64 rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(R.count_bsgs(rng));
}
BENCHMARK(BM_CountBsgsInert)->Arg(101)->Arg(1009);

void BM_Newform(benchmark::State& state) {
  Curve E = ex1();
  NewformInput in;
  in.E = E;
  in.global = global_data(E);
  in.mu = isogeny_from_alpha(E, parse_element(22, "14-3*sqrt(22)"));
  in.m = -2;
  for (auto _ : state) benchmark::DoNotOptimize(compute_newform(in, state.range(0)));
}
BENCHMARK(BM_Newform)->Arg(100)->Arg(326)->Unit(benchmark::kMillisecond);

void BM_LValue(benchmark::State& state) {
  Precision prec(state.range(0) + 20);
  Curve E = ex1();
  NewformInput in;
  in.E = E;
  in.global = global_data(E);
  in.mu = isogeny_from_alpha(E, parse_element(22, "14-3*sqrt(22)"));
  in.m = -2;
  size_t M = truncation(in.global.level, state.range(0));
  auto nf = compute_newform(in, M);
  auto f = embed_form(nf, expand(nf, M), false);
  Cx et = eta(f);
  for (auto _ : state) {
    benchmark::DoNotOptimize(l_value(f, et, 0));
    benchmark::DoNotOptimize(l_value(f, et, 1));
  }
}
BENCHMARK(BM_LValue)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
