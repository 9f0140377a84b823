// Serial vs OpenMP kernels: truncated multiplication, rank mod p, and a
// full truncated power.

#include <random>

#include <benchmark/benchmark.h>

#include "qhfpt/jacobian.hpp"
#include "qhfpt/parse.hpp"
#include "qhfpt/ring.hpp"

using namespace qhfpt;

namespace {

Poly dense(const RingPtr& r, u32 max_exp, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<std::pair<Monomial, u64>> terms;
  for (u32 a = 0; a <= max_exp; ++a)
    for (u32 b = 0; b <= max_exp; ++b)
      for (u32 c = 0; c <= max_exp; ++c)
        if (rng() % 2) terms.emplace_back(Monomial{a, b, c}, rng());
  return Poly::from_terms(r, terms);
}

void BM_TruncatedMul(benchmark::State& state, bool parallel) {
  auto r = make_ring(10007, {"x", "y", "z"}, {1, 1, 1});
  const Poly a = dense(r, static_cast<u32>(state.range(0)), 1), b = dense(r, static_cast<u32>(state.range(0)), 2);
  const u64 q = 2 * state.range(0);
  for (auto _ : state) {
    Poly c = parallel ? truncated_mul_parallel(a, b, q) : truncated_mul_serial(a, b, q);
    benchmark::DoNotOptimize(c);
  }
  state.counters["terms"] = static_cast<double>(a.size());
}

void BM_Rank(benchmark::State& state, bool parallel) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  ModMatrix m(n, n, 65521);
  std::mt19937 rng(3);
  for (auto& x : m.data) x = rng() % 65521;
  for (auto _ : state) benchmark::DoNotOptimize(parallel ? rank_mod_p_parallel(m) : rank_mod_p_serial(m));
}

void BM_TruncatedPow(benchmark::State& state) {
  const u32 p = static_cast<u32>(state.range(0));
  const Poly f = parse_poly("x^3+y^3+z^3+2*x*y*z", make_ring(p, {"x", "y", "z"}, {1, 1, 1}));
  for (auto _ : state) benchmark::DoNotOptimize(truncated_pow(f, p - 1, p));
}

} // namespace

BENCHMARK_CAPTURE(BM_TruncatedMul, serial, false)->Arg(8)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TruncatedMul, parallel, true)->Arg(8)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Rank, serial, false)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Rank, parallel, true)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TruncatedPow)->Arg(101)->Arg(211)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
