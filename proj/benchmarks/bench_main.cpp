#include <benchmark/benchmark.h>

#include "orbitprimes/density.hpp"
#include "orbitprimes/dynamics.hpp"
#include "orbitprimes/factor_int.hpp"
#include "orbitprimes/factor_q.hpp"
#include "orbitprimes/fppoly.hpp"
#include "orbitprimes/galois.hpp"
#include "orbitprimes/mapspec.hpp"
#include "orbitprimes/ratpoly.hpp"

namespace op = orbitprimes;

namespace {

void BM_FactorInt64(benchmark::State& state) {
  // Semiprime near 2^62 keeps the rho stage honest.
  op::BigInt n = op::BigInt(2147483647) * op::BigInt(2147483629);
  for (auto _ : state) {
    auto f = op::factor_int(n);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_FactorInt64);

void BM_FactorModP(benchmark::State& state) {
  std::uint64_t p = 1000003;
  std::vector<std::uint64_t> cs(static_cast<std::size_t>(state.range(0)) + 1);
  std::uint64_t x = 12345;
  for (auto& c : cs) {
    x = x * 6364136223846793005ULL + 1442695040888963407ULL;
    c = x % p;
  }
  cs.back() = 1;
  op::FpPoly f(p, cs);
  for (auto _ : state) {
    auto fac = op::factor_mod_p(f);
    benchmark::DoNotOptimize(fac);
  }
}
BENCHMARK(BM_FactorModP)->Arg(16)->Arg(64);

void BM_FactorOverQ(benchmark::State& state) {
  // Irreducible over Q but split mod every prime: worst case for
  // subset recombination at this degree.
  op::RatPoly f = op::parse_poly("z^4 - 10*z^2 + 1");
  for (auto _ : state) {
    auto fac = op::factor_over_Q(f);
    benchmark::DoNotOptimize(fac);
  }
}
BENCHMARK(BM_FactorOverQ);

void BM_SievePrimes(benchmark::State& state) {
  op::SieveConfig cfg;
  cfg.X = state.range(0);
  for (auto _ : state) {
    long count = 0;
    op::for_each_prime(2, cfg.X, cfg, [&](long) { ++count; });
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SievePrimes)->Arg(100000)->Arg(1000000);

void BM_ClassifyPrimes(benchmark::State& state) {
  // The density hot loop: cycle-walk the critical orbit mod q for a block of
  // primes near a million. range(0) toggles the exact-index walk.
  op::MapSpec m{3, op::Rational(1), op::Rational(0)};
  op::OrbitClassifier cls(m);
  op::SieveConfig cfg;
  auto primes = op::primes_in_range(999000, 1000000, cfg);
  bool exact = state.range(0) != 0;
  for (auto _ : state) {
    long divides = 0;
    for (long q : primes)
      if (cls.classify((std::uint64_t)q, exact).divides()) ++divides;
    benchmark::DoNotOptimize(divides);
  }
  state.SetItemsProcessed(state.iterations() * (long)primes.size());
}
BENCHMARK(BM_ClassifyPrimes)->Arg(0)->Arg(1);

void BM_IterateMap(benchmark::State& state) {
  // Repeated composition; coefficient size doubles the work per level.
  op::MapSpec m{2, op::Rational(-16, 9), op::Rational(0)};
  for (auto _ : state) {
    auto f = op::iterate_map(m, (int)state.range(0));
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_IterateMap)->Arg(4)->Arg(6);

void BM_ExactYn(benchmark::State& state) {
  auto spec = op::full_tower(2, 1, state.range(0));
  for (auto _ : state) {
    auto law = op::exact_Yn_distribution(spec, 4096);
    benchmark::DoNotOptimize(law);
  }
}
BENCHMARK(BM_ExactYn)->Arg(8)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
