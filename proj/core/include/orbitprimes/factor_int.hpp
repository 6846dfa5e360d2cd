#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "orbitprimes/numeric.hpp"

namespace orbitprimes {

struct FactorBudget {
  std::uint64_t trial_bound = 100000;   // trial division by primes <= this
  std::uint64_t rho_iterations = 2000000;  // total Pollard rho step budget
  std::uint64_t seed = 0x0f1e2d3c4b5a6978ULL;
};

// Factorization of |n| into certified primes, plus an unfactored cofactor
// when the budget runs out.  sign is -1/0/1.
struct IntFactorization {
  int sign = 1;
  std::vector<std::pair<BigInt, int>> factors;  // ascending certified primes
  BigInt cofactor = 1;                          // > 1 iff partial

  bool complete() const { return cofactor == 1; }
  BigInt reassemble() const;  // sign * prod(p^e) * cofactor
};

// n != 0 required.  Trial division, then Pollard rho (Brent variant) within
// the budget; every reported prime passes Miller-Rabin.
IntFactorization factor_int(const BigInt& n, const FactorBudget& budget = {});

}  // namespace orbitprimes
