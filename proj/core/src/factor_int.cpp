#include "orbitprimes/factor_int.hpp"

#include <algorithm>
#include <map>

#include "orbitprimes/errors.hpp"
#include "orbitprimes/modarith.hpp"

namespace orbitprimes {

BigInt IntFactorization::reassemble() const {
  BigInt n = cofactor;
  for (const auto& [p, e] : factors)
    for (int i = 0; i < e; ++i) n *= p;
  return sign * n;
}

namespace {

// Brent's variant of Pollard rho on 64-bit values. Returns a nontrivial
// factor of composite odd n, or 0 if the step budget ran out.
std::uint64_t rho_u64(std::uint64_t n, Rng& rng, std::uint64_t& budget) {
  if (n % 2 == 0) return 2;
  while (budget > 0) {
    std::uint64_t y = rng() % (n - 1) + 1;
    std::uint64_t cc = rng() % (n - 1) + 1;
    std::uint64_t m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
    while (g == 1 && budget > 0) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = addmod_u64(mulmod_u64(y, y, n), cc, n);
      std::uint64_t k = 0;
      while (k < r && g == 1 && budget > 0) {
        ys = y;
        std::uint64_t lim = std::min(m, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = addmod_u64(mulmod_u64(y, y, n), cc, n);
          q = mulmod_u64(q, x > y ? x - y : y - x, n);
        }
        budget = budget > lim ? budget - lim : 0;
        g = std::gcd(q, n);
        k += lim;
      }
      r *= 2;
    }
    if (g == n) {
      // Backtrack one step at a time to split the batched gcd.
      g = 1;
      while (g == 1) {
        ys = addmod_u64(mulmod_u64(ys, ys, n), cc, n);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      }
    }
    if (g != n && g != 1) return g;
  }
  return 0;
}

// Same algorithm on GMP integers for n >= 2^64.
BigInt rho_mpz(const BigInt& n, Rng& rng, std::uint64_t& budget) {
  BigInt x, y, ys, q, g, diff;
  while (budget > 0) {
    y = BigInt(rng()) % (n - 1) + 1;
    BigInt cc = BigInt(rng()) % (n - 1) + 1;
    std::uint64_t m = 128, r = 1;
    g = 1;
    q = 1;
    while (g == 1 && budget > 0) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = (y * y + cc) % n;
      std::uint64_t k = 0;
      while (k < r && g == 1 && budget > 0) {
        ys = y;
        std::uint64_t lim = std::min(m, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = (y * y + cc) % n;
          diff = x - y;
          q = q * abs(diff) % n;
        }
        budget = budget > lim ? budget - lim : 0;
        g = gcd(q, n);
        k += lim;
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = (ys * ys + cc) % n;
        diff = x - ys;
        g = gcd(BigInt(abs(diff)), n);
      }
    }
    if (g != n && g != 1) return g;
  }
  return 0;
}

void factor_rec(const BigInt& n, Rng& rng, std::uint64_t& budget,
                std::map<BigInt, int>& primes, BigInt& cofactor) {
  if (n == 1) return;
  if (is_prime(n, &rng)) {
    ++primes[n];
    return;
  }
  // Perfect powers split for free and rho struggles on them.
  for (unsigned long k = 2; BigInt(1) << k <= n; ++k) {
    if (auto root = kth_root_exact(n, k)) {
      for (unsigned long i = 0; i < k; ++i) factor_rec(*root, rng, budget, primes, cofactor);
      return;
    }
  }
  BigInt d = fits_u64(n) ? BigInt(rho_u64(to_u64(n), rng, budget))
                         : rho_mpz(n, rng, budget);
  if (d == 0) {
    cofactor *= n;
    return;
  }
  factor_rec(d, rng, budget, primes, cofactor);
  factor_rec(n / d, rng, budget, primes, cofactor);
}

}  // namespace

IntFactorization factor_int(const BigInt& n, const FactorBudget& budget) {
  if (n == 0) throw ArgumentError("factor_int(0) is undefined");
  IntFactorization out;
  out.sign = sgn(n);
  BigInt m = abs(n);

  std::map<BigInt, int> primes;
  // Trial division by 2, then odd candidates (composite candidates cannot
  // divide once their prime factors are removed).
  for (BigInt p = 2; p <= budget.trial_bound && p * p <= m; p == 2 ? p = 3 : p += 2) {
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      ++primes[p];
      m /= p;
    }
  }
  if (m > 1) {
    if (m <= budget.trial_bound * BigInt(budget.trial_bound)) {
      ++primes[m];  // below the square of the trial bound, a survivor is prime
      m = 1;
    } else {
      Rng rng(budget.seed);
      std::uint64_t steps = budget.rho_iterations;
      factor_rec(m, rng, steps, primes, out.cofactor);
    }
  }
  out.factors.assign(primes.begin(), primes.end());
  return out;
}

}  // namespace orbitprimes
