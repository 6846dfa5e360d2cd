#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <string>

namespace orbitprimes {

// Arbitrary-precision integers and rationals are GMP's. mpq_class keeps
// exactly the canonical form we rely on: gcd(num, den) == 1 and den >= 1.
using BigInt = mpz_class;
using Rational = mpq_class;

using Rng = std::mt19937_64;

// Decimal parsing. parse_rational accepts "a" and "a/b" with optional leading
// '-'; whitespace at either end is rejected along with empty/garbage input.
BigInt parse_bigint(const std::string& s);
Rational parse_rational(const std::string& s);

std::string to_string(const BigInt& n);
std::string to_string(const Rational& x);  // "a" when den == 1, else "a/b"

bool fits_u64(const BigInt& n);
std::uint64_t to_u64(const BigInt& n);

// p-adic valuation value: an integer, or +infinity for the valuation of 0.
struct PAdicVal {
  long v = 0;
  bool infinite = false;

  bool positive() const { return infinite || v > 0; }
  bool zero() const { return !infinite && v == 0; }
  friend bool operator==(const PAdicVal&, const PAdicVal&) = default;
};

inline PAdicVal padic_infinity() { return {0, true}; }

// v_p for p prime (p >= 2 enforced; primality is the caller's contract).
PAdicVal val_p(const BigInt& n, const BigInt& p);
PAdicVal val_p(const Rational& x, const BigInt& p);

// Floor of the k-th root of n >= 0, with an exactness flag.  k >= 1.
BigInt kth_root_floor(const BigInt& n, unsigned long k, bool* exact = nullptr);

// Exact k-th root in Q, honouring signs (odd k only for negative x).
std::optional<Rational> kth_root_exact(const Rational& x, unsigned long k);
std::optional<BigInt> kth_root_exact(const BigInt& n, unsigned long k);

// Is x = y^k for some y in Q?  k >= 2.
bool is_perfect_power(const Rational& x, unsigned long k);

// Primality. Deterministic Miller-Rabin below 2^64, otherwise 40 rounds of
// randomized Miller-Rabin driven by `rng` (a fixed-seed generator is used
// when none is supplied, keeping results reproducible).
bool is_prime_u64(std::uint64_t n);
bool is_prime(const BigInt& n, Rng* rng = nullptr);

}  // namespace orbitprimes
