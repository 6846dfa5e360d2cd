#include "orbitprimes/numeric.hpp"

#include <array>
#include <cctype>

#include "orbitprimes/errors.hpp"
#include "orbitprimes/modarith.hpp"

namespace orbitprimes {

namespace {

bool valid_decimal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m) {
  // Extended Euclid on signed 128-bit accumulators.
  __int128 t = 0, newt = 1;
  __int128 r = m, newr = a % m;
  while (newr != 0) {
    __int128 q = r / newr;
    t -= q * newt;
    std::swap(t, newt);
    r -= q * newr;
    std::swap(r, newr);
  }
  if (r != 1) return 0;
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

BigInt parse_bigint(const std::string& s) {
  if (!valid_decimal(s)) throw ArgumentError("not a decimal integer: '" + s + "'");
  return BigInt(s, 10);
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_bigint(s));
  BigInt num = parse_bigint(s.substr(0, slash));
  BigInt den = parse_bigint(s.substr(slash + 1));
  if (den == 0) throw ArgumentError("zero denominator in '" + s + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const BigInt& n) { return n.get_str(); }

std::string to_string(const Rational& x) { return x.get_str(); }

bool fits_u64(const BigInt& n) {
  return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const BigInt& n) {
  std::uint64_t lo = mpz_get_ui(n.get_mpz_t());
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > 8 * sizeof(unsigned long)) {
    BigInt hi = n >> 32;
    lo |= static_cast<std::uint64_t>(mpz_get_ui(hi.get_mpz_t())) << 32;
  }
  return lo;
}

PAdicVal val_p(const BigInt& n, const BigInt& p) {
  if (p < 2) throw ArgumentError("val_p requires p >= 2");
  if (n == 0) return padic_infinity();
  BigInt reduced;
  mp_bitcnt_t v = mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
  return {static_cast<long>(v), false};
}

PAdicVal val_p(const Rational& x, const BigInt& p) {
  if (x == 0) return padic_infinity();
  PAdicVal vn = val_p(BigInt(x.get_num()), p);
  PAdicVal vd = val_p(BigInt(x.get_den()), p);
  return {vn.v - vd.v, false};
}

BigInt kth_root_floor(const BigInt& n, unsigned long k, bool* exact) {
  if (k == 0) throw ArgumentError("k-th root requires k >= 1");
  if (n < 0) throw ArgumentError("kth_root_floor requires n >= 0");
  BigInt root;
  int was_exact = mpz_root(root.get_mpz_t(), n.get_mpz_t(), k);
  if (exact) *exact = (was_exact != 0);
  return root;
}

std::optional<BigInt> kth_root_exact(const BigInt& n, unsigned long k) {
  if (k == 0) throw ArgumentError("k-th root requires k >= 1");
  if (n < 0) {
    if (k % 2 == 0) return std::nullopt;
    auto r = kth_root_exact(BigInt(-n), k);
    if (!r) return std::nullopt;
    return BigInt(-*r);
  }
  bool exact = false;
  BigInt root = kth_root_floor(n, k, &exact);
  if (!exact) return std::nullopt;
  return root;
}

std::optional<Rational> kth_root_exact(const Rational& x, unsigned long k) {
  if (k == 0) throw ArgumentError("k-th root requires k >= 1");
  // Reduced x = n/d is a k-th power in Q iff n and d are k-th powers in Z
  // (the root's num/den are forced up to units by unique factorization).
  auto rn = kth_root_exact(BigInt(x.get_num()), k);
  if (!rn) return std::nullopt;
  auto rd = kth_root_exact(BigInt(x.get_den()), k);
  if (!rd) return std::nullopt;
  Rational r(*rn, *rd);
  r.canonicalize();
  return r;
}

bool is_perfect_power(const Rational& x, unsigned long k) {
  if (k < 2) throw ArgumentError("is_perfect_power requires k >= 2");
  return kth_root_exact(x, k).has_value();
}

namespace {

bool miller_rabin_u64(std::uint64_t n, std::uint64_t a) {
  a %= n;
  if (a == 0) return true;
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t x = powmod_u64(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod_u64(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool miller_rabin_mpz(const BigInt& n, const BigInt& a) {
  BigInt d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  BigInt x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // This base set is deterministic for all n < 2^64.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (!miller_rabin_u64(n, a)) return false;
  return true;
}

bool is_prime(const BigInt& n, Rng* rng) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime_u64(to_u64(n));
  for (unsigned long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43})
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  Rng local(0x9e3779b97f4a7c15ULL);
  Rng& gen = rng ? *rng : local;
  std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (int round = 0; round < 40; ++round) {
    // Random base in [2, n-2], assembled from 64-bit chunks.
    BigInt a = 0;
    for (std::size_t b = 0; b < bits; b += 64) a = (a << 64) + BigInt(gen());
    a = a % (n - 3) + 2;
    if (!miller_rabin_mpz(n, a)) return false;
  }
  return true;
}

}  // namespace orbitprimes
