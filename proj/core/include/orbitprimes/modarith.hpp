#pragma once

#include <cstdint>

namespace orbitprimes {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t addmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  a %= m;
  b %= m;
  std::uint64_t s = a + b;
  if (s < a || s >= m) s -= m;
  return s;
}

inline std::uint64_t submod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  a %= m;
  b %= m;
  return a >= b ? a - b : a + m - b;
}

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

// Inverse of a mod m for gcd(a, m) == 1; returns 0 when not invertible.
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m);

}  // namespace orbitprimes
