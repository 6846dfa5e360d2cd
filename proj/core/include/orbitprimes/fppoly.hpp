#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "orbitprimes/numeric.hpp"
#include "orbitprimes/ratpoly.hpp"

namespace orbitprimes {

// Dense polynomial over F_p, p prime (fits in 64 bits).  Coefficients are
// reduced representatives in [0, p); the trailing one is nonzero.
class FpPoly {
 public:
  explicit FpPoly(std::uint64_t p) : p_(p) {}
  FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs);

  std::uint64_t p() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  std::uint64_t coeff(int i) const;
  std::uint64_t leading() const;
  bool is_monic() const;

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  friend bool operator==(const FpPoly& a, const FpPoly& b);
  friend std::pair<FpPoly, FpPoly> divrem(const FpPoly& a, const FpPoly& b);

  FpPoly monic() const;
  FpPoly derivative() const;
  std::uint64_t evaluate(std::uint64_t x) const;

 private:
  std::uint64_t p_;
  std::vector<std::uint64_t> c_;
  void trim();
};

FpPoly fp_gcd(FpPoly a, FpPoly b);  // monic gcd
FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& mod);
FpPoly fp_powmod(const FpPoly& base, const BigInt& e, const FpPoly& mod);

// Reduction of a rational polynomial mod p; every denominator must be
// invertible mod p.
FpPoly reduce_mod_p(const RatPoly& f, std::uint64_t p);

struct FpFactor {
  FpPoly factor;  // monic irreducible
  int multiplicity;
};

struct FpFactorization {
  std::uint64_t lc;  // so that lc * prod factor^mult reproduces the input
  std::vector<FpFactor> factors;  // canonically sorted
};

// Complete factorization into monic irreducibles: squarefree decomposition,
// distinct-degree splitting, then Cantor-Zassenhaus equal-degree splitting
// (trace-based for p = 2).  Deterministic for a fixed rng seed.
FpFactorization factor_mod_p(const FpPoly& f, Rng& rng);
FpFactorization factor_mod_p(const FpPoly& f);  // fixed default seed

bool is_irreducible_mod_p(const FpPoly& f);

}  // namespace orbitprimes
