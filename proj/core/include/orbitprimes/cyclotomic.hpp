#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orbitprimes/numeric.hpp"

namespace orbitprimes {

// Element of Z[zeta_p] for an odd prime p, stored on the power basis
// 1, zeta, ..., zeta^(p-2).  Values with different p never mix.
class CycInt {
 public:
  CycInt(unsigned long p, std::vector<BigInt> coords);
  static CycInt from_integer(unsigned long p, const BigInt& t);
  static CycInt linear(unsigned long p, const BigInt& t, const BigInt& r);  // t + r*zeta
  static CycInt zeta_power(unsigned long p, unsigned long i);

  unsigned long p() const { return p_; }
  const std::vector<BigInt>& coords() const { return c_; }
  bool is_zero() const;

  CycInt operator-() const;
  friend CycInt operator+(const CycInt& a, const CycInt& b);
  friend CycInt operator-(const CycInt& a, const CycInt& b);
  friend CycInt operator*(const CycInt& a, const CycInt& b);
  friend bool operator==(const CycInt& a, const CycInt& b);
  CycInt pow(unsigned long e) const;

  std::string str() const;

 private:
  unsigned long p_;
  std::vector<BigInt> c_;  // size p-1
};

// Field norm N : Q(zeta_p) -> Q restricted to Z[zeta_p], computed as the
// resultant of the p-th cyclotomic polynomial with the coordinate polynomial.
BigInt cyc_norm(const CycInt& x);

// Smallest residue of multiplicative order exactly p mod q (q prime,
// q = 1 mod p).  Deterministic scan from 2.
std::uint64_t split_prime_zeta_residue(unsigned long p, std::uint64_t q);

// Image of x under Z[zeta_p] -> F_q sending zeta to the residue above.
std::uint64_t reduce_at_split_prime(const CycInt& x, std::uint64_t q);

// One-sided p-th power test.  CertifiedNo is sound; Inconclusive carries no
// information (in particular every true p-th power comes back Inconclusive).
enum class PowerVerdict { CertifiedNo, Inconclusive };
enum class PowerRoute { None, Norm, SplitResidue };

struct PthPowerCert {
  PowerVerdict verdict = PowerVerdict::Inconclusive;
  PowerRoute route = PowerRoute::None;
  BigInt norm = 0;             // always filled for nonzero x
  std::uint64_t witness_q = 0; // split prime, for the residue route
  int residue_trials = 0;      // nonzero-residue split primes consulted
};

// Norm test first (|N(x)| must be a p-th power for any p-th power x), then up
// to `trials` split-residue tests at primes q = 1 mod p with nonzero residue.
PthPowerCert is_pth_power_cyc(const CycInt& x, int trials = 10);

}  // namespace orbitprimes
