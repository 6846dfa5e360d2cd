#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orbitprimes/mapspec.hpp"
#include "orbitprimes/numeric.hpp"

namespace orbitprimes {

// Iterate values grow doubly exponentially; this caps numerator/denominator
// bit sizes before an exact-orbit computation refuses to continue.
inline constexpr long kOrbitBitCap = 1000000;

// Exact critical orbit f(0), f^2(0), ..., f^N(0).
struct CriticalOrbit {
  std::vector<Rational> values;  // values[i] = f^(i+1)(0)
  bool finite_flag = false;
  // Smallest witness pair f^i(0) = f^j(0), i < j, indices counted with
  // f^0(0) = 0 at index 0.  Only meaningful when finite_flag is set.
  long repeat_first = -1;
  long repeat_second = -1;
};

CriticalOrbit critical_orbit(const MapSpec& m, long N, long bit_cap = kOrbitBitCap);

// Rigid-divisibility check over a grid of primes and indices 1..N.
struct RdsViolation {
  BigInt p;
  int rule;  // 1: v(a_n)>0 but v(a_kn) != v(a_n); 2: gcd index not positive
  long n = 0;
  long j = 0;  // multiple kn for rule 1, second index for rule 2
  std::string detail;
};

struct RdsReport {
  long N = 0;
  std::vector<BigInt> primes;
  // valuations[i][n-1] = v_{primes[i]}(f^n(a0)) for n = 1..N
  std::vector<std::vector<long>> valuations;
  std::vector<RdsViolation> violations;
  bool ok() const { return violations.empty(); }
};

RdsReport verify_rds(const MapSpec& m, const std::vector<BigInt>& primes, long N,
                     long bit_cap = kOrbitBitCap);

enum class OrbitVerdict { Divides, NotDivides, BadPrime };
enum class CycleAlgo { Brent, Floyd };

struct OrbitModResult {
  OrbitVerdict verdict = OrbitVerdict::NotDivides;
  // First n >= 0 with f^n(a0) = 0 mod q and f^n(a0) != 0 exactly.  -1 when the
  // verdict was established without computing the index (classifier fast path).
  long n = -1;
  std::uint64_t steps = 0;  // modular map applications spent
  std::string reason;       // BadPrime explanation
  bool divides() const { return verdict == OrbitVerdict::Divides; }
};

// Answers "does q divide the orbit" for many primes q against one map.  The
// constructor performs the exact zero/finiteness analysis of the orbit once:
// a repeat proves the orbit finite (all values then known exactly); otherwise
// growth or denominator-valuation certificates prove there is no exact zero
// beyond the scanned prefix.
class OrbitClassifier {
 public:
  explicit OrbitClassifier(MapSpec m);

  const MapSpec& map() const { return m_; }
  bool orbit_finite() const { return finite_; }

  // exact_index = true walks the orbit mod q and reports the first index n;
  // false permits the permutation shortcut (gcd(d, q-1) = 1 makes z^d + c a
  // bijection on Z/q, so the critical orbit is a pure cycle through 0) which
  // yields Divides with n = -1 in O(1).
  OrbitModResult classify(std::uint64_t q, bool exact_index = true,
                          CycleAlgo algo = CycleAlgo::Brent) const;

 private:
  MapSpec m_;
  bool finite_ = false;
  long pre_ = 0, per_ = 0;
  std::vector<Rational> vals_;  // finite: a_0 .. a_(pre+per-1); else scanned prefix
  bool a0_zero_ = false;
};

OrbitModResult orbit_divides_mod_q(const MapSpec& m, std::uint64_t q,
                                   CycleAlgo algo = CycleAlgo::Brent);

// gcd(p, q-1) = 1 criterion, cross-validated by direct enumeration of
// z -> z^p on Z/q when q < 10^4.
bool residue_power_map_is_bijection(std::uint64_t q, std::uint64_t p);

}  // namespace orbitprimes
