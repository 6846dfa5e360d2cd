#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orbitprimes/factor_int.hpp"
#include "orbitprimes/factor_q.hpp"
#include "orbitprimes/mapspec.hpp"
#include "orbitprimes/numeric.hpp"
#include "orbitprimes/ratpoly.hpp"

namespace orbitprimes {

// Shared sign convention for the composition g(f^n): 1 exactly when n = 1,
// d is even and deg g is odd, else 0.
int stability_epsilon(long deg_g, long d, long n);

struct StabilityCertificate {
  enum class Kind {
    FirststabCertified,  // conditions verified for all 1 <= n <= N
    FirststabFails,      // first counterexample recorded
    EventuallyStable,    // a place witnesses eventual stability
    Inconclusive,
  };
  Kind kind = Kind::Inconclusive;

  long N = 0;  // FirststabCertified: levels verified

  // FirststabFails
  long n = 0;
  int condition_id = 0;      // 1: p-th power test for p | d, 2: the 4 | d test
  Rational offending_value;  // the value that turned out to be a perfect power
  long power = 0;            // the exponent that succeeded

  // EventuallyStable
  BigInt p = 0;                    // place of Q
  long e = 0;                      // v_p(c)
  BigInt bound = 0;                // d^ceil(log2 e), exact
  bool place_prime_to_d = false;   // the returned p does not divide d
  bool has_coprime_place = false;  // some prime of num(c) avoids d

  std::string reason;  // Inconclusive, or a caveat on partial factorizations
};

// Certifies g(f^n) irreducible for n = 1..N by the two perfect-power
// conditions: (-1)^eps * g(f^n(0)) is not a p-th power for any prime p | d,
// and when 4 | d, (-1)^(eps+1) * 4 * g(f^n(0)) is not a 4th power.  Requires
// g monic and irreducible.
StabilityCertificate firststab_certify(const RatPoly& g, const MapSpec& m, long N);

// Scans primes p | num(c): each gives an eventually-stable verdict with
// e = v_p(c) and factor-count bound d^ceil(log2 e).  num(c) = +-1 (the
// reciprocal-of-an-integer case) is Inconclusive.  Requires c != 0.
StabilityCertificate eventual_stability_verdict(const MapSpec& m,
                                                const FactorBudget& budget = {});

// (n, number of irreducible factors of f^n counted with multiplicity) for
// n = 1..N.  Degree-cap errors from the factorizer propagate.
std::vector<std::pair<long, long>> factor_count_track(const MapSpec& m, long N,
                                                      const FactorConfig& cfg = {});

// d = 2 only: true when some listed factor h satisfies
// g(f^n) = (-1)^eps h(z) h(-z) exactly (h normalized monic).  A factor list
// that does not multiply back to g(f^n) can never satisfy this.
bool splitting_shape_verify(const RatPoly& g, const MapSpec& m, long n,
                            const FactorList& factors);

struct MaximalityWitness {
  long n = 0;
  BigInt p = 0;
  std::vector<long> valuations;  // v_p(g(f^i(0))), i = 1..n
};

struct MaximalityResult {
  bool found = false;
  MaximalityWitness witness;
  std::string reason;  // for NotFound
};

// Searches for the smallest prime p with v_p(g(f^n(0))) nonzero and prime to
// d, v_p(g(f^i(0))) = 0 for 1 <= i < n, and p not dividing d.  Candidate
// primes come from factoring g(f^n(0)) within the budget.  Requires n >= 2
// and g monic dividing some f^j, 0 <= j <= n (f^0 = z).
MaximalityResult maximality_witness(const RatPoly& g, const MapSpec& m, long n,
                                    const FactorBudget& effort = {});

struct ZCaseEntry {
  long n = 0;
  std::string target;  // value whose non-power status was tested
  std::string route;   // integer | cyclotomic-norm | cyclotomic-residue | cyclotomic-unit
  bool certified = false;
};

struct ZCaseReport {
  long p = 0;
  BigInt c = 0;
  long N = 0;
  bool c_is_pth_power = false;
  BigInt r = 0;  // when c = r^p
  std::vector<ZCaseEntry> entries;

  bool all_certified() const;
};

// Non-power checks for f(z) = z^p + c with integer c: when c is not a p-th
// power, f^n(0) itself is tested for n <= N; when c = r^p, the factors
// f^(n-1)(0) + r (integer) and f^(n-1)(0) + r*zeta_p (cyclotomic) are
// certified for 2 <= n <= N, the n = 2, r = 1 case being exactly the
// 1 + zeta_p certificate.
ZCaseReport zcase_suite(long p, const BigInt& c, long N);

}  // namespace orbitprimes
