#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "orbitprimes/mapspec.hpp"
#include "orbitprimes/numeric.hpp"

namespace orbitprimes {

// Restrict the sieve to primes in fixed residue classes.
struct ClassFilter {
  long modulus = 0;
  std::vector<long> residues;  // reduced mod modulus, coprime to it
};

struct SieveConfig {
  long X = 1000;
  std::optional<ClassFilter> classes;
  long chunk = 1L << 18;
  long max_X = 1000000000L;
  int threads = 1;
};

void validate_sieve(const SieveConfig& cfg);

// Segmented sieve of Eratosthenes. fn receives the primes in [lo, hi] in
// ascending order, filtered by cfg.classes when present.
void for_each_prime(long lo, long hi, const SieveConfig& cfg,
                    const std::function<void(long)>& fn);
std::vector<long> primes_in_range(long lo, long hi, const SieveConfig& cfg);

struct ClassCount {
  long residue = 0;
  long primes = 0;  // classified primes: divides + not_divides
  long divides = 0;
  long not_divides = 0;
  Rational ratio;  // divides / primes; 0 for an empty class
};

struct CurveSample {
  long X = 0;
  long primes = 0;
  long divides = 0;
  long not_divides = 0;
  Rational ratio;
  std::vector<ClassCount> classes;
};

// Empirical divisor-density report. Bad primes (dividing a denominator of c
// or a0) are listed but excluded from every ratio; the breakdown keys primes
// by residue mod class_modulus (the filter modulus, or d when unfiltered).
struct DensityReport {
  MapSpec map;
  long X = 0;
  long class_modulus = 0;
  bool finite_orbit = false;
  long total_primes = 0;  // divides + not_divides + bad_count
  long divides = 0;
  long not_divides = 0;
  long bad_count = 0;
  std::vector<long> bad_primes;
  Rational ratio;
  std::vector<ClassCount> classes;
  std::vector<CurveSample> curve;  // cumulative rows, last one at X
};

// One sieve pass over the primes up to cfg.X, classifying each via the orbit
// walker. Curve rows are cut at decade checkpoints and at X. Deterministic:
// reports are bit-identical across runs and thread counts.
DensityReport density_estimate(const MapSpec& m, const SieveConfig& cfg);

// Same computation with caller-chosen cumulative checkpoints (ascending);
// the sieve runs once up to the largest.
DensityReport density_curve(const MapSpec& m, const std::vector<long>& checkpoints,
                            const SieveConfig& cfg);

}  // namespace orbitprimes
