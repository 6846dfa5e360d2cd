#pragma once

#include <vector>

#include "orbitprimes/ratpoly.hpp"

namespace orbitprimes {

struct FactorConfig {
  long degree_cap = 64;        // largest input degree factor_over_Q accepts
  int modular_factor_cap = 26; // recombination width guard
};

struct FactorEntry {
  RatPoly factor;  // primitive integer coefficients, positive leading coeff
  int multiplicity;
};

// unit * prod factor^multiplicity == input, exactly.  Factors are sorted by
// (degree, coefficient sequence) so equal inputs give identical lists.
struct FactorList {
  Rational unit = 1;
  std::vector<FactorEntry> factors;
  bool certified = false;  // every listed factor proven irreducible

  RatPoly reassemble() const;
  int total_count() const;  // number of factors with multiplicity
};

// Zassenhaus factorization over Q: squarefree split, factorization modulo a
// good prime, Hensel lifting to past the Mignotte bound, subset
// recombination.  Throws CapabilityError past the configured caps.
FactorList factor_over_Q(const RatPoly& f, const FactorConfig& cfg = {});

enum class Irreducibility { Yes, No, Unknown };

// Sound on Yes/No; Unknown only when the degree cap prevents a certificate.
// Requires a squarefree input.
Irreducibility is_irreducible_over_Q(const RatPoly& f, const FactorConfig& cfg = {});

}  // namespace orbitprimes
