#pragma once

#include "orbitprimes/numeric.hpp"
#include "orbitprimes/ratpoly.hpp"

namespace orbitprimes {

// The map f(z) = z^d + c together with a rational starting point a0 for
// orbit computations (a0 = 0 gives the critical orbit).
struct MapSpec {
  long d = 2;
  Rational c = 0;
  Rational a0 = 0;
};

// Throws ArgumentError unless d >= 2.
void validate(const MapSpec& m);

RatPoly map_poly(const MapSpec& m);  // z^d + c

// n-fold composition f^n (f^0 = z).  Guards d^n against the degree cap.
RatPoly iterate_map(const MapSpec& m, int n, long degree_cap = 4096);

// f(x) for a single rational value; cheaper than building polynomials.
Rational map_step(const MapSpec& m, const Rational& x);

}  // namespace orbitprimes
