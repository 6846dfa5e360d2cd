#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orbitprimes/numeric.hpp"
#include "orbitprimes/ratpoly.hpp"

namespace orbitprimes {

// Newton polygon of a rational polynomial at a prime p: the lower convex
// hull of the points (i, v_p(a_i)) over the nonzero coefficients a_i.
struct NewtonPolygon {
  struct Segment {
    Rational slope;
    long length = 0;  // horizontal span
  };

  std::vector<std::pair<long, long>> points;    // (i, v_p(a_i)), left to right
  std::vector<std::pair<long, long>> vertices;  // lower hull corners
  std::vector<Segment> slopes;                  // strictly increasing slopes

  bool single_segment() const { return slopes.size() == 1; }
};

// Requires f != 0 and p prime.
NewtonPolygon newton_polygon(const RatPoly& f, const BigInt& p);

// Ramification degree of K_p(a^(1/d)) over K_p for v_p(a) = r with p
// unramified and p not dividing d: d / gcd(d, r).
long kummer_ram_degree(long d, long r);

// Ramification of a compositum of two tamely ramified extensions: lcm.
long tame_compositum_ram(long e1, long e2);

// Numerical ramification bookkeeping for the tower K(b_1) <= K(b_2) <= ...
// where b_n is a d^n-th root step above a base element of valuation r:
//   e_0 = 1,  m_n = e_(n-1) * r / d^(n-1)  (must be an integer),
//   e_n = e_(n-1) * kummer_ram_degree(d, m_n),
//   k_n defined by r / d^n = k_n / e_n.
// k_n | k_(n-1) always, and once k stops dropping every later step ramifies
// fully (e_n = d * e_(n-1)); n0 is the index of the last drop (0 if none).
struct RamTower {
  long d = 0;
  long r = 0;
  std::vector<BigInt> e;  // e[0..N], e[0] = 1
  std::vector<BigInt> k;  // k[0..N], k[0] = r
  long n0 = 0;
  std::string violation;  // nonempty if an integrality hypothesis failed

  bool ok() const { return violation.empty(); }
};

// Requires d >= 2, r >= 1, N >= 0.  On an integrality failure the lists are
// truncated at the offending level and `violation` says what broke.
RamTower ram_tower(long d, long r, long N);

}  // namespace orbitprimes
