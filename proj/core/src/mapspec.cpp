#include "orbitprimes/mapspec.hpp"

#include "orbitprimes/errors.hpp"

namespace orbitprimes {

void validate(const MapSpec& m) {
  if (m.d < 2) throw ArgumentError("map degree d must be >= 2");
}

RatPoly map_poly(const MapSpec& m) {
  validate(m);
  std::vector<Rational> c(m.d + 1, Rational(0));
  c[0] = m.c;
  c[m.d] = 1;
  return RatPoly(std::move(c));
}

RatPoly iterate_map(const MapSpec& m, int n, long degree_cap) {
  validate(m);
  if (n < 0) throw ArgumentError("iterate count must be >= 0");
  long deg = 1;
  for (int i = 0; i < n; ++i) {
    if (deg > degree_cap / m.d)
      throw CapabilityError("iterate degree d^n exceeds the configured cap");
    deg *= m.d;
  }
  RatPoly it = RatPoly::z();
  for (int i = 0; i < n; ++i)
    it = it.pow(static_cast<unsigned long>(m.d)) + RatPoly::constant(m.c);
  return it;
}

Rational map_step(const MapSpec& m, const Rational& x) {
  Rational p = x;
  Rational acc = 1;
  long e = m.d;
  while (e) {  // binary powering on values
    if (e & 1) acc *= p;
    p *= p;
    e >>= 1;
  }
  return acc + m.c;
}

}  // namespace orbitprimes
