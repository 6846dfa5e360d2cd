#pragma once

#include <string>
#include <vector>

#include "orbitprimes/numeric.hpp"

namespace orbitprimes {

// Dense univariate polynomial over Q, coefficients ascending by degree.
// Invariant: the coefficient vector is empty (zero polynomial) or its last
// entry is nonzero.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs);
  static RatPoly constant(const Rational& c);
  static RatPoly z();  // the monomial z

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  // Coefficient of z^i, zero-padded beyond the degree.
  const Rational& coeff(int i) const;
  const Rational& leading() const;
  bool is_monic() const;

  RatPoly operator-() const;
  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const Rational& s, const RatPoly& a);
  friend bool operator==(const RatPoly& a, const RatPoly& b);

  // Quotient/remainder with deg(rem) < deg(divisor); divisor nonzero.
  friend std::pair<RatPoly, RatPoly> divrem(const RatPoly& a, const RatPoly& b);

  Rational evaluate(const Rational& x) const;
  RatPoly compose(const RatPoly& inner) const;  // this(inner(z))
  RatPoly derivative() const;
  RatPoly pow(unsigned long e) const;
  RatPoly monic() const;  // nonzero required
  // this(-z)
  RatPoly reflect() const;

 private:
  std::vector<Rational> c_;
  void trim();
};

// Monic gcd (primitive pseudo-remainder sequence underneath, so coefficient
// growth stays polynomial). gcd(0,0) = 0.
RatPoly poly_gcd(const RatPoly& a, const RatPoly& b);

// Divisibility over Q: b | a with exact remainder zero.
bool divides(const RatPoly& b, const RatPoly& a);

Rational resultant(const RatPoly& a, const RatPoly& b);

// disc(f) = (-1)^(n(n-1)/2) res(f, f') / lc(f), n = deg f >= 1.
Rational discriminant(const RatPoly& f);

// Yun squarefree decomposition: f = lc * prod_i out[i]^(i+1) with each out[i]
// monic squarefree, pairwise coprime (possibly 1).
std::vector<RatPoly> squarefree_decomposition(const RatPoly& f);

// Content (gcd of numerators over lcm of denominators, signed by the leading
// coefficient) and the primitive integer part: f = content * primitive.
Rational content(const RatPoly& f);
RatPoly primitive_part(const RatPoly& f);  // integer coefficients, positive lc

// Text format "c0 + c1*z + c2*z^2" (zero terms omitted, rationals as "a/b").
// The parser also accepts '-' separators, bare "z^k", and "^" exponents.
std::string format_poly(const RatPoly& f);
RatPoly parse_poly(const std::string& text);

}  // namespace orbitprimes
