#include "orbitprimes/ratpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "orbitprimes/errors.hpp"

namespace orbitprimes {

namespace {
const Rational kZero = 0;
}

RatPoly::RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void RatPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RatPoly RatPoly::constant(const Rational& c) { return RatPoly({c}); }

RatPoly RatPoly::z() { return RatPoly({Rational(0), Rational(1)}); }

const Rational& RatPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return kZero;
  return c_[i];
}

const Rational& RatPoly::leading() const {
  if (is_zero()) throw ArgumentError("zero polynomial has no leading coefficient");
  return c_.back();
}

bool RatPoly::is_monic() const { return !is_zero() && c_.back() == 1; }

RatPoly RatPoly::operator-() const {
  std::vector<Rational> c(c_);
  for (auto& x : c) x = -x;
  return RatPoly(std::move(c));
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return RatPoly(std::move(c));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + (-b); }

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return RatPoly();
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return RatPoly(std::move(c));
}

RatPoly operator*(const Rational& s, const RatPoly& a) {
  std::vector<Rational> c(a.c_);
  for (auto& x : c) x *= s;
  return RatPoly(std::move(c));
}

bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

std::pair<RatPoly, RatPoly> divrem(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw ArgumentError("polynomial division by zero");
  int db = b.degree();
  std::vector<Rational> rem(a.c_);
  int da = static_cast<int>(rem.size()) - 1;
  if (da < db) return {RatPoly(), a};
  std::vector<Rational> quot(da - db + 1, Rational(0));
  for (int i = da; i >= db; --i) {
    if (rem[i] == 0) continue;
    Rational q = rem[i] / b.c_[db];
    quot[i - db] = q;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b.c_[j];
  }
  return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

Rational RatPoly::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

RatPoly RatPoly::compose(const RatPoly& inner) const {
  RatPoly acc;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * inner + RatPoly::constant(c_[i]);
  return acc;
}

RatPoly RatPoly::derivative() const {
  if (c_.size() <= 1) return RatPoly();
  std::vector<Rational> c(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = Rational(long(i)) * c_[i];
  return RatPoly(std::move(c));
}

RatPoly RatPoly::pow(unsigned long e) const {
  RatPoly base = *this, acc = RatPoly::constant(1);
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

RatPoly RatPoly::monic() const {
  Rational inv = 1 / leading();
  return inv * *this;
}

RatPoly RatPoly::reflect() const {
  std::vector<Rational> c(c_);
  for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  return RatPoly(std::move(c));
}

Rational content(const RatPoly& f) {
  if (f.is_zero()) return 0;
  BigInt num_gcd = 0, den_lcm = 1;
  for (const auto& c : f.coeffs()) {
    if (c == 0) continue;
    num_gcd = gcd(num_gcd, BigInt(c.get_num()));
    den_lcm = lcm(den_lcm, BigInt(c.get_den()));
  }
  Rational cont(num_gcd, den_lcm);
  cont.canonicalize();
  if (f.leading() < 0) cont = -cont;
  return cont;
}

RatPoly primitive_part(const RatPoly& f) {
  if (f.is_zero()) return f;
  return Rational(1 / content(f)) * f;
}

namespace {

// Primitive pseudo-remainder sequence over the integer primitive parts;
// avoids the coefficient explosion of naive rational Euclid.
RatPoly gcd_ppr(RatPoly a, RatPoly b) {
  a = primitive_part(a);
  b = primitive_part(b);
  while (!b.is_zero()) {
    int delta = a.degree() - b.degree();
    if (delta < 0) {
      std::swap(a, b);
      continue;
    }
    // Pseudo-remainder: lc(b)^(delta+1) * a mod b has integer coefficients.
    Rational scale = 1;
    for (int i = 0; i <= delta; ++i) scale *= b.leading();
    RatPoly r = divrem(scale * a, b).second;
    a = std::move(b);
    b = r.is_zero() ? RatPoly() : primitive_part(r);
  }
  return a;
}

}  // namespace

RatPoly poly_gcd(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() && b.is_zero()) return RatPoly();
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  return gcd_ppr(a, b).monic();
}

bool divides(const RatPoly& b, const RatPoly& a) {
  if (b.is_zero()) return a.is_zero();
  if (a.is_zero()) return true;
  if (a.degree() < b.degree()) return false;
  return divrem(a, b).second.is_zero();
}

Rational resultant(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  RatPoly f = a, g = b;
  Rational acc = 1;
  while (true) {
    int df = f.degree(), dg = g.degree();
    if (dg == 0) {
      Rational pw = 1;
      for (int i = 0; i < df; ++i) pw *= g.coeff(0);
      return acc * pw;
    }
    if (df < dg) {
      if (df % 2 == 1 && dg % 2 == 1) acc = -acc;
      std::swap(f, g);
      continue;
    }
    RatPoly r = divrem(f, g).second;
    if (r.is_zero()) return 0;
    if (df % 2 == 1 && dg % 2 == 1) acc = -acc;
    Rational pw = 1;
    for (int i = 0; i < df - r.degree(); ++i) pw *= g.leading();
    acc *= pw;
    f = std::move(g);
    g = std::move(r);
  }
}

Rational discriminant(const RatPoly& f) {
  int n = f.degree();
  if (n < 1) throw ArgumentError("discriminant requires degree >= 1");
  Rational res = resultant(f, f.derivative());
  Rational d = res / f.leading();
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 == 1) d = -d;
  return d;
}

std::vector<RatPoly> squarefree_decomposition(const RatPoly& f) {
  if (f.is_zero()) throw ArgumentError("squarefree decomposition of zero");
  std::vector<RatPoly> out;
  RatPoly g = f.monic();
  if (g.degree() == 0) return out;
  // Yun: characteristic zero, so derivative-based splitting is complete.
  RatPoly d = g.derivative();
  RatPoly a = poly_gcd(g, d);
  RatPoly b = divrem(g, a).first;
  RatPoly c = divrem(d, a).first;
  RatPoly z = c - b.derivative();
  while (!(b.degree() == 0)) {
    RatPoly p = poly_gcd(b, z);
    out.push_back(p.is_zero() ? RatPoly::constant(1) : p.monic());
    b = divrem(b, p).first;
    c = divrem(z, p).first;
    z = c - b.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

std::string format_poly(const RatPoly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i <= f.degree(); ++i) {
    Rational c = f.coeff(i);
    if (c == 0) continue;
    if (first) {
      if (c < 0 && i > 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    if (i == 0) {
      os << to_string(c);
    } else {
      if (c != 1) os << to_string(c) << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

namespace {

void strip_spaces(std::string& s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  s = std::move(out);
}

}  // namespace

RatPoly parse_poly(const std::string& text) {
  std::string s = text;
  strip_spaces(s);
  if (s.empty()) throw ArgumentError("empty polynomial text");
  // Turn subtraction into addition of a negated term, except for leading
  // signs and signs inside "a/b" or exponents (no such case arises: '-' can
  // follow only '+', '*', '^', '/' or start-of-string in valid input).
  std::string norm;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '-' && i > 0 && std::string("+-*^/(").find(s[i - 1]) == std::string::npos)
      norm += "+-";
    else
      norm += s[i];
  }
  std::vector<Rational> coeffs;
  auto add_term = [&coeffs](const Rational& c, long e) {
    if (e < 0 || e > 100000) throw ArgumentError("exponent out of range");
    if (coeffs.size() <= static_cast<std::size_t>(e)) coeffs.resize(e + 1, Rational(0));
    coeffs[e] += c;
  };
  std::size_t pos = 0;
  while (pos < norm.size()) {
    std::size_t next = norm.find('+', pos);
    if (next == std::string::npos) next = norm.size();
    std::string term = norm.substr(pos, next - pos);
    pos = next + 1;
    if (term.empty()) throw ArgumentError("malformed polynomial: '" + text + "'");
    Rational c = 1;
    long e = 0;
    bool neg = false;
    std::size_t t = 0;
    if (term[t] == '-') {
      neg = true;
      ++t;
    }
    std::size_t zpos = term.find('z', t);
    if (zpos == std::string::npos) {
      c = parse_rational(term.substr(t));
    } else {
      std::string head = term.substr(t, zpos - t);
      if (!head.empty() && head.back() == '*') head.pop_back();
      if (!head.empty()) c = parse_rational(head);
      std::string tail = term.substr(zpos + 1);
      if (tail.empty()) {
        e = 1;
      } else if (tail[0] == '^') {
        std::string digits = tail.substr(1);
        if (digits.empty() ||
            digits.find_first_not_of("0123456789") != std::string::npos)
          throw ArgumentError("malformed exponent in term: '" + term + "'");
        try {
          e = std::stol(digits);
        } catch (const std::exception&) {
          throw ArgumentError("exponent out of range in term: '" + term + "'");
        }
      } else {
        throw ArgumentError("malformed polynomial term: '" + term + "'");
      }
    }
    add_term(neg ? Rational(-c) : c, e);
  }
  return RatPoly(std::move(coeffs));
}

}  // namespace orbitprimes
