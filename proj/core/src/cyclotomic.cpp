#include "orbitprimes/cyclotomic.hpp"

#include <sstream>

#include "orbitprimes/errors.hpp"
#include "orbitprimes/modarith.hpp"

namespace orbitprimes {

namespace {

void check_p(unsigned long p) {
  if (p < 3 || !is_prime_u64(p))
    throw ArgumentError("CycInt requires an odd prime p");
}

using Vec = std::vector<Rational>;

int deg(const Vec& f) {
  int d = static_cast<int>(f.size()) - 1;
  while (d >= 0 && f[d] == 0) --d;
  return d;
}

// Remainder of a by b over Q (deg b >= 0, lc(b) != 0).
Vec poly_mod(Vec a, const Vec& b, int db) {
  int da = deg(a);
  while (da >= db) {
    Rational q = a[da] / b[db];
    for (int i = 0; i <= db; ++i) a[da - db + i] -= q * b[i];
    a[da] = 0;  // cancel exactly despite rounding-free arithmetic noise
    da = deg(a);
  }
  a.resize(da + 1);
  return a;
}

// Resultant over Q by the Euclidean recurrence
//   res(a, b) = (-1)^(da*db) lc(b)^(da-dr) res(b, a mod b).
Rational resultant_vec(Vec a, Vec b) {
  int da = deg(a), db = deg(b);
  if (da < 0 || db < 0) return 0;
  Rational acc = 1;
  while (true) {
    da = deg(a);
    db = deg(b);
    if (db == 0) {
      Rational base = b[0], pw = 1;
      for (int i = 0; i < da; ++i) pw *= base;
      return acc * pw;
    }
    if (da < db) {
      if ((da * db) % 2 == 1) acc = -acc;
      std::swap(a, b);
      continue;
    }
    Vec r = poly_mod(a, b, db);
    int dr = deg(r);
    if (dr < 0) return 0;
    if ((da * db) % 2 == 1) acc = -acc;
    Rational pw = 1;
    for (int i = 0; i < da - dr; ++i) pw *= b[db];
    acc *= pw;
    a = std::move(b);
    b = std::move(r);
  }
}

}  // namespace

CycInt::CycInt(unsigned long p, std::vector<BigInt> coords) : p_(p), c_(std::move(coords)) {
  check_p(p);
  if (c_.size() != p - 1)
    throw ArgumentError("CycInt coordinate vector must have length p-1");
}

CycInt CycInt::from_integer(unsigned long p, const BigInt& t) {
  check_p(p);
  std::vector<BigInt> c(p - 1, BigInt(0));
  c[0] = t;
  return CycInt(p, std::move(c));
}

CycInt CycInt::linear(unsigned long p, const BigInt& t, const BigInt& r) {
  check_p(p);
  std::vector<BigInt> c(p - 1, BigInt(0));
  c[0] = t;
  c[1] = r;
  return CycInt(p, std::move(c));
}

CycInt CycInt::zeta_power(unsigned long p, unsigned long i) {
  check_p(p);
  i %= p;
  std::vector<BigInt> c(p - 1, BigInt(0));
  if (i < p - 1) {
    c[i] = 1;
  } else {
    for (auto& x : c) x = -1;  // zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))
  }
  return CycInt(p, std::move(c));
}

bool CycInt::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

CycInt CycInt::operator-() const {
  std::vector<BigInt> c(c_);
  for (auto& x : c) x = -x;
  return CycInt(p_, std::move(c));
}

CycInt operator+(const CycInt& a, const CycInt& b) {
  if (a.p_ != b.p_) throw ArgumentError("CycInt arithmetic requires matching p");
  std::vector<BigInt> c(a.c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
  return CycInt(a.p_, std::move(c));
}

CycInt operator-(const CycInt& a, const CycInt& b) { return a + (-b); }

CycInt operator*(const CycInt& a, const CycInt& b) {
  if (a.p_ != b.p_) throw ArgumentError("CycInt arithmetic requires matching p");
  unsigned long p = a.p_;
  // Multiply with exponents taken mod p (zeta^p = 1), then eliminate the
  // zeta^(p-1) coordinate against 1 + zeta + ... + zeta^(p-1) = 0.
  std::vector<BigInt> t(p, BigInt(0));
  for (std::size_t i = 0; i < p - 1; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < p - 1; ++j) {
      if (b.c_[j] == 0) continue;
      t[(i + j) % p] += a.c_[i] * b.c_[j];
    }
  }
  std::vector<BigInt> c(p - 1);
  for (std::size_t i = 0; i < p - 1; ++i) c[i] = t[i] - t[p - 1];
  return CycInt(p, std::move(c));
}

bool operator==(const CycInt& a, const CycInt& b) {
  return a.p_ == b.p_ && a.c_ == b.c_;
}

CycInt CycInt::pow(unsigned long e) const {
  CycInt base = *this;
  CycInt acc = CycInt::from_integer(p_, 1);
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

std::string CycInt::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    os << c_[i].get_str();
    if (i == 1) os << "*zeta";
    if (i > 1) os << "*zeta^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

BigInt cyc_norm(const CycInt& x) {
  if (x.is_zero()) return 0;
  unsigned long p = x.p();
  Vec phi(p, Rational(1));  // 1 + T + ... + T^(p-1)
  Vec a(p - 1);
  for (std::size_t i = 0; i < p - 1; ++i) a[i] = Rational(x.coords()[i]);
  Rational r = resultant_vec(phi, a);
  if (r.get_den() != 1)
    throw std::logic_error("cyclotomic norm must be an integer");
  return BigInt(r.get_num());
}

std::uint64_t split_prime_zeta_residue(unsigned long p, std::uint64_t q) {
  check_p(p);
  if (!is_prime_u64(q) || q % p != 1)
    throw ArgumentError("split residue requires a prime q = 1 mod p");
  for (std::uint64_t z = 2; z < q; ++z)
    if (powmod_u64(z, p, q) == 1) return z;  // z != 1 and z^p = 1 force order p
  throw std::logic_error("no residue of order p found");
}

std::uint64_t reduce_at_split_prime(const CycInt& x, std::uint64_t q) {
  std::uint64_t g = split_prime_zeta_residue(x.p(), q);
  // Horner evaluation of the coordinate polynomial at g, mod q.
  std::uint64_t acc = 0;
  for (std::size_t i = x.coords().size(); i-- > 0;) {
    acc = mulmod_u64(acc, g, q);
    acc = addmod_u64(acc, mpz_fdiv_ui(x.coords()[i].get_mpz_t(), q), q);
  }
  return acc;
}

PthPowerCert is_pth_power_cyc(const CycInt& x, int trials) {
  PthPowerCert cert;
  if (x.is_zero()) return cert;  // 0 = 0^p: nothing to certify
  unsigned long p = x.p();
  cert.norm = cyc_norm(x);
  // A p-th power has norm N(y)^p, so a non-p-th-power norm certifies "no".
  if (!kth_root_exact(cert.norm, p)) {
    cert.verdict = PowerVerdict::CertifiedNo;
    cert.route = PowerRoute::Norm;
    return cert;
  }
  // Split-residue route: at a degree-one prime above q = 1 mod p, a p-th
  // power reduces to a p-th power residue, which its (q-1)/p-th power detects.
  for (std::uint64_t q = p + 1; cert.residue_trials < trials; q += p) {
    if (!is_prime_u64(q)) continue;
    std::uint64_t r = reduce_at_split_prime(x, q);
    if (r == 0) continue;  // x lies in the prime above q; no information
    ++cert.residue_trials;
    if (powmod_u64(r, (q - 1) / p, q) != 1) {
      cert.verdict = PowerVerdict::CertifiedNo;
      cert.route = PowerRoute::SplitResidue;
      cert.witness_q = q;
      return cert;
    }
  }
  return cert;
}

}  // namespace orbitprimes
