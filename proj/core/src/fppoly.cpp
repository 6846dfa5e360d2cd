#include "orbitprimes/fppoly.hpp"

#include <algorithm>

#include "orbitprimes/errors.hpp"
#include "orbitprimes/modarith.hpp"

namespace orbitprimes {

FpPoly::FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs)
    : p_(p), c_(std::move(coeffs)) {
  if (p < 2) throw ArgumentError("FpPoly requires p >= 2");
  for (auto& x : c_) x %= p_;
  trim();
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::uint64_t FpPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return c_[i];
}

std::uint64_t FpPoly::leading() const {
  if (is_zero()) throw ArgumentError("zero polynomial has no leading coefficient");
  return c_.back();
}

bool FpPoly::is_monic() const { return !is_zero() && c_.back() == 1; }

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  if (a.p_ != b.p_) throw ArgumentError("FpPoly arithmetic requires matching p");
  std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = addmod_u64(c[i], b.c_[i], a.p_);
  return FpPoly(a.p_, std::move(c));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
  if (a.p_ != b.p_) throw ArgumentError("FpPoly arithmetic requires matching p");
  std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = submod_u64(c[i], b.c_[i], a.p_);
  return FpPoly(a.p_, std::move(c));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  if (a.p_ != b.p_) throw ArgumentError("FpPoly arithmetic requires matching p");
  if (a.is_zero() || b.is_zero()) return FpPoly(a.p_);
  std::vector<std::uint64_t> c(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      c[i + j] = addmod_u64(c[i + j], mulmod_u64(a.c_[i], b.c_[j], a.p_), a.p_);
  }
  return FpPoly(a.p_, std::move(c));
}

bool operator==(const FpPoly& a, const FpPoly& b) {
  return a.p_ == b.p_ && a.c_ == b.c_;
}

std::pair<FpPoly, FpPoly> divrem(const FpPoly& a, const FpPoly& b) {
  if (a.p() != b.p()) throw ArgumentError("FpPoly arithmetic requires matching p");
  if (b.is_zero()) throw ArgumentError("polynomial division by zero");
  std::uint64_t p = a.p();
  int db = b.degree();
  std::uint64_t lcinv = invmod_u64(b.leading(), p);
  if (lcinv == 0) throw ArgumentError("leading coefficient not invertible mod p");
  std::vector<std::uint64_t> rem(a.coeffs());
  int da = static_cast<int>(rem.size()) - 1;
  if (da < db) return {FpPoly(p), a};
  std::vector<std::uint64_t> quot(da - db + 1, 0);
  for (int i = da; i >= db; --i) {
    if (rem[i] == 0) continue;
    std::uint64_t q = mulmod_u64(rem[i], lcinv, p);
    quot[i - db] = q;
    for (int j = 0; j <= db; ++j)
      rem[i - db + j] = submod_u64(rem[i - db + j], mulmod_u64(q, b.coeff(j), p), p);
  }
  return {FpPoly(p, std::move(quot)), FpPoly(p, std::move(rem))};
}

FpPoly FpPoly::monic() const {
  std::uint64_t inv = invmod_u64(leading(), p_);
  std::vector<std::uint64_t> c(c_);
  for (auto& x : c) x = mulmod_u64(x, inv, p_);
  return FpPoly(p_, std::move(c));
}

FpPoly FpPoly::derivative() const {
  if (c_.size() <= 1) return FpPoly(p_);
  std::vector<std::uint64_t> c(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    c[i - 1] = mulmod_u64(c_[i], i % p_, p_);
  return FpPoly(p_, std::move(c));
}

std::uint64_t FpPoly::evaluate(std::uint64_t x) const {
  std::uint64_t acc = 0;
  x %= p_;
  for (std::size_t i = c_.size(); i-- > 0;)
    acc = addmod_u64(mulmod_u64(acc, x, p_), c_[i], p_);
  return acc;
}

FpPoly fp_gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = divrem(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& mod) {
  return divrem(a * b, mod).second;
}

FpPoly fp_powmod(const FpPoly& base, const BigInt& e, const FpPoly& mod) {
  if (e < 0) throw ArgumentError("negative polynomial exponent");
  FpPoly acc(base.p(), {1});
  FpPoly b = divrem(base, mod).second;
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return acc;
  for (std::size_t i = bits; i-- > 0;) {
    acc = fp_mulmod(acc, acc, mod);
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = fp_mulmod(acc, b, mod);
  }
  return acc;
}

FpPoly reduce_mod_p(const RatPoly& f, std::uint64_t p) {
  std::vector<std::uint64_t> c(f.degree() + 1, 0);
  for (int i = 0; i <= f.degree(); ++i) {
    const Rational& x = f.coeff(i);
    std::uint64_t den = mpz_fdiv_ui(x.get_den().get_mpz_t(), p);
    std::uint64_t inv = invmod_u64(den, p);
    if (inv == 0) throw ArgumentError("denominator not invertible mod p");
    c[i] = mulmod_u64(mpz_fdiv_ui(x.get_num().get_mpz_t(), p), inv, p);
  }
  return FpPoly(p, std::move(c));
}

namespace {

// p-th root of f in F_p[z] (prime field: a^(1/p) = a), valid when f' == 0.
FpPoly pth_root(const FpPoly& f) {
  std::uint64_t p = f.p();
  std::vector<std::uint64_t> c;
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) c.push_back(f.coeff(i));
  return FpPoly(p, std::move(c));
}

void squarefree_parts(const FpPoly& f, int mult,
                      std::vector<std::pair<FpPoly, int>>& out) {
  if (f.degree() < 1) return;
  FpPoly fp = f.derivative();
  if (fp.is_zero()) {
    squarefree_parts(pth_root(f), mult * static_cast<int>(f.p()), out);
    return;
  }
  FpPoly c = fp_gcd(f, fp);
  FpPoly w = divrem(f, c).first;
  int i = 1;
  while (w.degree() > 0) {
    FpPoly y = fp_gcd(w, c);
    FpPoly z = divrem(w, y).first;
    if (z.degree() > 0) out.emplace_back(z, mult * i);
    ++i;
    w = std::move(y);
    c = divrem(c, w).first;
  }
  if (c.degree() > 0) squarefree_parts(pth_root(c), mult * static_cast<int>(f.p()), out);
}

// Equal-degree splitting of a monic squarefree product of degree-d
// irreducibles (Cantor-Zassenhaus; trace map over F_2).
void equal_degree(const FpPoly& f, int d, Rng& rng, std::vector<FpPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  std::uint64_t p = f.p();
  while (true) {
    std::vector<std::uint64_t> rc(f.degree());
    for (auto& x : rc) x = rng() % p;
    FpPoly a(p, std::move(rc));
    if (a.degree() < 1) continue;
    FpPoly g = fp_gcd(a, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(divrem(f, g).first, d, rng, out);
      return;
    }
    FpPoly b(p);
    if (p == 2) {
      // Trace map: sum of a^(2^j) for j < d splits the product.
      FpPoly t(p), cur = divrem(a, f).second;
      for (int j = 0; j < d; ++j) {
        t = t + cur;
        cur = fp_mulmod(cur, cur, f);
      }
      b = std::move(t);
    } else {
      BigInt e = 1;
      for (int j = 0; j < d; ++j) e *= p;
      b = fp_powmod(a, (e - 1) / 2, f) - FpPoly(p, {1});
    }
    g = fp_gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(divrem(f, g).first, d, rng, out);
      return;
    }
  }
}

bool factor_order(const FpFactor& a, const FpFactor& b) {
  if (a.factor.degree() != b.factor.degree())
    return a.factor.degree() < b.factor.degree();
  const auto& ca = a.factor.coeffs();
  const auto& cb = b.factor.coeffs();
  for (std::size_t i = ca.size(); i-- > 0;)
    if (ca[i] != cb[i]) return ca[i] < cb[i];
  return false;
}

}  // namespace

FpFactorization factor_mod_p(const FpPoly& f, Rng& rng) {
  if (f.is_zero()) throw ArgumentError("cannot factor the zero polynomial");
  if (!is_prime_u64(f.p())) throw ArgumentError("factor_mod_p requires prime p");
  FpFactorization result;
  result.lc = f.leading();
  if (f.degree() == 0) return result;
  FpPoly g = f.monic();

  std::vector<std::pair<FpPoly, int>> sqfree;
  squarefree_parts(g, 1, sqfree);

  for (auto& [part, mult] : sqfree) {
    // Distinct-degree: strip off the product of all degree-d irreducibles.
    FpPoly rest = part;
    FpPoly frob = divrem(FpPoly(part.p(), {0, 1}), rest).second;  // z mod rest
    for (int d = 1; rest.degree() >= 2 * d; ++d) {
      frob = fp_powmod(frob, BigInt(static_cast<unsigned long>(part.p())), rest);
      FpPoly zpoly(part.p(), {0, 1});
      FpPoly split = fp_gcd(frob - zpoly, rest);
      if (split.degree() > 0) {
        std::vector<FpPoly> irreducibles;
        equal_degree(split, d, rng, irreducibles);
        for (auto& h : irreducibles) result.factors.push_back({h, mult});
        rest = divrem(rest, split).first;
        frob = divrem(frob, rest).second;
      }
    }
    if (rest.degree() > 0) result.factors.push_back({rest, mult});
  }
  std::sort(result.factors.begin(), result.factors.end(), factor_order);
  return result;
}

FpFactorization factor_mod_p(const FpPoly& f) {
  Rng rng(0x5eedf00dcafe1234ULL);
  return factor_mod_p(f, rng);
}

bool is_irreducible_mod_p(const FpPoly& f) {
  if (f.degree() < 1) return false;
  // Rabin test: z^(p^n) = z mod f, and z^(p^(n/q)) - z coprime to f for
  // every prime q | n.
  std::uint64_t p = f.p();
  int n = f.degree();
  FpPoly g = f.monic();
  FpPoly zp(p, {0, 1});
  auto frob_power = [&](int times) {
    FpPoly acc = divrem(zp, g).second;
    for (int i = 0; i < times; ++i)
      acc = fp_powmod(acc, BigInt(static_cast<unsigned long>(p)), g);
    return acc;
  };
  FpPoly full = frob_power(n);
  if (!(divrem(full - zp, g).second.is_zero())) return false;
  for (int q = 2; q <= n; ++q) {
    if (n % q != 0) continue;
    bool q_prime = true;
    for (int t = 2; t * t <= q; ++t)
      if (q % t == 0) q_prime = false;
    if (!q_prime) continue;
    FpPoly partial = frob_power(n / q);
    if (fp_gcd(partial - zp, g).degree() != 0) return false;
  }
  return true;
}

}  // namespace orbitprimes
