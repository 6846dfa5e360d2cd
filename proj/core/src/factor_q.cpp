#include "orbitprimes/factor_q.hpp"

#include <algorithm>
#include <cassert>

#include "orbitprimes/errors.hpp"
#include "orbitprimes/fppoly.hpp"
#include "orbitprimes/modarith.hpp"

namespace orbitprimes {

RatPoly FactorList::reassemble() const {
  RatPoly acc = RatPoly::constant(unit);
  for (const auto& [f, m] : factors) acc = acc * f.pow(m);
  return acc;
}

int FactorList::total_count() const {
  int n = 0;
  for (const auto& e : factors) n += e.multiplicity;
  return n;
}

namespace {

// ---- arithmetic on integer polynomials modulo m (vector<BigInt>, ascending,
// coefficients reduced into [0, m)) ----

using ZVec = std::vector<BigInt>;

int zdeg(const ZVec& f) {
  int d = static_cast<int>(f.size()) - 1;
  while (d >= 0 && f[d] == 0) --d;
  return d;
}

void ztrim(ZVec& f) { f.resize(zdeg(f) + 1); }

ZVec zreduce(ZVec f, const BigInt& m) {
  for (auto& c : f) {
    c %= m;
    if (c < 0) c += m;
  }
  ztrim(f);
  return f;
}

ZVec zmul(const ZVec& a, const ZVec& b, const BigInt& m) {
  if (a.empty() || b.empty()) return {};
  ZVec c(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return zreduce(std::move(c), m);
}

ZVec zadd(const ZVec& a, const ZVec& b, const BigInt& m) {
  ZVec c(std::max(a.size(), b.size()), BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  return zreduce(std::move(c), m);
}

ZVec zsub(const ZVec& a, const ZVec& b, const BigInt& m) {
  ZVec c(std::max(a.size(), b.size()), BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  return zreduce(std::move(c), m);
}

// Division by a monic divisor, everything mod m.
std::pair<ZVec, ZVec> zdivrem_monic(const ZVec& a, const ZVec& b, const BigInt& m) {
  int db = zdeg(b);
  assert(db >= 0 && b[db] == 1);
  ZVec rem = a;
  int da = zdeg(rem);
  if (da < db) return {{}, zreduce(std::move(rem), m)};
  ZVec quot(da - db + 1, BigInt(0));
  for (int i = da; i >= db; --i) {
    BigInt q = rem[i] % m;
    if (q < 0) q += m;
    if (q == 0) {
      rem[i] = 0;
      continue;
    }
    quot[i - db] = q;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b[j];
    rem[i] = 0;
  }
  return {zreduce(std::move(quot), m), zreduce(std::move(rem), m)};
}

ZVec from_fp(const FpPoly& f) {
  ZVec out(f.coeffs().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = BigInt(static_cast<unsigned long>(f.coeffs()[i]));
  return out;
}

// Symmetric representative in (-m/2, m/2].
BigInt zsym(const BigInt& c, const BigInt& m) {
  BigInt r = c % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

RatPoly to_ratpoly_sym(const ZVec& f, const BigInt& m) {
  std::vector<Rational> c(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) c[i] = Rational(zsym(f[i], m));
  return RatPoly(std::move(c));
}

ZVec from_int_poly(const RatPoly& f, const BigInt& m) {
  ZVec out(f.degree() + 1);
  for (int i = 0; i <= f.degree(); ++i) {
    assert(f.coeff(i).get_den() == 1);
    out[i] = BigInt(f.coeff(i).get_num());
  }
  return zreduce(std::move(out), m);
}

// Extended Euclid in F_p[z]: s*a + t*b = 1 for coprime a, b.
std::pair<FpPoly, FpPoly> fp_bezout(const FpPoly& a, const FpPoly& b) {
  std::uint64_t p = a.p();
  FpPoly r0 = a, r1 = b;
  FpPoly s0(p, {1}), s1(p);
  FpPoly t0(p), t1(p, {1});
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    FpPoly s2 = s0 - q * s1;
    FpPoly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.degree() != 0) throw std::logic_error("bezout of non-coprime polynomials");
  std::uint64_t inv = invmod_u64(r0.leading(), p);
  FpPoly scale(p, {inv});
  return {s0 * scale, t0 * scale};
}

// One quadratic Hensel step: from f = g*h (mod m) with s*g + t*h = 1 (mod m),
// h monic, to the same congruences mod m^2.
struct HenselPair {
  ZVec g, h, s, t;
};

void hensel_step(const ZVec& f, HenselPair& hp, const BigInt& m) {
  BigInt m2 = m * m;
  ZVec& g = hp.g;
  ZVec& h = hp.h;
  ZVec& s = hp.s;
  ZVec& t = hp.t;
  ZVec e = zsub(zreduce(f, m2), zmul(g, h, m2), m2);
  auto [q, r] = zdivrem_monic(zmul(s, e, m2), h, m2);
  g = zadd(g, zadd(zmul(t, e, m2), zmul(q, g, m2), m2), m2);
  h = zadd(h, r, m2);
  ZVec one{BigInt(1)};
  ZVec b = zsub(zadd(zmul(s, g, m2), zmul(t, h, m2), m2), one, m2);
  auto [cq, cr] = zdivrem_monic(zmul(s, b, m2), h, m2);
  s = zsub(s, cr, m2);
  t = zsub(t, zadd(zmul(t, b, m2), zmul(cq, g, m2), m2), m2);
}

// Lift the factorization f = prod(parts) (mod p), f and parts monic, to
// mod target = p^K, recursively splitting the factor list in halves.
void hensel_tree(const ZVec& f, const std::vector<FpPoly>& parts, std::size_t lo,
                 std::size_t hi, std::uint64_t p, const BigInt& target,
                 std::vector<ZVec>& out) {
  if (hi - lo == 1) {
    out.push_back(zreduce(f, target));
    return;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  FpPoly gl(p, {1}), gr(p, {1});
  for (std::size_t i = lo; i < mid; ++i) gl = gl * parts[i];
  for (std::size_t i = mid; i < hi; ++i) gr = gr * parts[i];
  auto [s, t] = fp_bezout(gl, gr);

  HenselPair hp{from_fp(gl), from_fp(gr), from_fp(s), from_fp(t)};
  BigInt m(static_cast<unsigned long>(p));
  while (m < target) {
    hensel_step(f, hp, m);
    m = m * m;
  }
  // Reduce to the exact target modulus; the product stays congruent because
  // m is now a multiple of target... it is a power of p >= target.
  ZVec fl = zreduce(hp.g, target);
  ZVec fr = zreduce(hp.h, target);
  if (zdeg(fl) != gl.degree() || zdeg(fr) != gr.degree() || fl[zdeg(fl)] != 1 ||
      fr[zdeg(fr)] != 1)
    throw std::logic_error("hensel lift degree/monicity drift");
  hensel_tree(fl, parts, lo, mid, p, target, out);
  hensel_tree(fr, parts, mid, hi, p, target, out);
}

BigInt max_abs_coeff(const RatPoly& f) {
  BigInt m = 0;
  for (const auto& c : f.coeffs()) {
    BigInt a = abs(BigInt(c.get_num()));
    if (a > m) m = a;
  }
  return m;
}

// Mignotte-style bound: every monic factor of monic G has coefficients of
// absolute value <= 2^n * sqrt(n+1) * max|G_i|.
BigInt factor_coeff_bound(const RatPoly& g) {
  int n = g.degree();
  BigInt norm = max_abs_coeff(g) * (BigInt(1) << n);
  BigInt root = sqrt(BigInt(n + 1)) + 1;
  return norm * root;
}

std::uint64_t good_prime_for(const RatPoly& g) {
  // Smallest p >= 5 keeping the reduction squarefree of full degree and
  // avoiding p | deg(g); equivalent to avoiding p | disc(g), p | lc(g).
  int n = g.degree();
  for (std::uint64_t p = 5;; ++p) {
    if (!is_prime_u64(p)) continue;
    if (n % static_cast<int>(p) == 0) continue;
    const Rational& lc = g.leading();
    if (mpz_fdiv_ui(lc.get_num().get_mpz_t(), p) == 0) continue;
    FpPoly gp = reduce_mod_p(g, p);
    if (gp.degree() != n) continue;
    if (fp_gcd(gp, gp.derivative()).degree() != 0) continue;
    return p;
  }
}

// Factor a monic squarefree integer polynomial into monic integer
// irreducibles (Zassenhaus).
std::vector<RatPoly> zassenhaus_monic(const RatPoly& G, const FactorConfig& cfg) {
  int n = G.degree();
  if (n == 1) return {G};
  std::uint64_t p = good_prime_for(G);
  FpFactorization modular = factor_mod_p(reduce_mod_p(G, p));
  std::size_t r = modular.factors.size();
  if (r == 1) return {G};
  if (static_cast<int>(r) > cfg.modular_factor_cap)
    throw CapabilityError("too many modular factors for subset recombination");

  BigInt bound = 2 * factor_coeff_bound(G) + 1;
  BigInt target(static_cast<unsigned long>(p));
  while (target < bound) target *= static_cast<unsigned long>(p);

  std::vector<FpPoly> parts;
  for (const auto& e : modular.factors) parts.push_back(e.factor);
  std::vector<ZVec> lifted;
  hensel_tree(from_int_poly(G, target), parts, 0, parts.size(), p, target, lifted);

  std::vector<RatPoly> found;
  std::vector<std::size_t> remaining(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) remaining[i] = i;
  RatPoly rest = G;

  auto try_subset = [&](const std::vector<std::size_t>& subset) -> bool {
    // Quick reject via the constant coefficient.
    BigInt c0(1);
    for (auto i : subset) c0 = c0 * lifted[i][0] % target;
    c0 = zsym(c0, target);
    const BigInt rest0 = BigInt(rest.coeff(0).get_num());
    if (rest0 != 0 && (c0 == 0 || !mpz_divisible_p(rest0.get_mpz_t(), c0.get_mpz_t())))
      return false;
    ZVec prod{BigInt(1)};
    for (auto i : subset) prod = zmul(prod, lifted[i], target);
    RatPoly cand = to_ratpoly_sym(prod, target);
    if (!divides(cand, rest)) return false;
    found.push_back(cand);
    rest = divrem(rest, cand).first;
    return true;
  };

  std::size_t size = 1;
  while (2 * size <= remaining.size()) {
    bool advanced = false;
    std::vector<std::size_t> pick(size);
    // Enumerate index combinations of `remaining` of the given size.
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      for (std::size_t i = 0; i < size; ++i) pick[i] = remaining[idx[i]];
      if (try_subset(pick)) {
        std::vector<std::size_t> next;
        for (auto v : remaining)
          if (std::find(pick.begin(), pick.end(), v) == pick.end()) next.push_back(v);
        remaining = std::move(next);
        advanced = true;
        break;  // restart enumeration at this size with the reduced pool
      }
      // next combination
      std::size_t k = size;
      while (k > 0 && idx[k - 1] == remaining.size() - size + (k - 1)) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!advanced) ++size;
  }
  if (rest.degree() > 0) found.push_back(rest);
  return found;
}

// Irreducible factors of a primitive squarefree integer polynomial, via the
// monic substitution G(z) = a^(n-1) F(z/a).
std::vector<RatPoly> zassenhaus_squarefree(const RatPoly& F, const FactorConfig& cfg) {
  int n = F.degree();
  if (n == 1) return {F};
  BigInt a(F.leading().get_num());
  // G(z) = a^(n-1) F(z/a) is monic with integer coefficients F_i a^(n-1-i).
  std::vector<Rational> gc(n + 1);
  gc[n] = 1;
  BigInt pw = 1;
  for (int i = n - 1; i >= 0; --i) {
    gc[i] = F.coeff(i) * Rational(pw);
    pw *= a;
  }
  RatPoly G(std::move(gc));
  std::vector<RatPoly> monic_factors = zassenhaus_monic(G, cfg);
  std::vector<RatPoly> out;
  for (const auto& h : monic_factors) {
    std::vector<Rational> hc(h.degree() + 1);
    BigInt api = 1;
    for (int i = 0; i <= h.degree(); ++i) {
      hc[i] = h.coeff(i) * Rational(api);
      api *= a;
    }
    out.push_back(primitive_part(RatPoly(std::move(hc))));
  }
  return out;
}

bool entry_order(const FactorEntry& x, const FactorEntry& y) {
  if (x.factor.degree() != y.factor.degree())
    return x.factor.degree() < y.factor.degree();
  for (int i = x.factor.degree(); i >= 0; --i) {
    int c = cmp(x.factor.coeff(i), y.factor.coeff(i));
    if (c != 0) return c < 0;
  }
  return x.multiplicity < y.multiplicity;
}

}  // namespace

FactorList factor_over_Q(const RatPoly& f, const FactorConfig& cfg) {
  if (f.is_zero()) throw ArgumentError("cannot factor the zero polynomial");
  if (f.degree() > cfg.degree_cap)
    throw CapabilityError("degree exceeds the factorization cap");
  FactorList out;
  out.certified = true;
  if (f.degree() == 0) {
    out.unit = f.coeff(0);
    return out;
  }

  RatPoly work = f;
  // Strip powers of z so the squarefree machinery sees nonzero constant terms.
  int zmult = 0;
  {
    const auto& cs = work.coeffs();
    std::size_t k = 0;
    while (k < cs.size() && cs[k] == 0) ++k;
    if (k > 0) {
      zmult = static_cast<int>(k);
      std::vector<Rational> shifted(cs.begin() + k, cs.end());
      work = RatPoly(std::move(shifted));
    }
  }
  if (zmult > 0) out.factors.push_back({RatPoly::z(), zmult});

  if (work.degree() >= 1) {
    std::vector<RatPoly> sq = squarefree_decomposition(work);
    for (std::size_t i = 0; i < sq.size(); ++i) {
      if (sq[i].degree() < 1) continue;
      RatPoly prim = primitive_part(sq[i]);
      for (const auto& irr : zassenhaus_squarefree(prim, cfg))
        out.factors.push_back({irr, static_cast<int>(i) + 1});
    }
  }

  // unit = lc(f) / prod lc(factor)^mult — degrees already match, so this
  // single scalar reconciles the product with the input.
  Rational denom = 1;
  for (const auto& [h, m] : out.factors)
    for (int i = 0; i < m; ++i) denom *= h.leading();
  out.unit = f.leading() / denom;
  std::sort(out.factors.begin(), out.factors.end(), entry_order);
  return out;
}

Irreducibility is_irreducible_over_Q(const RatPoly& f, const FactorConfig& cfg) {
  if (f.is_zero()) throw ArgumentError("zero polynomial");
  int n = f.degree();
  if (n == 0) return Irreducibility::No;
  if (poly_gcd(f, f.derivative()).degree() != 0)
    throw ArgumentError("is_irreducible_over_Q requires a squarefree input");
  if (n == 1) return Irreducibility::Yes;

  RatPoly prim = primitive_part(f);
  // Degree-pattern sweep over the first few good primes: irreducible mod p
  // settles it, and jointly unattainable factor degrees also settle it.
  std::vector<bool> attainable(n + 1, true);
  std::uint64_t p = 4;
  for (int sweep = 0; sweep < 5; ++sweep) {
    for (p = p + 1;; ++p) {
      if (!is_prime_u64(p) || p < 5) continue;
      if (n % static_cast<long>(p) == 0) continue;
      if (mpz_fdiv_ui(prim.leading().get_num().get_mpz_t(), p) == 0) continue;
      FpPoly gp = reduce_mod_p(prim, p);
      if (gp.degree() != n || fp_gcd(gp, gp.derivative()).degree() != 0) continue;
      break;
    }
    FpFactorization modular = factor_mod_p(reduce_mod_p(prim, p));
    if (modular.factors.size() == 1) return Irreducibility::Yes;
    std::vector<bool> sums(n + 1, false);
    sums[0] = true;
    for (const auto& e : modular.factors)
      for (int s = n; s >= e.factor.degree(); --s)
        if (sums[s - e.factor.degree()]) sums[s] = true;
    for (int i = 0; i <= n; ++i) attainable[i] = attainable[i] && sums[i];
    bool proper = false;
    for (int i = 1; i < n; ++i) proper |= attainable[i];
    if (!proper) return Irreducibility::Yes;
  }
  if (n > cfg.degree_cap) return Irreducibility::Unknown;
  FactorList full = factor_over_Q(prim, cfg);
  return full.total_count() == 1 ? Irreducibility::Yes : Irreducibility::No;
}

}  // namespace orbitprimes
