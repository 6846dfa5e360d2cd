#include "orbitprimes/stability.hpp"

#include <algorithm>
#include <numeric>

#include "orbitprimes/cyclotomic.hpp"
#include "orbitprimes/dynamics.hpp"
#include "orbitprimes/errors.hpp"

namespace orbitprimes {

namespace {

std::vector<long> prime_divisors(long d) {
  std::vector<long> ps;
  long m = d;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    ps.push_back(p);
    while (m % p == 0) m /= p;
  }
  if (m > 1) ps.push_back(m);
  return ps;
}

long ceil_log2(long e) {  // smallest k with 2^k >= e, e >= 1
  long k = 0;
  while ((1L << k) < e) ++k;
  return k;
}

// g must be monic and irreducible; reducible input is the caller's error,
// an undecidable one a capability limit.
void require_irreducible(const RatPoly& g) {
  if (g.is_zero() || !g.is_monic())
    throw ArgumentError("g must be monic of degree >= 1");
  if (g.degree() == 1) return;
  switch (is_irreducible_over_Q(g)) {
    case Irreducibility::Yes:
      return;
    case Irreducibility::No:
      throw ArgumentError("g must be irreducible over Q");
    case Irreducibility::Unknown:
      throw CapabilityError("irreducibility of g exceeds the degree cap");
  }
}

}  // namespace

int stability_epsilon(long deg_g, long d, long n) {
  return (n == 1 && d % 2 == 0 && deg_g % 2 == 1) ? 1 : 0;
}

StabilityCertificate firststab_certify(const RatPoly& g, const MapSpec& m, long N) {
  validate(m);
  if (N < 1) throw ArgumentError("firststab_certify requires N >= 1");
  require_irreducible(g);

  auto orbit = critical_orbit(m, N);
  std::vector<long> dprimes = prime_divisors(m.d);

  for (long n = 1; n <= N; ++n) {
    int eps = stability_epsilon(g.degree(), m.d, n);
    Rational gval = g.evaluate(orbit.values[n - 1]);
    Rational signed_val = eps ? Rational(-gval) : gval;
    for (long p : dprimes) {
      if (is_perfect_power(signed_val, static_cast<unsigned long>(p))) {
        StabilityCertificate cert;
        cert.kind = StabilityCertificate::Kind::FirststabFails;
        cert.n = n;
        cert.condition_id = 1;
        cert.offending_value = signed_val;
        cert.power = p;
        return cert;
      }
    }
    if (m.d % 4 == 0) {
      Rational quad = Rational(4) * gval;
      if (eps == 0) quad = -quad;  // (-1)^(eps+1)
      if (is_perfect_power(quad, 4)) {
        StabilityCertificate cert;
        cert.kind = StabilityCertificate::Kind::FirststabFails;
        cert.n = n;
        cert.condition_id = 2;
        cert.offending_value = quad;
        cert.power = 4;
        return cert;
      }
    }
  }

  StabilityCertificate cert;
  cert.kind = StabilityCertificate::Kind::FirststabCertified;
  cert.N = N;
  return cert;
}

StabilityCertificate eventual_stability_verdict(const MapSpec& m,
                                                const FactorBudget& budget) {
  validate(m);
  if (m.c == 0) throw ArgumentError("eventual stability needs c != 0");

  StabilityCertificate cert;
  BigInt num = m.c.get_num();
  if (num == 1 || num == -1) {
    cert.kind = StabilityCertificate::Kind::Inconclusive;
    cert.reason = "num(c) = +-1: the reciprocal-of-an-integer case is open";
    return cert;
  }

  IntFactorization fac = factor_int(num, budget);
  if (fac.factors.empty()) {
    cert.kind = StabilityCertificate::Kind::Inconclusive;
    cert.reason = "no prime factor of num(c) found within the budget";
    return cert;
  }

  bool have = false;
  for (const auto& [p, mult] : fac.factors) {
    long e = mult;
    BigInt bound;
    mpz_pow_ui(bound.get_mpz_t(), BigInt(m.d).get_mpz_t(),
               static_cast<unsigned long>(ceil_log2(e)));
    bool coprime = mpz_divisible_p(BigInt(m.d).get_mpz_t(), p.get_mpz_t()) == 0;
    if (coprime) cert.has_coprime_place = true;
    bool better = !have || bound < cert.bound ||
                  (bound == cert.bound && coprime && !cert.place_prime_to_d) ||
                  (bound == cert.bound && coprime == cert.place_prime_to_d &&
                   p < cert.p);
    if (better) {
      cert.p = p;
      cert.e = e;
      cert.bound = bound;
      cert.place_prime_to_d = coprime;
      have = true;
    }
  }
  cert.kind = StabilityCertificate::Kind::EventuallyStable;
  if (!fac.complete())
    cert.reason = "num(c) only partially factored; witnesses restricted to "
                  "certified primes";
  return cert;
}

std::vector<std::pair<long, long>> factor_count_track(const MapSpec& m, long N,
                                                      const FactorConfig& cfg) {
  validate(m);
  if (N < 1) throw ArgumentError("factor_count_track requires N >= 1");
  std::vector<std::pair<long, long>> track;
  RatPoly f = map_poly(m);
  RatPoly fn = f;
  for (long n = 1; n <= N; ++n) {
    if (fn.degree() > cfg.degree_cap)
      throw CapabilityError("iterate degree exceeds the factorization cap");
    track.emplace_back(n, factor_over_Q(fn, cfg).total_count());
    if (n < N) fn = fn.compose(f);
  }
  return track;
}

bool splitting_shape_verify(const RatPoly& g, const MapSpec& m, long n,
                            const FactorList& factors) {
  validate(m);
  if (m.d != 2)
    throw CapabilityError("factorization shape check is implemented for d = 2");
  if (n < 1) throw ArgumentError("splitting_shape_verify requires n >= 1");
  if (g.is_zero() || !g.is_monic())
    throw ArgumentError("g must be monic of degree >= 1");

  RatPoly target = g.compose(iterate_map(m, static_cast<int>(n)));
  int eps = stability_epsilon(g.degree(), m.d, n);
  for (const auto& entry : factors.factors) {
    RatPoly h = entry.factor.monic();
    RatPoly prod = h * h.reflect();
    if (eps) prod = -prod;
    if (prod == target) return true;
  }
  return false;
}

MaximalityResult maximality_witness(const RatPoly& g, const MapSpec& m, long n,
                                    const FactorBudget& effort) {
  validate(m);
  if (n < 2) throw ArgumentError("maximality_witness requires n >= 2");
  if (g.is_zero() || !g.is_monic())
    throw ArgumentError("g must be monic of degree >= 1");

  // g must divide some iterate (f^0 = z included, covering g = z).
  bool div = false;
  for (long j = 0; j <= n && !div; ++j) {
    long dj = 1;
    bool fits = true;
    for (long i = 0; i < j; ++i) {
      dj *= m.d;
      if (dj > 4096) {
        fits = false;
        break;
      }
    }
    if (!fits) break;
    if (g.degree() > dj) continue;
    div = divides(g, iterate_map(m, static_cast<int>(j)));
  }
  if (!div) throw ArgumentError("g does not divide any iterate of f");

  auto orbit = critical_orbit(m, n);
  std::vector<Rational> gvals(n);
  for (long i = 1; i <= n; ++i) gvals[i - 1] = g.evaluate(orbit.values[i - 1]);

  MaximalityResult res;
  if (gvals[n - 1] == 0) {
    res.reason = "g(f^n(0)) = 0 has no finite valuation";
    return res;
  }

  bool partial = false;
  std::vector<BigInt> candidates;
  for (const BigInt& part :
       {BigInt(gvals[n - 1].get_num()), BigInt(gvals[n - 1].get_den())}) {
    if (part == 1 || part == -1) continue;
    IntFactorization fac = factor_int(part, effort);
    partial = partial || !fac.complete();
    for (const auto& [p, mult] : fac.factors) candidates.push_back(p);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  for (const BigInt& p : candidates) {
    if (mpz_divisible_p(BigInt(m.d).get_mpz_t(), p.get_mpz_t())) continue;
    long v = val_p(gvals[n - 1], p).v;
    if (std::gcd(std::abs(v), m.d) != 1) continue;
    bool clean = true;
    for (long i = 1; i < n && clean; ++i) {
      if (gvals[i - 1] == 0 || !val_p(gvals[i - 1], p).zero()) clean = false;
    }
    if (!clean) continue;
    res.found = true;
    res.witness.n = n;
    res.witness.p = p;
    for (long i = 1; i <= n; ++i)
      res.witness.valuations.push_back(val_p(gvals[i - 1], p).v);
    return res;
  }

  res.reason = partial ? "budget exhausted with an unfactored cofactor"
                       : "no prime satisfies the three valuation conditions";
  return res;
}

bool ZCaseReport::all_certified() const {
  for (const auto& e : entries)
    if (!e.certified) return false;
  return true;
}

ZCaseReport zcase_suite(long p, const BigInt& c, long N) {
  if (p < 3 || p % 2 == 0 || !is_prime_u64(static_cast<std::uint64_t>(p)))
    throw ArgumentError("zcase_suite requires an odd prime p");
  if (c == 0) throw ArgumentError("zcase_suite requires c != 0");
  if (N < 1) throw ArgumentError("zcase_suite requires N >= 1");

  ZCaseReport rep;
  rep.p = p;
  rep.c = c;
  rep.N = N;

  MapSpec m{p, Rational(c), Rational(0)};
  auto orbit = critical_orbit(m, N);

  auto root = kth_root_exact(c, static_cast<unsigned long>(p));
  rep.c_is_pth_power = root.has_value();

  if (!rep.c_is_pth_power) {
    for (long n = 1; n <= N; ++n) {
      ZCaseEntry e;
      e.n = n;
      e.target = to_string(orbit.values[n - 1]);
      e.route = "integer";
      e.certified =
          !is_perfect_power(orbit.values[n - 1], static_cast<unsigned long>(p));
      rep.entries.push_back(std::move(e));
    }
    return rep;
  }

  rep.r = *root;
  for (long n = 2; n <= N; ++n) {
    BigInt x = orbit.values[n - 2].get_num();  // integer orbit: f^(n-1)(0)

    ZCaseEntry ie;
    ie.n = n;
    ie.target = BigInt(x + rep.r).get_str();
    ie.route = "integer";
    ie.certified = !is_perfect_power(Rational(x + rep.r),
                                     static_cast<unsigned long>(p));
    rep.entries.push_back(std::move(ie));

    CycInt xi = CycInt::linear(static_cast<unsigned long>(p), x, rep.r);
    PthPowerCert cert = is_pth_power_cyc(xi);
    ZCaseEntry ce;
    ce.n = n;
    ce.target = xi.str();
    ce.certified = (cert.verdict == PowerVerdict::CertifiedNo);
    if (n == 2 && rep.r == 1)
      ce.route = "cyclotomic-unit";
    else if (cert.route == PowerRoute::Norm)
      ce.route = "cyclotomic-norm";
    else if (cert.route == PowerRoute::SplitResidue)
      ce.route = "cyclotomic-residue";
    else
      ce.route = "cyclotomic-inconclusive";
    rep.entries.push_back(std::move(ce));
  }
  return rep;
}

}  // namespace orbitprimes
