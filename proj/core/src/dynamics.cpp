#include "orbitprimes/dynamics.hpp"

#include <numeric>

#include "orbitprimes/errors.hpp"
#include "orbitprimes/modarith.hpp"

namespace orbitprimes {

namespace {

long bitsize(const BigInt& n) {
  return static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

Rational map_once(const MapSpec& m, const Rational& x) {
  Rational p;
  mpz_pow_ui(p.get_num_mpz_t(), x.get_num().get_mpz_t(),
             static_cast<unsigned long>(m.d));
  mpz_pow_ui(p.get_den_mpz_t(), x.get_den().get_mpz_t(),
             static_cast<unsigned long>(m.d));
  return p + m.c;
}

struct OrbitScan {
  std::vector<Rational> vals;  // a_0, a_1, ...
  bool finite = false;
  long pre = 0, per = 0;  // first repeat: vals[pre] == vals[pre+per]
  bool certified_infinite = false;
};

// Exact orbit prefix with repeat detection and two no-more-zeros
// certificates:
//  (growth)  |a_n| >= |c| + 2 and |a_n| >= 2 force |a_(n+1)| >= |a_n| + 2,
//            so values strictly escape and never revisit anything;
//  (denom)   den(a_n)^d > den(c) with den(a_n) > 1 gives a prime p with
//            d*v_p(den) > v_p(den(c)), whence v_p(a_m) decreases strictly
//            forever - again no zero and no repeat.
// Either certificate also proves the orbit infinite.  `horizon` bounds the
// scan; `full` keeps computing values past a certificate (exact values are
// the point of critical_orbit) while still skipping redundant repeat checks.
OrbitScan scan_orbit(const MapSpec& m, long horizon, long bit_cap, bool full) {
  validate(m);
  OrbitScan s;
  s.vals.push_back(m.a0);
  Rational growth_bar = abs(m.c) + 2;
  const BigInt& cden = m.c.get_den();
  bool certified = false;
  for (long n = 1; n <= horizon; ++n) {
    Rational next = map_once(m, s.vals.back());
    if (bitsize(next.get_num()) > bit_cap || bitsize(next.get_den()) > bit_cap)
      throw CapabilityError("orbit value exceeds the bit-size cap at index " +
                            std::to_string(n));
    s.vals.push_back(next);
    if (!certified && !s.finite) {
      for (long i = 0; i < n; ++i) {
        if (s.vals[i] == next) {
          s.finite = true;
          s.pre = i;
          s.per = n - i;
          break;
        }
      }
      if (s.finite) {
        if (!full) break;
        continue;
      }
      bool growth = abs(next) >= growth_bar && abs(next) >= 2;
      bool denom = false;
      if (!growth && next.get_den() > 1) {
        BigInt dpow;
        mpz_pow_ui(dpow.get_mpz_t(), next.get_den().get_mpz_t(),
                   static_cast<unsigned long>(m.d));
        denom = dpow > cden;
      }
      if (growth || denom) {
        certified = true;
        s.certified_infinite = true;
        if (!full) break;
      }
    }
  }
  if (full && s.finite) {
    // A repeat freezes the orbit into a cycle; re-derive any values past the
    // scan cheaply (they are periodic), though the loop above already did.
    s.certified_infinite = false;
  }
  return s;
}

std::uint64_t rational_mod_q(const Rational& x, std::uint64_t q) {
  std::uint64_t num = mpz_fdiv_ui(x.get_num().get_mpz_t(), q);
  std::uint64_t den = mpz_fdiv_ui(x.get_den().get_mpz_t(), q);
  std::uint64_t inv = invmod_u64(den, q);
  if (inv == 0) throw ArgumentError("denominator not invertible mod q");
  return mulmod_u64(num, inv, q);
}

}  // namespace

CriticalOrbit critical_orbit(const MapSpec& m, long N, long bit_cap) {
  if (N < 1) throw ArgumentError("critical_orbit requires N >= 1");
  MapSpec crit{m.d, m.c, Rational(0)};
  OrbitScan s = scan_orbit(crit, N, bit_cap, /*full=*/true);
  CriticalOrbit out;
  out.values.assign(s.vals.begin() + 1, s.vals.end());
  out.finite_flag = s.finite;
  if (s.finite) {
    out.repeat_first = s.pre;
    out.repeat_second = s.pre + s.per;
  }
  return out;
}

RdsReport verify_rds(const MapSpec& m, const std::vector<BigInt>& primes, long N,
                     long bit_cap) {
  if (N < 1) throw ArgumentError("verify_rds requires N >= 1");
  for (const BigInt& p : primes)
    if (p < 2 || !is_prime(p))
      throw ArgumentError("verify_rds prime list contains a non-prime");
  OrbitScan s = scan_orbit(m, N, bit_cap, /*full=*/true);
  if (s.finite)
    throw ArgumentError("orbit is finite within N; rigid divisibility needs an "
                        "infinite orbit");
  RdsReport rep;
  rep.N = N;
  rep.primes = primes;
  for (const BigInt& p : primes) {
    std::vector<long> v(N);
    for (long n = 1; n <= N; ++n) v[n - 1] = val_p(s.vals[n], p).v;
    rep.valuations.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const auto& v = rep.valuations[i];
    for (long n = 1; n <= N; ++n) {
      if (v[n - 1] <= 0) continue;
      for (long kn = 2 * n; kn <= N; kn += n) {
        if (v[kn - 1] != v[n - 1])
          rep.violations.push_back(
              {primes[i], 1, n, kn,
               "v(a_" + std::to_string(kn) + ") = " + std::to_string(v[kn - 1]) +
                   " != v(a_" + std::to_string(n) + ") = " +
                   std::to_string(v[n - 1])});
      }
      for (long j = 1; j <= N; ++j) {
        if (v[j - 1] <= 0) continue;
        long g = std::gcd(n, j);
        if (v[g - 1] <= 0)
          rep.violations.push_back(
              {primes[i], 2, n, j,
               "v(a_gcd(" + std::to_string(n) + "," + std::to_string(j) +
                   ")) is not positive"});
      }
    }
  }
  return rep;
}

OrbitClassifier::OrbitClassifier(MapSpec m) : m_(std::move(m)) {
  validate(m_);
  OrbitScan s = scan_orbit(m_, 64, kOrbitBitCap, /*full=*/false);
  if (!s.finite && !s.certified_infinite)
    throw CapabilityError(
        "orbit zero analysis undecided after 64 exact iterations");
  finite_ = s.finite;
  if (finite_) {
    pre_ = s.pre;
    per_ = s.per;
    s.vals.resize(pre_ + per_);
  }
  vals_ = std::move(s.vals);
  a0_zero_ = (m_.a0 == 0);
}

OrbitModResult OrbitClassifier::classify(std::uint64_t q, bool exact_index,
                                         CycleAlgo algo) const {
  if (q < 2 || !is_prime_u64(q)) throw ArgumentError("q must be prime");
  OrbitModResult res;
  if (mpz_divisible_ui_p(m_.c.get_den().get_mpz_t(), q)) {
    res.verdict = OrbitVerdict::BadPrime;
    res.reason = "q divides den(c)";
    return res;
  }
  if (mpz_divisible_ui_p(m_.a0.get_den().get_mpz_t(), q)) {
    res.verdict = OrbitVerdict::BadPrime;
    res.reason = "q divides den(a0)";
    return res;
  }

  if (finite_) {
    // Exact values cover the whole (eventually periodic) orbit.
    for (long n = 0; n < pre_ + per_; ++n) {
      res.steps++;
      if (vals_[n] != 0 && rational_mod_q(vals_[n], q) == 0) {
        res.verdict = OrbitVerdict::Divides;
        res.n = n;
        return res;
      }
    }
    res.verdict = OrbitVerdict::NotDivides;
    return res;
  }

  // Infinite orbit: an exact zero at n >= 1 would force a_(n+1) = a_1 and
  // hence a repeat, so index 0 (when a0 = 0) is the only excluded index.
  const std::uint64_t d = static_cast<std::uint64_t>(m_.d);
  const std::uint64_t cmod = rational_mod_q(m_.c, q);
  const std::uint64_t x0 = rational_mod_q(m_.a0, q);

  if (x0 == 0 && !a0_zero_) {
    res.verdict = OrbitVerdict::Divides;
    res.n = 0;
    return res;
  }
  if (!exact_index && a0_zero_ && std::gcd(d, q - 1) == 1) {
    // Bijection: the orbit of 0 is a pure cycle, so it returns to 0 at some
    // n >= 1 (and that value is nonzero in Q).
    res.verdict = OrbitVerdict::Divides;
    res.n = -1;
    return res;
  }

  auto step = [&](std::uint64_t x) { return addmod_u64(powmod_u64(x, d, q), cmod, q); };
  const std::uint64_t guard = 3 * q + 16;

  if (algo == CycleAlgo::Brent) {
    // Single pass: the hare visits x_1, x_2, ... in order and the zero test
    // runs on every new index, including the one where the cycle closes.  At
    // detection the hare index is >= mu + lambda, so every distinct orbit
    // value has been examined.
    std::uint64_t power = 1, lam = 0;
    std::uint64_t tortoise = x0, hare = x0;
    std::uint64_t n = 0;
    for (;;) {
      hare = step(hare);
      ++n;
      ++lam;
      if (hare == 0) {
        res.verdict = OrbitVerdict::Divides;
        res.n = static_cast<long>(n);
        res.steps = n;
        return res;
      }
      if (hare == tortoise) break;
      if (lam == power) {
        tortoise = hare;
        power *= 2;
        lam = 0;
      }
      if (n > guard) throw std::logic_error("cycle detection exceeded its bound");
    }
    res.verdict = OrbitVerdict::NotDivides;
    res.steps = n;
    return res;
  }

  // Floyd: find a meeting point, recover tail and cycle lengths, then scan
  // exactly the tail+cycle prefix for a zero.
  std::uint64_t steps = 0;
  std::uint64_t slow = step(x0), fast = step(step(x0));
  steps += 3;
  while (slow != fast) {
    slow = step(slow);
    fast = step(step(fast));
    steps += 3;
    if (steps > 6 * guard) throw std::logic_error("cycle detection exceeded its bound");
  }
  std::uint64_t mu = 0;
  slow = x0;
  while (slow != fast) {
    slow = step(slow);
    fast = step(fast);
    ++mu;
    steps += 2;
  }
  std::uint64_t lam = 1;
  fast = step(slow);
  ++steps;
  while (slow != fast) {
    fast = step(fast);
    ++lam;
    ++steps;
  }
  std::uint64_t x = x0;
  for (std::uint64_t n = 0; n < mu + lam; ++n) {
    if (x == 0) {
      if (n >= 1 || !a0_zero_) {
        res.verdict = OrbitVerdict::Divides;
        res.n = static_cast<long>(n);
        res.steps = steps + n;
        return res;
      }
      // Residue zero sits only at the excluded index 0.  It recurs at a
      // positive index exactly when it lies on the cycle (mu == 0).
      if (mu == 0) {
        res.verdict = OrbitVerdict::Divides;
        res.n = static_cast<long>(lam);
        res.steps = steps + n;
        return res;
      }
    }
    x = step(x);
  }
  res.verdict = OrbitVerdict::NotDivides;
  res.steps = steps + mu + lam;
  return res;
}

OrbitModResult orbit_divides_mod_q(const MapSpec& m, std::uint64_t q, CycleAlgo algo) {
  return OrbitClassifier(m).classify(q, /*exact_index=*/true, algo);
}

bool residue_power_map_is_bijection(std::uint64_t q, std::uint64_t p) {
  if (!is_prime_u64(q) || !is_prime_u64(p))
    throw ArgumentError("residue power map requires primes q and p");
  bool by_gcd = std::gcd(p, q - 1) == 1;
  if (q < 10000) {
    std::vector<bool> hit(q, false);
    std::uint64_t distinct = 0;
    for (std::uint64_t z = 0; z < q; ++z) {
      std::uint64_t w = powmod_u64(z, p, q);
      if (!hit[w]) {
        hit[w] = true;
        ++distinct;
      }
    }
    bool by_enum = (distinct == q);
    if (by_enum != by_gcd)
      throw std::logic_error("bijection criteria disagree");  // impossible
  }
  return by_gcd;
}

}  // namespace orbitprimes
