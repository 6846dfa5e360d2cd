#include "orbitprimes/localfields.hpp"

#include <numeric>

#include "orbitprimes/errors.hpp"

namespace orbitprimes {

NewtonPolygon newton_polygon(const RatPoly& f, const BigInt& p) {
  if (f.is_zero()) throw ArgumentError("newton_polygon requires f != 0");
  if (p < 2 || !is_prime(p)) throw ArgumentError("newton_polygon requires p prime");

  NewtonPolygon np;
  for (long i = 0; i <= f.degree(); ++i) {
    Rational a = f.coeff(i);
    if (a == 0) continue;
    np.points.emplace_back(i, val_p(a, p).v);
  }

  // Monotone-chain lower hull over points already sorted by abscissa.
  // cross <= 0 drops collinear middles, so surviving corners turn strictly
  // upward and segment slopes come out strictly increasing.
  auto cross = [](const std::pair<long, long>& a, const std::pair<long, long>& b,
                  const std::pair<long, long>& c) {
    return (b.first - a.first) * (c.second - a.second) -
           (b.second - a.second) * (c.first - a.first);
  };
  for (const auto& pt : np.points) {
    auto& h = np.vertices;
    while (h.size() >= 2 && cross(h[h.size() - 2], h.back(), pt) <= 0)
      h.pop_back();
    h.push_back(pt);
  }

  for (std::size_t j = 0; j + 1 < np.vertices.size(); ++j) {
    Rational s(np.vertices[j + 1].second - np.vertices[j].second,
               np.vertices[j + 1].first - np.vertices[j].first);
    s.canonicalize();
    np.slopes.push_back({s, np.vertices[j + 1].first - np.vertices[j].first});
  }
  return np;
}

long kummer_ram_degree(long d, long r) {
  if (d < 2) throw ArgumentError("kummer_ram_degree requires d >= 2");
  if (r < 0) throw ArgumentError("kummer_ram_degree requires r >= 0");
  return d / std::gcd(d, r);
}

long tame_compositum_ram(long e1, long e2) {
  if (e1 < 1 || e2 < 1)
    throw ArgumentError("tame_compositum_ram requires positive degrees");
  BigInt l = lcm(BigInt(e1), BigInt(e2));
  if (!l.fits_slong_p())
    throw CapabilityError("compositum ramification overflows long");
  return l.get_si();
}

RamTower ram_tower(long d, long r, long N) {
  if (d < 2) throw ArgumentError("ram_tower requires d >= 2");
  if (r < 1) throw ArgumentError("ram_tower requires r >= 1");
  if (N < 0) throw ArgumentError("ram_tower requires N >= 0");

  RamTower t;
  t.d = d;
  t.r = r;
  t.e.push_back(1);
  t.k.push_back(r);

  BigInt dpow = 1;  // d^(n-1) inside the loop
  for (long n = 1; n <= N; ++n) {
    BigInt mnum = t.e.back() * r;
    if (!mpz_divisible_p(mnum.get_mpz_t(), dpow.get_mpz_t())) {
      t.violation = "step valuation m_" + std::to_string(n) +
                    " is not an integer";
      return t;
    }
    BigInt m = mnum / dpow;
    BigInt g = gcd(BigInt(d), m);
    BigInt en = t.e.back() * d / g;
    dpow *= d;
    BigInt knum = en * r;
    if (!mpz_divisible_p(knum.get_mpz_t(), dpow.get_mpz_t())) {
      t.violation = "k_" + std::to_string(n) + " is not an integer";
      return t;
    }
    t.k.push_back(knum / dpow);
    t.e.push_back(en);
  }

  // k_n = k_(n-1) / gcd(d, k_(n-1)) drops exactly while gcd(d, k) > 1, so the
  // last drop is visible after finitely many extra steps even when N is small.
  BigInt kk = r;
  long n0 = 0;
  for (long n = 1;; ++n) {
    BigInt g = gcd(BigInt(d), kk);
    if (g == 1) break;
    kk /= g;
    n0 = n;
  }
  t.n0 = n0;
  return t;
}

}  // namespace orbitprimes
