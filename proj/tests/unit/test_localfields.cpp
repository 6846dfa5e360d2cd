#include <doctest.h>

#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "orbitprimes/errors.hpp"
#include "orbitprimes/localfields.hpp"
#include "orbitprimes/mapspec.hpp"

using namespace orbitprimes;

namespace {

Rational Q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

using Pt = std::pair<long, long>;

// Independent hull oracle: gift wrapping.  From each corner pick the
// minimum-slope successor, breaking slope ties by the farthest point so
// collinear interiors never become corners.
std::vector<Pt> jarvis_lower_hull(const std::vector<Pt>& pts) {
  std::vector<Pt> hull{pts.front()};
  while (hull.back() != pts.back()) {
    Pt cur = hull.back();
    Pt best{0, 0};
    bool have = false;
    for (const Pt& q : pts) {
      if (q.first <= cur.first) continue;
      if (!have) {
        best = q;
        have = true;
        continue;
      }
      long lhs = (q.second - cur.second) * (best.first - cur.first);
      long rhs = (best.second - cur.second) * (q.first - cur.first);
      if (lhs < rhs || (lhs == rhs && q.first > best.first)) best = q;
    }
    hull.push_back(best);
  }
  return hull;
}

void check_invariants(const RatPoly& f, const NewtonPolygon& np) {
  for (const Pt& v : np.vertices) {
    bool among = false;
    for (const Pt& p : np.points) among = among || p == v;
    CHECK(among);
  }
  for (std::size_t j = 0; j + 1 < np.slopes.size(); ++j)
    CHECK(np.slopes[j].slope < np.slopes[j + 1].slope);
  long span = 0;
  for (const auto& s : np.slopes) span += s.length;
  CHECK(span == np.points.back().first - np.points.front().first);
  (void)f;
}

}  // namespace

TEST_SUITE("localfields") {

TEST_CASE("newton polygon fixtures") {
  RatPoly f({Rational(12), Rational(0), Rational(6), Rational(0), Rational(1)});
  auto np = newton_polygon(f, 3);
  REQUIRE(np.single_segment());
  CHECK(np.slopes[0].slope == Q(-1, 4));
  CHECK(np.slopes[0].length == 4);
  REQUIRE(np.vertices.size() == 2);
  CHECK(np.vertices[0] == Pt{0, 1});
  CHECK(np.vertices[1] == Pt{4, 0});

  auto sq = newton_polygon(RatPoly({Q(-16, 9), Rational(0), Rational(1)}), 2);
  REQUIRE(sq.single_segment());
  CHECK(sq.slopes[0].slope == Rational(-2));

  auto dbl = newton_polygon(RatPoly({Rational(4), Rational(4), Rational(1)}), 2);
  REQUIRE(dbl.single_segment());
  CHECK(dbl.slopes[0].slope == Rational(-1));
  REQUIRE(dbl.vertices.size() == 2);
  CHECK(dbl.vertices[0] == Pt{0, 2});
  CHECK(dbl.vertices[1] == Pt{2, 0});

  // Eisenstein at 3.
  auto eis = newton_polygon(RatPoly({Rational(3), Rational(3), Rational(0),
                                     Rational(0), Rational(0), Rational(1)}),
                            3);
  REQUIRE(eis.single_segment());
  CHECK(eis.slopes[0].slope == Q(-1, 5));
}

TEST_CASE("newton polygon sees denominators and breaks into segments") {
  // (z + 1/3)(z + 3) at p = 3: valuations 0, -1, 0 give a V shape.
  RatPoly f({Rational(1), Q(10, 3), Rational(1)});
  auto np = newton_polygon(f, 3);
  REQUIRE(np.slopes.size() == 2);
  CHECK(np.slopes[0].slope == Rational(-1));
  CHECK(np.slopes[1].slope == Rational(1));
  CHECK(np.vertices[1] == Pt{1, -1});

  // Purely positive slope.
  auto up = newton_polygon(RatPoly({Q(-16, 9), Rational(0), Rational(1)}), 3);
  REQUIRE(up.single_segment());
  CHECK(up.slopes[0].slope == Rational(1));

  // Constant polynomial: one point, no segments.
  auto c = newton_polygon(RatPoly({Rational(18)}), 3);
  CHECK(c.points.size() == 1);
  CHECK(c.vertices.size() == 1);
  CHECK(c.slopes.empty());

  // Zero constant term shifts the span.
  auto sh = newton_polygon(RatPoly({Rational(0), Rational(2), Rational(1)}), 2);
  CHECK(sh.points.front().first == 1);
  REQUIRE(sh.single_segment());
  CHECK(sh.slopes[0].length == 1);
}

TEST_CASE("newton polygon rejects bad input") {
  CHECK_THROWS_AS(newton_polygon(RatPoly(), 3), ArgumentError);
  CHECK_THROWS_AS(newton_polygon(RatPoly({Rational(1), Rational(1)}), 4),
                  ArgumentError);
}

TEST_CASE("newton polygon matches a gift-wrapping oracle on random input") {
  std::mt19937_64 rng(20240817);
  const long primes[] = {2, 3, 5};
  for (int trial = 0; trial < 200; ++trial) {
    long p = primes[rng() % 3];
    int deg = 1 + static_cast<int>(rng() % 12);
    std::vector<Rational> coeffs(deg + 1);
    for (int i = 0; i <= deg; ++i) {
      if (i < deg && rng() % 4 == 0) continue;  // keep some zeros; lc nonzero
      long e = static_cast<long>(rng() % 7);
      long num = (rng() % 2 ? 1 : -1) * (1 + 2 * static_cast<long>(rng() % 8));
      while (num % p == 0) num += 2;
      Rational u = (rng() % 3 == 0) ? Q(num, num + (num % p == 0 ? 4 : 2))
                                    : Rational(num);
      Rational pe = 1;
      for (long j = 0; j < e; ++j) pe *= p;
      coeffs[i] = (rng() % 5 == 0) ? Rational(u / pe) : Rational(u * pe);
    }
    RatPoly f(coeffs);
    auto np = newton_polygon(f, p);
    std::vector<Pt> pts;
    for (long i = 0; i <= f.degree(); ++i)
      if (f.coeff(i) != 0) pts.emplace_back(i, val_p(f.coeff(i), p).v);
    REQUIRE(np.points == pts);
    CHECK(np.vertices == jarvis_lower_hull(pts));
    check_invariants(f, np);
  }
}

TEST_CASE("iterates of z^d + c keep a single segment of slope -r/d^n") {
  struct Case {
    long d, p, cnum;
    long r;
  };
  const Case cases[] = {{2, 3, 3, 1}, {2, 3, 9, 2},  {2, 3, 12, 1},
                        {2, 3, 18, 2}, {3, 2, 2, 1},  {3, 2, 4, 2},
                        {3, 2, 6, 1},  {2, 5, 10, 1}, {5, 3, 3, 1}};
  for (const auto& cs : cases) {
    MapSpec m{cs.d, Rational(cs.cnum), Rational(0)};
    long dn = 1;
    for (int n = 1; dn * cs.d <= 64; ++n) {
      dn *= cs.d;
      auto np = newton_polygon(iterate_map(m, n), cs.p);
      REQUIRE(np.single_segment());
      CHECK(np.slopes[0].slope == Q(-cs.r, dn));
      CHECK(np.slopes[0].length == dn);
    }
  }
}

TEST_CASE("kummer ramification degree") {
  CHECK(kummer_ram_degree(6, 4) == 3);
  CHECK(kummer_ram_degree(5, 5) == 1);
  CHECK(kummer_ram_degree(2, 1) == 2);
  for (long d = 2; d <= 12; ++d) {
    CHECK(kummer_ram_degree(d, 0) == 1);
    for (long r = 0; r <= 100; ++r)
      CHECK(kummer_ram_degree(d, r) == kummer_ram_degree(d, r % d));
  }
  CHECK_THROWS_AS(kummer_ram_degree(1, 3), ArgumentError);
  CHECK_THROWS_AS(kummer_ram_degree(4, -1), ArgumentError);
}

TEST_CASE("tame compositum ramification") {
  CHECK(tame_compositum_ram(3, 3) == 3);
  CHECK(tame_compositum_ram(2, 3) == 6);
  for (long e = 1; e <= 10; ++e) {
    CHECK(tame_compositum_ram(1, e) == e);
    CHECK(tame_compositum_ram(e, 1) == e);
  }
  CHECK(tame_compositum_ram(4, 6) == tame_compositum_ram(6, 4));
  CHECK_THROWS_AS(tame_compositum_ram(0, 3), ArgumentError);
  long big = 1L << 62;
  CHECK_THROWS_AS(tame_compositum_ram(big, big - 1), CapabilityError);
}

TEST_CASE("ramification tower fixtures") {
  auto t = ram_tower(2, 1, 3);
  REQUIRE(t.ok());
  CHECK(t.e == std::vector<BigInt>{1, 2, 4, 8});
  CHECK(t.k == std::vector<BigInt>{1, 1, 1, 1});
  CHECK(t.n0 == 0);

  auto t2 = ram_tower(2, 2, 3);
  REQUIRE(t2.ok());
  CHECK(t2.e == std::vector<BigInt>{1, 1, 2, 4});
  CHECK(t2.k == std::vector<BigInt>{2, 1, 1, 1});
  CHECK(t2.n0 == 1);

  auto t3 = ram_tower(3, 3, 3);
  REQUIRE(t3.ok());
  CHECK(t3.e == std::vector<BigInt>{1, 1, 3, 9});
  CHECK(t3.n0 == 1);

  CHECK_THROWS_AS(ram_tower(1, 1, 3), ArgumentError);
  CHECK_THROWS_AS(ram_tower(2, 0, 3), ArgumentError);
  CHECK_THROWS_AS(ram_tower(2, 1, -1), ArgumentError);
}

TEST_CASE("ramification tower invariants on a grid") {
  for (long d = 2; d <= 8; ++d) {
    for (long r = 1; r <= 64; ++r) {
      long N = 12;
      auto t = ram_tower(d, r, N);
      REQUIRE(t.ok());
      REQUIRE(t.e.size() == static_cast<std::size_t>(N + 1));
      CHECK(t.e[0] == 1);
      CHECK(t.k[0] == r);
      BigInt dn = 1;
      for (long n = 1; n <= N; ++n) {
        dn *= d;
        // k_n | k_(n-1) and e_n | d * e_(n-1).
        CHECK(mpz_divisible_p(t.k[n - 1].get_mpz_t(), t.k[n].get_mpz_t()));
        BigInt de = d * t.e[n - 1];
        CHECK(mpz_divisible_p(de.get_mpz_t(), t.e[n].get_mpz_t()));
        // Defining relation r / d^n = k_n / e_n.
        CHECK(t.k[n] * dn == t.e[n] * r);
        // Reduced denominator of r / d^n divides e_n.
        Rational q(r, 1);
        q /= Rational(dn);
        q.canonicalize();
        CHECK(mpz_divisible_p(t.e[n].get_mpz_t(), q.get_den().get_mpz_t()));
        // Past the last drop every step ramifies fully.
        if (n > t.n0) CHECK(t.e[n] == d * t.e[n - 1]);
      }
      if (t.n0 >= 1 && t.n0 <= N)
        CHECK(t.e[t.n0] != d * t.e[t.n0 - 1]);
    }
  }
}

}  // TEST_SUITE
