#include "orbitprimes/galois.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

#include "orbitprimes/errors.hpp"

namespace orbitprimes {
namespace {

constexpr long kNodeSentinel = 1L << 40;
constexpr long kExplicitNodeCap = 1L << 22;
// Largest bit size we let the exact extinction numerators reach. Denominators
// are d^(e_n) with e_{n+1} = d e_n + 1, so for d = 2 this admits exactly the
// first 30 levels.
constexpr double kExtinctionBitCap = 1.35e9;

Rational ratio(BigInt num, BigInt den) {
  Rational q(std::move(num), std::move(den));
  q.canonicalize();
  return q;
}

BigInt binom(long n, long k) {
  BigInt b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return b;
}

BigInt ipow(long base, long e) {
  BigInt b;
  mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(base),
                static_cast<unsigned long>(e));
  return b;
}

bool is_permutation(const std::vector<int>& p, long n) {
  if (static_cast<long>(p.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int v : p) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

// Saturating t0 * d^level.
long node_count_at(const TowerSpec& spec, long level) {
  long n = spec.t0;
  for (long i = 0; i < level; ++i) {
    if (n >= kNodeSentinel / spec.d) return kNodeSentinel;
    n *= spec.d;
  }
  return n;
}

void require_explicit_capacity(const TowerSpec& spec) {
  long total = 0;
  for (long l = 0; l < spec.depth(); ++l) {
    long n = node_count_at(spec, l);
    if (n >= kNodeSentinel || total + n > kExplicitNodeCap)
      throw CapabilityError("tower too large for explicit elements");
    total += n;
  }
}

void validate_element(const TowerSpec& spec, const WreathElement& e) {
  if (!is_permutation(e.base, spec.t0))
    throw ArgumentError("element base is not a permutation of the tower roots");
  if (e.depth() != spec.depth())
    throw ArgumentError("element depth does not match the tower");
  for (long l = 0; l < spec.depth(); ++l) {
    if (static_cast<long>(e.labels[l].size()) != node_count_at(spec, l))
      throw ArgumentError("element label layer has the wrong width");
    for (int v : e.labels[l])
      if (v < 0 || v >= spec.d)
        throw ArgumentError("element label out of range");
  }
}

// Generator in [0, d) of the subgroup of Z/d generated by r; 0 encodes {0}.
long subgroup_gen(long r, long d) {
  long rr = ((r % d) + d) % d;
  if (rr == 0) return 0;
  return std::gcd(rr, d);
}

long image_unchecked(const TowerSpec& spec, const WreathElement& e, long level,
                     long v) {
  long pw = 1;
  for (long i = 0; i < level; ++i) pw *= spec.d;
  long src = v / pw;
  long dst = e.base[src];
  long rem = v % pw;
  for (long s = 0; s < level; ++s) {
    pw /= spec.d;
    long digit = rem / pw;
    rem %= pw;
    long nd = (digit + e.labels[s][src]) % spec.d;
    src = src * spec.d + digit;
    dst = dst * spec.d + nd;
  }
  return dst;
}

// Unbiased and portable: mt19937_64 output is standardized, so results are
// reproducible across platforms for a fixed seed.
long uniform_below(Rng& rng, long n) {
  std::uint64_t un = static_cast<std::uint64_t>(n);
  std::uint64_t bound = ~0ULL - ~0ULL % un;
  for (;;) {
    std::uint64_t x = rng();
    if (x < bound) return static_cast<long>(x % un);
  }
}

void for_all_tuples(long M, long d, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> t(M, 0);
  for (;;) {
    fn(t);
    long i = M - 1;
    while (i >= 0 && ++t[i] == d) {
      t[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
}

}  // namespace

void validate_tower(const TowerSpec& spec) {
  if (spec.d < 2) throw ArgumentError("tower: d must be >= 2");
  if (spec.t0 < 1) throw ArgumentError("tower: t0 must be >= 1");
  if (spec.base_group.empty())
    throw ArgumentError("tower: base group must be nonempty");
  std::set<std::vector<int>> seen;
  for (const auto& p : spec.base_group) {
    if (!is_permutation(p, spec.t0))
      throw ArgumentError("tower: base entry is not a permutation of the roots");
    seen.insert(p);
  }
  std::vector<int> prod(spec.t0);
  for (const auto& a : spec.base_group)
    for (const auto& b : spec.base_group) {
      for (long i = 0; i < spec.t0; ++i) prod[i] = a[b[i]];
      if (!seen.count(prod))
        throw ArgumentError("tower: base group is not closed under composition");
    }
}

TowerSpec full_tower(long d, long t0, long depth) {
  if (depth < 0) throw ArgumentError("tower: depth must be >= 0");
  TowerSpec spec;
  spec.d = d;
  spec.t0 = t0;
  std::vector<int> id(static_cast<std::size_t>(std::max<long>(t0, 0)));
  for (long i = 0; i < t0; ++i) id[i] = static_cast<int>(i);
  spec.base_group = {id};
  spec.kernels.assign(depth, KernelSpec::full());
  validate_tower(spec);
  return spec;
}

WreathElement identity_element(const TowerSpec& spec) {
  validate_tower(spec);
  require_explicit_capacity(spec);
  WreathElement e;
  e.base.resize(spec.t0);
  for (long i = 0; i < spec.t0; ++i) e.base[i] = static_cast<int>(i);
  for (long l = 0; l < spec.depth(); ++l)
    e.labels.emplace_back(node_count_at(spec, l), 0);
  return e;
}

WreathElement global_shift(const TowerSpec& spec) {
  WreathElement e = identity_element(spec);
  for (auto& layer : e.labels) std::fill(layer.begin(), layer.end(), 1);
  return e;
}

long node_image(const TowerSpec& spec, const WreathElement& e, long level,
                long v) {
  validate_tower(spec);
  validate_element(spec, e);
  if (level < 0 || level > spec.depth())
    throw ArgumentError("node_image: level out of range");
  if (v < 0 || v >= node_count_at(spec, level))
    throw ArgumentError("node_image: node index out of range");
  return image_unchecked(spec, e, level, v);
}

WreathElement compose(const TowerSpec& spec, const WreathElement& a_after_b,
                      const WreathElement& b) {
  validate_tower(spec);
  validate_element(spec, a_after_b);
  validate_element(spec, b);
  WreathElement c;
  c.base.resize(spec.t0);
  for (long i = 0; i < spec.t0; ++i) c.base[i] = a_after_b.base[b.base[i]];
  c.labels = b.labels;
  for (long l = 0; l < spec.depth(); ++l) {
    long M = node_count_at(spec, l);
    for (long v = 0; v < M; ++v) {
      long img = image_unchecked(spec, b, l, v);
      c.labels[l][v] =
          static_cast<int>((b.labels[l][v] + a_after_b.labels[l][img]) % spec.d);
    }
  }
  return c;
}

long fixed_nodes(const WreathElement& e, const TowerSpec& spec, long level) {
  validate_tower(spec);
  validate_element(spec, e);
  if (level < 0 || level > spec.depth())
    throw ArgumentError("fixed_nodes: level out of range");
  std::vector<long> frontier;
  for (long i = 0; i < spec.t0; ++i)
    if (e.base[i] == i) frontier.push_back(i);
  for (long l = 0; l < level; ++l) {
    std::vector<long> next;
    next.reserve(frontier.size() * spec.d);
    for (long v : frontier) {
      if (e.labels[l][v] != 0) continue;
      for (long j = 0; j < spec.d; ++j) next.push_back(v * spec.d + j);
    }
    frontier.swap(next);
  }
  return static_cast<long>(frontier.size());
}

long fixed_leaves(const WreathElement& e, const TowerSpec& spec) {
  return fixed_nodes(e, spec, spec.depth());
}

long psi(const WreathElement& e, const TowerSpec& spec, long level) {
  validate_tower(spec);
  validate_element(spec, e);
  if (level < 1 || level > spec.depth())
    throw ArgumentError("psi: level out of range");
  long s = 0;
  for (int v : e.labels[level - 1]) s = (s + v) % spec.d;
  return s;
}

Rational ProbVector::total() const {
  Rational t = 0;
  for (const auto& [k, p] : entries) t += p;
  return t;
}

Rational ProbVector::prob_positive() const {
  Rational t = 0;
  for (const auto& [k, p] : entries)
    if (k > 0) t += p;
  return t;
}

Rational ProbVector::expectation() const {
  Rational t = 0;
  for (const auto& [k, p] : entries) t += Rational(k) * p;
  return t;
}

Rational ProbVector::at(long k) const {
  auto it = entries.find(k);
  return it == entries.end() ? Rational(0) : it->second;
}

ProbVector kernel_transition(long d, long m, const KernelSpec& kernel, long M) {
  if (d < 2) throw ArgumentError("kernel_transition: d must be >= 2");
  if (m < 0 || M < m) throw ArgumentError("kernel_transition: need 0 <= m <= M");
  ProbVector out;
  bool constrained = kernel.kind == KernelSpec::Kind::SumIn && m == M && M >= 1;
  if (!constrained) {
    // Unconstrained labels on the m fixed slots, or a sum constraint that
    // still leaves a free slot: the fixed-slot marginal is uniform either
    // way, so the zero count is Binomial(m, 1/d).
    BigInt den = ipow(d, m);
    for (long z = 0; z <= m; ++z)
      out.entries[d * z] = ratio(binom(m, z) * ipow(d - 1, m - z), den);
    return out;
  }
  // Every slot is under a fixed parent: condition on the label sum lying in
  // the subgroup generated by r. Count nonzero tuples by sum residue.
  long g = subgroup_gen(kernel.r, d);
  long s = g == 0 ? 1 : d / g;
  auto in_subgroup = [&](long w) { return g == 0 ? w == 0 : w % g == 0; };
  std::vector<BigInt> cnt(d, BigInt(0));
  cnt[0] = 1;
  std::vector<BigInt> admissible(M + 1);
  auto tally = [&]() {
    BigInt t = 0;
    for (long w = 0; w < d; ++w)
      if (in_subgroup(w)) t += cnt[w];
    return t;
  };
  admissible[0] = tally();
  for (long k = 1; k <= M; ++k) {
    BigInt sum = 0;
    for (const auto& x : cnt) sum += x;
    std::vector<BigInt> next(d);
    for (long w = 0; w < d; ++w) next[w] = sum - cnt[w];
    cnt.swap(next);
    admissible[k] = tally();
  }
  BigInt total = BigInt(s) * ipow(d, M - 1);
  for (long z = 0; z <= m; ++z) {
    BigInt num = binom(m, z) * admissible[m - z];
    if (num != 0) out.entries[d * z] = ratio(num, total);
  }
  return out;
}

std::vector<ProbVector> exact_Yn_distribution(const TowerSpec& spec,
                                              long width_cap) {
  validate_tower(spec);
  if (width_cap < 2) throw ArgumentError("exact_Yn_distribution: width cap too small");
  if (spec.depth() > 64)
    throw CapabilityError("exact_Yn_distribution: depth beyond 64");
  std::vector<ProbVector> out;
  ProbVector cur;
  {
    std::map<long, long> hist;
    for (const auto& p : spec.base_group) {
      long fixed = 0;
      for (long i = 0; i < spec.t0; ++i)
        if (p[i] == i) ++fixed;
      ++hist[fixed];
    }
    for (const auto& [k, c] : hist)
      cur.entries[k] = ratio(c, static_cast<long>(spec.base_group.size()));
  }
  out.push_back(cur);
  for (long l = 1; l <= spec.depth(); ++l) {
    long max_m = cur.entries.empty() ? 0 : cur.entries.rbegin()->first;
    if (max_m + 1 > width_cap)
      throw CapabilityError("exact_Yn_distribution: support width exceeds cap");
    long M = node_count_at(spec, l - 1);
    ProbVector next;
    for (const auto& [m, pm] : cur.entries) {
      ProbVector step = kernel_transition(spec.d, m, spec.kernels[l - 1], M);
      for (const auto& [y, q] : step.entries) next.entries[y] += pm * q;
    }
    if (next.total() != 1)
      throw std::logic_error("exact_Yn_distribution: level mass is not 1");
    out.push_back(next);
    cur = std::move(next);
  }
  return out;
}

ConditionalReport conditional_check(const TowerSpec& spec, long m_cap) {
  validate_tower(spec);
  if (spec.depth() < 1)
    throw ArgumentError("conditional_check: tower has no transitions");
  for (const auto& k : spec.kernels)
    if (k.kind != KernelSpec::Kind::Full)
      throw ArgumentError("conditional_check: requires unconstrained kernels");
  if (m_cap < 1) throw ArgumentError("conditional_check: m_cap must be >= 1");

  ConditionalReport rep;
  rep.d = spec.d;
  rep.m_checked = std::min(m_cap, node_count_at(spec, spec.depth() - 1));
  rep.martingale_exact = true;
  rep.all_at_most_half = true;
  rep.closed_form_matches = true;
  rep.max_positive_conditional = 0;
  Rational half = ratio(1, 2);
  for (long m = 0; m <= rep.m_checked; ++m) {
    ProbVector t = kernel_transition(spec.d, m, KernelSpec::full(), m);
    if (t.total() != 1)
      throw std::logic_error("conditional_check: transition mass is not 1");
    if (t.expectation() != m) rep.martingale_exact = false;
    for (const auto& [y, q] : t.entries) {
      if (y <= 0) continue;
      if (q > rep.max_positive_conditional) rep.max_positive_conditional = q;
      if (q > half) rep.all_at_most_half = false;
    }
  }
  for (long t = 1; spec.d * t <= rep.m_checked; ++t) {
    long dt = spec.d * t;
    Rational diag = kernel_transition(spec.d, dt, KernelSpec::full(), dt).at(dt);
    // Closed form C(dt, t) ((d-1)/d)^(dt) (d-1)^(-t), assembled independently
    // of the transition's counting path.
    Rational closed = ratio(binom(dt, t), 1) *
                      ratio(ipow(spec.d - 1, dt), ipow(spec.d, dt)) *
                      ratio(1, ipow(spec.d - 1, t));
    if (closed != diag) rep.closed_form_matches = false;
    rep.diagonal.emplace_back(t, diag);
  }
  return rep;
}

ExtinctionCurve extinction_curve(long d, long t0, long N) {
  if (d < 2 || t0 < 1 || N < 0)
    throw ArgumentError("extinction_curve: need d >= 2, t0 >= 1, N >= 0");
  if (t0 > 64) throw CapabilityError("extinction_curve: t0 beyond 64");
  ExtinctionCurve out;
  out.d = d;
  out.t0 = t0;
  out.q.push_back(Rational(0));
  out.survival.push_back(Rational(1));
  out.survival_approx.assign(N + 1, 0.0);
  out.survival_approx[0] = 1.0;

  const double log2d = std::log2(static_cast<double>(d));
  BigInt num = 0;
  long e = 0;  // q_n = num / d^e, always in lowest terms
  long n = 1;
  double qd = 0.0;
  for (; n <= std::min<long>(N, 30); ++n) {
    if (e > ((1L << 40) - 1) / d) break;
    long ne = d * e + 1;
    if (static_cast<double>(ne) * log2d * static_cast<double>(t0) >
        kExtinctionBitCap)
      break;
    BigInt nn;
    mpz_pow_ui(nn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(d));
    nn += BigInt(d - 1) * ipow(d, d * e);
    num = nn;
    e = ne;
    BigInt den = ipow(d, e);
    // num = (d-1) den_prev^d + num_prev^d is coprime to d (it reduces to
    // num_prev^d mod any prime of d), so the fraction needs no reduction.
    for (long p = 2; p * p <= d; ++p)
      if (d % p == 0 && mpz_divisible_ui_p(num.get_mpz_t(),
                                           static_cast<unsigned long>(p)))
        throw std::logic_error("extinction_curve: fraction not canonical");
    out.q.push_back(Rational(num, den));
    BigInt sn, sd;
    if (t0 == 1) {
      sd = den;
      sn = den - num;
    } else {
      mpz_pow_ui(sd.get_mpz_t(), den.get_mpz_t(),
                 static_cast<unsigned long>(t0));
      mpz_pow_ui(sn.get_mpz_t(), num.get_mpz_t(),
                 static_cast<unsigned long>(t0));
      sn = sd - sn;
    }
    out.survival.push_back(Rational(sn, sd));
    qd = mpq_get_d(out.q.back().get_mpq_t());
    out.survival_approx[n] = 1.0 - std::pow(qd, static_cast<double>(t0));
  }
  out.exact_levels = static_cast<long>(out.q.size()) - 1;
  for (; n <= N; ++n) {
    qd = (d - 1.0) / d + std::pow(qd, static_cast<double>(d)) / d;
    out.survival_approx[n] = 1.0 - std::pow(qd, static_cast<double>(t0));
  }
  return out;
}

WreathElement sample_uniform(const TowerSpec& spec, Rng& rng) {
  validate_tower(spec);
  require_explicit_capacity(spec);
  WreathElement e;
  e.base = spec.base_group[uniform_below(
      rng, static_cast<long>(spec.base_group.size()))];
  for (long l = 0; l < spec.depth(); ++l) {
    long M = node_count_at(spec, l);
    std::vector<int> lab(M, 0);
    const KernelSpec& ker = spec.kernels[l];
    if (ker.kind == KernelSpec::Kind::Full) {
      for (long i = 0; i < M; ++i)
        lab[i] = static_cast<int>(uniform_below(rng, spec.d));
    } else {
      long g = subgroup_gen(ker.r, spec.d);
      long s = g == 0 ? 1 : spec.d / g;
      long sum = 0;
      for (long i = 0; i + 1 < M; ++i) {
        lab[i] = static_cast<int>(uniform_below(rng, spec.d));
        sum += lab[i];
      }
      long target = g == 0 ? 0 : g * uniform_below(rng, s);
      lab[M - 1] = static_cast<int>(((target - sum) % spec.d + spec.d) % spec.d);
    }
    e.labels.push_back(std::move(lab));
  }
  return e;
}

long psi_image(const TowerSpec& spec, long level) {
  validate_tower(spec);
  if (level < 1 || level > spec.depth())
    throw ArgumentError("psi_image: level out of range");
  const KernelSpec& ker = spec.kernels[level - 1];
  if (ker.kind == KernelSpec::Kind::Full) return 1;
  return subgroup_gen(ker.r, spec.d);
}

long psi_image(const TowerSpec& spec, const std::vector<WreathElement>& group,
               long level) {
  validate_tower(spec);
  if (group.empty()) throw ArgumentError("psi_image: empty element list");
  for (const auto& e : group) validate_element(spec, e);
  for (const auto& a : group)
    for (const auto& b : group) {
      WreathElement c = compose(spec, a, b);
      if (std::find(group.begin(), group.end(), c) == group.end())
        throw ArgumentError("psi_image: element list is not closed");
    }
  long g = spec.d;
  for (const auto& e : group) g = std::gcd(g, psi(e, spec, level));
  return g == spec.d ? 0 : g;
}

std::vector<WreathElement> enumerate_group(const TowerSpec& spec,
                                           long max_order) {
  validate_tower(spec);
  require_explicit_capacity(spec);
  BigInt order = static_cast<long>(spec.base_group.size());
  for (long l = 0; l < spec.depth(); ++l) {
    long M = node_count_at(spec, l);
    const KernelSpec& ker = spec.kernels[l];
    if (ker.kind == KernelSpec::Kind::Full) {
      order *= ipow(spec.d, M);
    } else {
      long g = subgroup_gen(ker.r, spec.d);
      long s = g == 0 ? 1 : spec.d / g;
      order *= BigInt(s) * ipow(spec.d, M - 1);
    }
    if (order > max_order)
      throw CapabilityError("enumerate_group: order exceeds budget");
  }
  std::vector<std::vector<std::vector<int>>> layer_tuples(spec.depth());
  for (long l = 0; l < spec.depth(); ++l) {
    long M = node_count_at(spec, l);
    const KernelSpec& ker = spec.kernels[l];
    auto& bucket = layer_tuples[l];
    if (ker.kind == KernelSpec::Kind::Full) {
      for_all_tuples(M, spec.d,
                     [&](const std::vector<int>& t) { bucket.push_back(t); });
    } else {
      long g = subgroup_gen(ker.r, spec.d);
      long s = g == 0 ? 1 : spec.d / g;
      for (long u = 0; u < s; ++u) {
        long target = g == 0 ? 0 : g * u;
        for_all_tuples(M - 1, spec.d, [&](const std::vector<int>& head) {
          std::vector<int> t = head;
          long sum = 0;
          for (int x : head) sum += x;
          t.push_back(
              static_cast<int>(((target - sum) % spec.d + spec.d) % spec.d));
          bucket.push_back(std::move(t));
        });
      }
    }
  }
  std::vector<WreathElement> out;
  std::vector<std::size_t> idx(spec.depth(), 0);
  for (const auto& base : spec.base_group) {
    std::fill(idx.begin(), idx.end(), 0);
    for (;;) {
      WreathElement e;
      e.base = base;
      for (long l = 0; l < spec.depth(); ++l)
        e.labels.push_back(layer_tuples[l][idx[l]]);
      out.push_back(std::move(e));
      long l = spec.depth() - 1;
      while (l >= 0 && ++idx[l] == layer_tuples[l].size()) {
        idx[l] = 0;
        --l;
      }
      if (l < 0) break;
    }
  }
  return out;
}

MginvReport mginv_check(long d, const std::vector<std::vector<int>>& group,
                        long M) {
  if (d < 2) throw ArgumentError("mginv_check: d must be >= 2");
  if (M < 1) throw ArgumentError("mginv_check: M must be >= 1");
  if (M > 6) throw CapabilityError("mginv_check: M beyond 6");
  if (group.empty()) throw ArgumentError("mginv_check: empty group");
  if (group.size() > 243)
    throw CapabilityError("mginv_check: group order beyond 243");
  for (const auto& p : group)
    if (!is_permutation(p, M))
      throw ArgumentError("mginv_check: entry is not a permutation");
  std::set<std::vector<int>> seen(group.begin(), group.end());
  if (static_cast<long>(seen.size()) != static_cast<long>(group.size()))
    throw ArgumentError("mginv_check: duplicate group elements");
  std::vector<int> prod(M);
  for (const auto& a : group)
    for (const auto& b : group) {
      for (long i = 0; i < M; ++i) prod[i] = a[b[i]];
      if (!seen.count(prod))
        throw ArgumentError("mginv_check: set is not closed under composition");
    }
  long order = static_cast<long>(group.size());
  if (order > 1) {
    long p = 2;
    while (order % p != 0) ++p;
    long o = order;
    while (o % p == 0) o /= p;
    if (o != 1)
      throw ArgumentError("mginv_check: group order is not a prime power");
    if (d % p != 0)
      throw ArgumentError("mginv_check: group prime does not divide d");
  }
  long total = 1;
  for (long i = 0; i < M; ++i) {
    if (total > (1L << 16) / d)
      throw CapabilityError("mginv_check: module too large");
    total *= d;
  }
  std::vector<long> pw(M);
  pw[0] = 1;
  for (long i = 1; i < M; ++i) pw[i] = pw[i - 1] * d;
  auto act = [&](const std::vector<int>& g, long code) {
    long img = 0;
    for (long i = 0; i < M; ++i) {
      long digit = (code / pw[i]) % d;
      img += digit * pw[g[i]];
    }
    return img;
  };
  auto add = [&](long a, long b) {
    long r = 0;
    for (long i = 0; i < M; ++i) {
      long digit = ((a / pw[i]) + (b / pw[i])) % d;
      r += digit * pw[i];
    }
    return r;
  };

  MginvReport rep;
  rep.d = d;
  rep.M = M;
  rep.group_order = order;
  rep.all_have_invariant = true;
  std::vector<char> in(total, 0);
  std::vector<long> members;
  for (long v = 1; v < total; ++v) {
    std::fill(in.begin(), in.end(), 0);
    members.assign(1, 0);
    in[0] = 1;
    // Span of the orbit of v: fold in each orbit vector as an additive
    // generator. The span stays a subgroup throughout, so stopping once a
    // multiple of the generator is already present is sound.
    for (const auto& g : group) {
      long w = act(g, v);
      if (in[w]) continue;
      std::vector<long> snapshot = members;
      long kw = w;
      while (!in[kw]) {
        for (long s : snapshot) {
          long x = add(s, kw);
          if (!in[x]) {
            in[x] = 1;
            members.push_back(x);
          }
        }
        kw = add(kw, w);
      }
    }
    ++rep.modules_checked;
    bool has_invariant = false;
    for (long x : members) {
      if (x == 0) continue;
      bool fixed = true;
      for (const auto& g : group)
        if (act(g, x) != x) {
          fixed = false;
          break;
        }
      if (fixed) {
        has_invariant = true;
        break;
      }
    }
    if (!has_invariant) {
      rep.all_have_invariant = false;
      rep.counterexample.resize(M);
      for (long i = 0; i < M; ++i)
        rep.counterexample[i] = static_cast<int>((v / pw[i]) % d);
      break;
    }
  }
  return rep;
}

}  // namespace orbitprimes
