#include "orbitprimes/density.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <thread>
#include <utility>

#include "orbitprimes/dynamics.hpp"
#include "orbitprimes/errors.hpp"

namespace orbitprimes {
namespace {

Rational ratio_of(long num, long den) {
  if (den == 0) return Rational(0);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::vector<long> base_primes_upto(long limit) {
  std::vector<char> comp(limit + 1, 0);
  std::vector<long> out;
  for (long i = 2; i <= limit; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (long j = i * i; j <= limit; j += i) comp[j] = 1;
  }
  return out;
}

// Primes in [lo, hi) via the shared base-prime table, ascending.
void sieve_segment(long lo, long hi, const std::vector<long>& base,
                   const std::function<void(long)>& fn) {
  if (hi <= lo) return;
  long len = hi - lo;
  std::vector<char> comp(len, 0);
  for (long p : base) {
    if (p * p >= hi) break;
    long start = std::max(p * p, ((lo + p - 1) / p) * p);
    for (long j = start; j < hi; j += p) comp[j - lo] = 1;
  }
  for (long i = std::max(2L, lo); i < hi; ++i)
    if (!comp[i - lo]) fn(i);
}

bool class_accepts(const std::optional<ClassFilter>& filter, long q) {
  if (!filter) return true;
  long r = q % filter->modulus;
  return std::binary_search(filter->residues.begin(), filter->residues.end(), r);
}

struct SegmentTally {
  long divides = 0;
  long not_divides = 0;
  std::vector<long> bad;
  std::map<long, std::pair<long, long>> per_class;  // residue -> (div, not)
};

struct ClassAccum {
  std::map<long, std::pair<long, long>> per_class;
  long divides = 0;
  long not_divides = 0;

  void add(const SegmentTally& t) {
    divides += t.divides;
    not_divides += t.not_divides;
    for (const auto& [r, c] : t.per_class) {
      auto& slot = per_class[r];
      slot.first += c.first;
      slot.second += c.second;
    }
  }
  std::vector<ClassCount> snapshot() const {
    std::vector<ClassCount> out;
    for (const auto& [r, c] : per_class) {
      ClassCount cc;
      cc.residue = r;
      cc.divides = c.first;
      cc.not_divides = c.second;
      cc.primes = c.first + c.second;
      cc.ratio = ratio_of(cc.divides, cc.primes);
      out.push_back(cc);
    }
    return out;
  }
};

DensityReport run_density(const MapSpec& m, const SieveConfig& cfg,
                          std::vector<long> checkpoints) {
  validate(m);
  validate_sieve(cfg);
  if (checkpoints.empty()) throw ArgumentError("density: no checkpoints");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 3 || checkpoints[i] > cfg.max_X)
      throw ArgumentError("density: checkpoint out of range");
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
      throw ArgumentError("density: checkpoints must be ascending");
  }
  const long X = checkpoints.back();

  OrbitClassifier classifier(m);
  const long class_mod = cfg.classes ? cfg.classes->modulus : m.d;

  // Segment boundaries: chunk grid plus a cut after every checkpoint, so each
  // cumulative row is a prefix of whole segments.
  std::vector<long> bounds;
  bounds.push_back(2);
  for (long b = cfg.chunk; b <= X; b += cfg.chunk) bounds.push_back(b);
  for (long c : checkpoints) bounds.push_back(c + 1);
  bounds.push_back(X + 1);
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
  while (bounds.size() > 1 && bounds.front() < 2) bounds.erase(bounds.begin());
  const std::size_t nseg = bounds.size() - 1;

  std::vector<long> base = base_primes_upto(
      static_cast<long>(std::sqrt(static_cast<double>(X))) + 2);

  std::vector<SegmentTally> tallies(nseg);
  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t seg = cursor.fetch_add(1);
      if (seg >= nseg) return;
      SegmentTally& t = tallies[seg];
      sieve_segment(bounds[seg], bounds[seg + 1], base, [&](long q) {
        if (!class_accepts(cfg.classes, q)) return;
        OrbitModResult r =
            classifier.classify(static_cast<std::uint64_t>(q), false);
        long residue = q % class_mod;
        switch (r.verdict) {
          case OrbitVerdict::Divides:
            ++t.divides;
            ++t.per_class[residue].first;
            break;
          case OrbitVerdict::NotDivides:
            ++t.not_divides;
            ++t.per_class[residue].second;
            break;
          case OrbitVerdict::BadPrime:
            t.bad.push_back(q);
            break;
        }
      });
    }
  };
  int nthreads = std::max(1, cfg.threads);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Deterministic reduction: fold segments in ascending order, cutting a
  // curve row whenever a checkpoint boundary is crossed.
  DensityReport rep;
  rep.map = m;
  rep.X = X;
  rep.class_modulus = class_mod;
  rep.finite_orbit = classifier.orbit_finite();
  ClassAccum acc;
  std::size_t next_cp = 0;
  for (std::size_t seg = 0; seg < nseg; ++seg) {
    acc.add(tallies[seg]);
    for (long q : tallies[seg].bad) rep.bad_primes.push_back(q);
    while (next_cp < checkpoints.size() &&
           bounds[seg + 1] == checkpoints[next_cp] + 1) {
      CurveSample row;
      row.X = checkpoints[next_cp];
      row.divides = acc.divides;
      row.not_divides = acc.not_divides;
      row.primes = acc.divides + acc.not_divides;
      row.ratio = ratio_of(row.divides, row.primes);
      row.classes = acc.snapshot();
      rep.curve.push_back(std::move(row));
      ++next_cp;
    }
  }
  rep.divides = acc.divides;
  rep.not_divides = acc.not_divides;
  rep.bad_count = static_cast<long>(rep.bad_primes.size());
  rep.total_primes = rep.divides + rep.not_divides + rep.bad_count;
  rep.ratio = ratio_of(rep.divides, rep.divides + rep.not_divides);
  rep.classes = acc.snapshot();
  return rep;
}

}  // namespace

void validate_sieve(const SieveConfig& cfg) {
  if (cfg.X < 3) throw ArgumentError("sieve: X must be >= 3");
  if (cfg.max_X < 3 || cfg.max_X > 1000000000L)
    throw ArgumentError("sieve: max_X must lie in [3, 10^9]");
  if (cfg.X > cfg.max_X) throw ArgumentError("sieve: X exceeds the configured max");
  if (cfg.chunk < 16) throw ArgumentError("sieve: chunk must be >= 16");
  if (cfg.threads < 1 || cfg.threads > 64)
    throw ArgumentError("sieve: threads must lie in [1, 64]");
  if (cfg.classes) {
    const ClassFilter& f = *cfg.classes;
    if (f.modulus < 2) throw ArgumentError("sieve: class modulus must be >= 2");
    if (f.residues.empty())
      throw ArgumentError("sieve: class filter needs at least one residue");
    for (std::size_t i = 0; i < f.residues.size(); ++i) {
      long r = f.residues[i];
      if (r < 0 || r >= f.modulus)
        throw ArgumentError("sieve: residues must be reduced mod the modulus");
      if (std::gcd(r, f.modulus) != 1)
        throw ArgumentError("sieve: residues must be coprime to the modulus");
      if (i > 0 && f.residues[i] <= f.residues[i - 1])
        throw ArgumentError("sieve: residues must be strictly ascending");
    }
  }
}

void for_each_prime(long lo, long hi, const SieveConfig& cfg,
                    const std::function<void(long)>& fn) {
  validate_sieve(cfg);
  if (hi > cfg.max_X) throw ArgumentError("sieve: range end exceeds the max");
  if (lo < 0) throw ArgumentError("sieve: range start must be nonnegative");
  if (hi < lo) return;
  std::vector<long> base = base_primes_upto(
      static_cast<long>(std::sqrt(static_cast<double>(hi))) + 2);
  for (long s = std::max(2L, lo); s <= hi; s += cfg.chunk) {
    long e = std::min(hi + 1, s + cfg.chunk);
    sieve_segment(s, e, base, [&](long q) {
      if (class_accepts(cfg.classes, q)) fn(q);
    });
  }
}

std::vector<long> primes_in_range(long lo, long hi, const SieveConfig& cfg) {
  std::vector<long> out;
  for_each_prime(lo, hi, cfg, [&](long q) { out.push_back(q); });
  return out;
}

DensityReport density_estimate(const MapSpec& m, const SieveConfig& cfg) {
  std::vector<long> checkpoints;
  for (long c = 1000; c < cfg.X; c *= 10) checkpoints.push_back(c);
  checkpoints.push_back(cfg.X);
  return run_density(m, cfg, std::move(checkpoints));
}

DensityReport density_curve(const MapSpec& m, const std::vector<long>& checkpoints,
                            const SieveConfig& cfg) {
  if (checkpoints.empty()) throw ArgumentError("density: no checkpoints");
  SieveConfig c = cfg;
  c.X = checkpoints.back();
  return run_density(m, c, checkpoints);
}

}  // namespace orbitprimes
