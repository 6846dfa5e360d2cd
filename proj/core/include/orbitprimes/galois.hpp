#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "orbitprimes/numeric.hpp"

namespace orbitprimes {

// Automorphism towers of preimage trees. Levels are numbered 0..depth: level
// 0 carries t0 points permuted by an explicit finite group, and each node at
// level l-1 has d children at level l. Group elements act level by level; the
// action on a fiber of d siblings is always a cyclic shift, recorded as a
// residue label on the parent node.

struct KernelSpec {
  enum class Kind { Full, SumIn };
  Kind kind = Kind::Full;
  long r = 0;  // SumIn only: label sums confined to the subgroup generated by r

  static KernelSpec full() { return {}; }
  static KernelSpec sum_in(long r) { return {Kind::SumIn, r}; }
};

struct TowerSpec {
  long d = 2;
  long t0 = 1;
  std::vector<std::vector<int>> base_group;  // permutations of {0..t0-1}
  std::vector<KernelSpec> kernels;           // one per level 1..depth

  long depth() const { return static_cast<long>(kernels.size()); }
};

// Throws ArgumentError unless d >= 2, t0 >= 1, and base_group is a nonempty
// set of permutations of t0 points closed under composition.
void validate_tower(const TowerSpec& spec);

// Trivial base group, all kernels unconstrained.
TowerSpec full_tower(long d, long t0, long depth);

// One tower automorphism. labels[l] holds the shift applied inside each
// level-(l+1) fiber, indexed by the parent node at level l; nodes at level l
// are numbered root * d^l + digits in base d along the path.
struct WreathElement {
  std::vector<int> base;
  std::vector<std::vector<int>> labels;

  long depth() const { return static_cast<long>(labels.size()); }
  bool operator==(const WreathElement& other) const {
    return base == other.base && labels == other.labels;
  }
};

WreathElement identity_element(const TowerSpec& spec);

// The global shift: trivial base, every label 1.
WreathElement global_shift(const TowerSpec& spec);

// Image of the level-l node v under e. a_after_b applies b first.
long node_image(const TowerSpec& spec, const WreathElement& e, long level, long v);
WreathElement compose(const TowerSpec& spec, const WreathElement& a_after_b,
                      const WreathElement& b);

// Number of level-`level` nodes fixed by e; fixed_leaves takes level = depth.
// A node is fixed iff its root is fixed by the base permutation and every
// label along the path to it is zero.
long fixed_nodes(const WreathElement& e, const TowerSpec& spec, long level);
long fixed_leaves(const WreathElement& e, const TowerSpec& spec);

// Sum of the labels feeding level `level` (1 <= level <= depth), reduced
// mod d. This is a homomorphism to Z/d for any group of tower automorphisms.
long psi(const WreathElement& e, const TowerSpec& spec, long level);

// Exact finitely supported distribution on fixed-point counts.
struct ProbVector {
  std::map<long, Rational> entries;

  Rational total() const;
  Rational prob_positive() const;
  Rational expectation() const;
  Rational at(long k) const;  // 0 if absent
};

// Distribution of the number of zero labels lifted to child counts: for a
// uniform kernel tuple over M slots of which m sit under fixed parents,
// returns the law of d * #(zero labels among those m). With an unconstrained
// kernel, or a constrained one leaving at least one free slot (m < M), this
// is d * Binomial(m, 1/d).
ProbVector kernel_transition(long d, long m, const KernelSpec& kernel, long M);

// Laws of Y_n = #fixed nodes at level n for a uniform random element,
// n = 0..depth. Exact rationals throughout. Throws CapabilityError when the
// support of some level exceeds width_cap or depth > 64.
std::vector<ProbVector> exact_Yn_distribution(const TowerSpec& spec,
                                              long width_cap = 4096);

// Structural checks on one unconstrained-level transition: the diagonal
// conditionals P(Y_n = d t | Y_{n-1} = d t), the bound P(Y_n = k | ...) <= 1/2
// for k > 0, and exactness of E(Y_n | Y_{n-1} = m) = m.
struct ConditionalReport {
  long d = 0;
  long m_checked = 0;
  std::vector<std::pair<long, Rational>> diagonal;  // (t, P(Y = d t | Y' = d t))
  Rational max_positive_conditional;
  bool all_at_most_half = false;
  bool martingale_exact = false;
  bool closed_form_matches = false;
};

ConditionalReport conditional_check(const TowerSpec& spec, long m_cap = 256);

// q_{n+1} = (d-1)/d + q_n^d / d starting from q_0 = 0, and the survival
// probabilities mu(Y_n > 0) = 1 - q_n^t0 of the unconstrained tower. Exact
// rationals up to level min(N, 30); survival_approx covers all N+1 levels in
// double precision.
struct ExtinctionCurve {
  long d = 0;
  long t0 = 0;
  long exact_levels = 0;              // entries 0..exact_levels are exact
  std::vector<Rational> q;            // size exact_levels + 1
  std::vector<Rational> survival;     // size exact_levels + 1
  std::vector<double> survival_approx;  // size N + 1
};

ExtinctionCurve extinction_curve(long d, long t0, long N);

// Uniform random element of the tower group: uniform base permutation and,
// per level, a uniform kernel tuple respecting its constraint.
WreathElement sample_uniform(const TowerSpec& spec, Rng& rng);

// Image of psi at `level` as a subgroup of Z/d, reported by a generator in
// [0, d). The element-list overload checks closure first (ArgumentError).
long psi_image(const TowerSpec& spec, long level);
long psi_image(const TowerSpec& spec, const std::vector<WreathElement>& group,
               long level);

// Every element of the tower group with the given spec, odometer order.
// Throws CapabilityError when the group order exceeds max_order.
std::vector<WreathElement> enumerate_group(const TowerSpec& spec,
                                           long max_order = 200000);

// Invariant-vector check: G a permutation group of prime-power order p^k with
// p | d, acting on (Z/d)^M by coordinate permutation. Verifies that every
// nonzero G-closed submodule contains a nonzero G-invariant vector; it
// suffices to scan the G-submodule generated by each single vector.
struct MginvReport {
  long d = 0;
  long M = 0;
  long group_order = 0;
  long modules_checked = 0;
  bool all_have_invariant = false;
  std::vector<int> counterexample;  // generator of an offending submodule
};

MginvReport mginv_check(long d, const std::vector<std::vector<int>>& group, long M);

}  // namespace orbitprimes
