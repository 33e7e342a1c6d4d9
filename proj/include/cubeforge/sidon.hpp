#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubeforge/int_set.hpp"
#include "cubeforge/limits.hpp"

namespace cubeforge {

/// {2p·i + (i² mod p) : 0 <= i < p}, a Sidon set of size p in [0, 2p²).
/// NotPrimeError unless p is prime; DomainError above 10^6.
IntSet erdos_turan_sidon(std::int64_t p);

/// First k terms of the greedy Sidon sequence 1, 2, 4, 8, 13, ...
IntSet mian_chowla(std::int64_t k);

enum class GrowthPhase { Small, Large };

const char* phase_name(GrowthPhase phase);

/// One application of a growth lemma: X' = X ∪ {a1, a2} with b = a1 + a2.
struct GrowthStep {
  GrowthPhase phase = GrowthPhase::Small;
  std::int64_t a1 = 0;
  std::int64_t a2 = 0;
  std::int64_t b = 0;
  std::int64_t x_before = 0;
  std::int64_t x_after = 0;
  std::int64_t sums_before = 0;  // |Σ*X|
  std::int64_t sums_after = 0;   // |Σ*X'|
  std::int64_t candidates = 0;   // |B|
  /// Small phase: |Σ*X ∩ (Σ*X + b)| for the chosen b.
  /// Large phase: |(S + b) \ Σ*X| for the chosen b.
  std::int64_t score = 0;
  /// Set when |Σ*X'| was recomputed from scratch and matched.
  bool cross_checked = false;
};

struct GrowthResult {
  IntSet x;
  GrowthStep step;
};

/// Extends X by the pair whose sum b minimizes |Σ*X ∩ (Σ*X + b)| over sums of
/// two unused elements (ties to the smallest b). Needs A Sidon and
/// nonnegative, X ⊆ A, |X| <= ⌊|A|/2⌋ and |Σ*X| <= C(⌊|A|/2⌋, 2);
/// PreconditionError otherwise, DegenerateError when fewer than two elements
/// remain. Asserts |Σ*X'| >= (3/2)|Σ*X|.
GrowthResult grow_small_phase(const IntSet& a, const IntSet& x, const Limits& limits = {});

/// Uses the ⌊|A|/4⌋ smallest unused elements as A' and the |B| largest
/// elements of Σ*X as S; picks b in B maximizing |(S + b) \ Σ*X| (ties to
/// the smallest b). Needs |X| <= ⌊3|A|/4⌋ and |Σ*X| >= C(⌊|A|/4⌋, 2).
/// Asserts |Σ*X'| >= |Σ*X| + ⌈C(⌊|A|/4⌋, 2)/2⌉.
GrowthResult grow_large_phase(const IntSet& a, const IntSet& x, const Limits& limits = {});

struct GrowthTrace {
  std::int64_t a_size = 0;
  std::vector<GrowthStep> steps;
  std::int64_t small_steps = 0;
  std::int64_t large_steps = 0;
  /// "sumset-cap" when |Σ*X| outgrew C(⌊|A|/2⌋, 2) first, else "size-cap".
  std::string small_exit;
  IntSet x;
  std::int64_t final_sums = 0;
  /// final_sums / |A|³.
  double c = 0.0;
};

/// Small phase from X = ∅ until a hypothesis fails, then large phase while
/// |X| <= ⌊3|A|/4⌋. Needs A Sidon, nonnegative, |A| >= 8. |Σ*X| is
/// recomputed from scratch every fifth step and compared.
GrowthTrace sidon_cubic_lowerbound(const IntSet& a, const Limits& limits = {});

}  // namespace cubeforge
