#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cubeforge/bitset.hpp"
#include "cubeforge/int_set.hpp"
#include "cubeforge/limits.hpp"

namespace cubeforge {

/// Σ*A: every subset sum of A, the empty sum 0 included.
IntSet restricted_sumset(const IntSet& a, const Limits& limits = {});

/// ℓ*A: sums of exactly `ell` distinct elements. Throws RangeError when
/// ell > |A|.
IntSet ell_fold_sums(const IntSet& a, std::int64_t ell, const Limits& limits = {});

/// X + Y.
IntSet sumset(const IntSet& x, const IntSet& y, const Limits& limits = {});

/// mS = S + ... + S with m summands, m >= 1.
IntSet m_fold_sumset(const IntSet& s, std::int64_t m, const Limits& limits = {});

/// mΣ*A, computed as the set of Σ c_a·a with 0 <= c_a <= m. This agrees with
/// m_fold_sumset(restricted_sumset(a), m): an element used c_a times is put in
/// the first c_a of the m subsets.
IntSet m_fold_restricted_sumset(const IntSet& a, std::int64_t m, const Limits& limits = {});

/// The increasing chain 0 < a1 < ... < ak < a1+ak < ... < a1+...+ak of
/// C(k+1,2)+1 subset sums. Every element must be positive.
std::vector<std::int64_t> chain_witness(const IntSet& a);

/// A longest AP inside S; ties go to the smallest difference, then the
/// smallest start. A singleton yields length 1 with difference 1.
ApWitness longest_ap_in(const IntSet& s);

/// True iff all sums a + b with a <= b in A are distinct.
bool is_sidon(const IntSet& a);

namespace detail {

/// Bitset of all Σ c_v·v with 0 <= c_v <= multiplicity, over the tight window.
OffsetBitset bounded_multiplicity_sums(std::span<const std::int64_t> values, std::int64_t multiplicity,
                                       const Limits& limits);

/// Window [lo, hi] as a bitset, or WindowError when it exceeds the cap.
OffsetBitset allocate_window(std::int64_t lo, std::int64_t hi, const Limits& limits);

}  // namespace detail

}  // namespace cubeforge
