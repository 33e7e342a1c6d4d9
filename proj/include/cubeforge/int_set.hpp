#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "cubeforge/bitset.hpp"

namespace cubeforge {

/// Inclusive integer window [lo, hi].
struct Window {
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  bool operator==(const Window&) const = default;
};

/// Finite set of 64-bit integers, stored as a strictly increasing list with a
/// window covering every element. `bits()` materializes the bitset view over
/// that window.
class IntSet {
 public:
  IntSet() = default;
  /// Sorts and deduplicates; the window is the tight [min, max].
  explicit IntSet(std::vector<std::int64_t> values);
  IntSet(std::initializer_list<std::int64_t> values);
  /// Explicit window; every element must lie inside it.
  IntSet(std::vector<std::int64_t> values, Window window);

  static IntSet from_bits(const OffsetBitset& bits);

  std::span<const std::int64_t> elements() const noexcept { return elements_; }
  const std::vector<std::int64_t>& to_vector() const noexcept { return elements_; }
  Window window() const noexcept { return window_; }

  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  std::int64_t min() const;
  std::int64_t max() const;
  bool contains(std::int64_t value) const noexcept;
  bool is_subset_of(const IntSet& other) const;

  OffsetBitset bits() const;

  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  /// Equality of element lists; windows are representation detail.
  bool operator==(const IntSet& other) const noexcept { return elements_ == other.elements_; }

 private:
  std::vector<std::int64_t> elements_;
  Window window_;
};

IntSet translate(const IntSet& set, std::int64_t shift);

/// The progression start, start + difference, ..., of `length` terms.
struct ApWitness {
  std::int64_t start = 0;
  std::int64_t difference = 1;
  std::int64_t length = 0;

  std::int64_t term(std::int64_t j) const noexcept { return start + j * difference; }
  std::int64_t last() const noexcept { return term(length - 1); }
  bool operator==(const ApWitness&) const = default;
};

}  // namespace cubeforge
