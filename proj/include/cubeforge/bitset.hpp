#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace cubeforge {

/// Dense bitset over the integer window [lo, hi]. Bit i stands for the value
/// lo + i, so windows may straddle zero. Bits beyond the window are kept 0.
class OffsetBitset {
 public:
  OffsetBitset() = default;
  /// Empty window when hi < lo.
  OffsetBitset(std::int64_t lo, std::int64_t hi);

  std::int64_t lo() const noexcept { return lo_; }
  std::int64_t hi() const noexcept { return lo_ + static_cast<std::int64_t>(width_) - 1; }
  std::uint64_t width() const noexcept { return width_; }

  bool test(std::int64_t value) const noexcept;
  /// Value must lie inside the window.
  void set(std::int64_t value);

  /// this |= this shifted by `delta` (value v also marks v + delta).
  /// Bits pushed outside the window are dropped.
  void or_shifted_self(std::int64_t delta);
  /// this |= src shifted by `delta`; the windows may differ.
  void or_shifted(const OffsetBitset& src, std::int64_t delta);
  void or_with(const OffsetBitset& other) { or_shifted(other, 0); }

  std::uint64_t count() const noexcept;
  /// |this ∩ (src + delta)|.
  std::uint64_t count_and_shifted(const OffsetBitset& src, std::int64_t delta) const;

  std::vector<std::int64_t> values() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word != 0) {
        const int bit = std::countr_zero(word);
        f(lo_ + static_cast<std::int64_t>(w * 64 + static_cast<std::size_t>(bit)));
        word &= word - 1;
      }
    }
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

 private:
  // 64 bits of `words` starting at bit position `pos` (may be negative or
  // beyond the end; missing bits read as zero).
  static std::uint64_t extract64(const std::vector<std::uint64_t>& words, std::int64_t pos) noexcept;
  void mask_tail() noexcept;

  std::int64_t lo_ = 0;
  std::uint64_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace cubeforge
