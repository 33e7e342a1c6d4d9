#include "cubeforge/bitset.hpp"

#include <string>

#include "cubeforge/error.hpp"

namespace cubeforge {

OffsetBitset::OffsetBitset(std::int64_t lo, std::int64_t hi) : lo_(lo) {
  if (hi >= lo) {
    width_ = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    words_.assign((width_ + 63) / 64, 0);
  }
}

bool OffsetBitset::test(std::int64_t value) const noexcept {
  if (value < lo_) return false;
  const std::uint64_t idx = static_cast<std::uint64_t>(value) - static_cast<std::uint64_t>(lo_);
  if (idx >= width_) return false;
  return (words_[idx >> 6] >> (idx & 63)) & 1U;
}

void OffsetBitset::set(std::int64_t value) {
  const std::uint64_t idx = static_cast<std::uint64_t>(value) - static_cast<std::uint64_t>(lo_);
  if (value < lo_ || idx >= width_)
    fail(ErrorKind::Range, "value " + std::to_string(value) + " outside bitset window");
  words_[idx >> 6] |= std::uint64_t{1} << (idx & 63);
}

std::uint64_t OffsetBitset::extract64(const std::vector<std::uint64_t>& words, std::int64_t pos) noexcept {
  const std::int64_t wi = pos >> 6;  // floor division
  const unsigned bit = static_cast<unsigned>(pos & 63);
  const auto n = static_cast<std::int64_t>(words.size());
  auto get = [&](std::int64_t i) -> std::uint64_t {
    return (i >= 0 && i < n) ? words[static_cast<std::size_t>(i)] : 0;
  };
  if (bit == 0) return get(wi);
  return (get(wi) >> bit) | (get(wi + 1) << (64 - bit));
}

void OffsetBitset::mask_tail() noexcept {
  const unsigned rem = static_cast<unsigned>(width_ & 63);
  if (rem != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << rem) - 1;
}

void OffsetBitset::or_shifted_self(std::int64_t delta) {
  if (delta == 0 || words_.empty()) return;
  const auto n = static_cast<std::int64_t>(words_.size());
  if (delta > 0) {
    // Destination word i reads source bits at or below its own position, so
    // walking downward never reads an already-updated word.
    for (std::int64_t i = n - 1; i >= 0; --i)
      words_[static_cast<std::size_t>(i)] |= extract64(words_, i * 64 - delta);
  } else {
    for (std::int64_t i = 0; i < n; ++i)
      words_[static_cast<std::size_t>(i)] |= extract64(words_, i * 64 - delta);
  }
  mask_tail();
}

void OffsetBitset::or_shifted(const OffsetBitset& src, std::int64_t delta) {
  if (&src == this) {
    or_shifted_self(delta);
    return;
  }
  if (words_.empty() || src.words_.empty()) return;
  // Source bit j lands on destination bit j + offset.
  const std::int64_t offset = src.lo_ + delta - lo_;
  const auto n = static_cast<std::int64_t>(words_.size());
  for (std::int64_t i = 0; i < n; ++i)
    words_[static_cast<std::size_t>(i)] |= extract64(src.words_, i * 64 - offset);
  mask_tail();
}

std::uint64_t OffsetBitset::count() const noexcept {
  std::uint64_t total = 0;
  for (auto w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

std::uint64_t OffsetBitset::count_and_shifted(const OffsetBitset& src, std::int64_t delta) const {
  const std::int64_t offset = src.lo_ + delta - lo_;
  std::uint64_t total = 0;
  const auto n = static_cast<std::int64_t>(words_.size());
  for (std::int64_t i = 0; i < n; ++i)
    total += static_cast<std::uint64_t>(
        std::popcount(words_[static_cast<std::size_t>(i)] & extract64(src.words_, i * 64 - offset)));
  return total;
}

std::vector<std::int64_t> OffsetBitset::values() const {
  std::vector<std::int64_t> out;
  out.reserve(count());
  for_each([&](std::int64_t v) { out.push_back(v); });
  return out;
}

}  // namespace cubeforge
