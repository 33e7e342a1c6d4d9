#include "cubeforge/int_set.hpp"

#include <algorithm>
#include <string>

#include "cubeforge/checked.hpp"
#include "cubeforge/error.hpp"

namespace cubeforge {

IntSet::IntSet(std::vector<std::int64_t> values) : elements_(std::move(values)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  if (!elements_.empty()) window_ = {elements_.front(), elements_.back()};
}

IntSet::IntSet(std::initializer_list<std::int64_t> values)
    : IntSet(std::vector<std::int64_t>(values)) {}

IntSet::IntSet(std::vector<std::int64_t> values, Window window) : IntSet(std::move(values)) {
  if (!elements_.empty())
    require(window.lo <= elements_.front() && elements_.back() <= window.hi, ErrorKind::Range,
            "window [" + std::to_string(window.lo) + ", " + std::to_string(window.hi) +
                "] does not cover the elements");
  window_ = window;
}

IntSet IntSet::from_bits(const OffsetBitset& bits) {
  IntSet out;
  out.elements_ = bits.values();
  out.window_ = {bits.lo(), bits.hi()};
  return out;
}

std::int64_t IntSet::min() const {
  require(!elements_.empty(), ErrorKind::Empty, "min of empty set");
  return elements_.front();
}

std::int64_t IntSet::max() const {
  require(!elements_.empty(), ErrorKind::Empty, "max of empty set");
  return elements_.back();
}

bool IntSet::contains(std::int64_t value) const noexcept {
  return std::binary_search(elements_.begin(), elements_.end(), value);
}

bool IntSet::is_subset_of(const IntSet& other) const {
  return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
}

OffsetBitset IntSet::bits() const {
  OffsetBitset out(window_.lo, window_.hi);
  for (auto v : elements_) out.set(v);
  return out;
}

IntSet translate(const IntSet& set, std::int64_t shift) {
  std::vector<std::int64_t> moved;
  moved.reserve(set.size());
  for (auto v : set) moved.push_back(checked_add(v, shift));
  return IntSet(std::move(moved));
}

}  // namespace cubeforge
