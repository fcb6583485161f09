#include "swalloc/item_set.hpp"

#include <algorithm>
#include <bit>

#include "swalloc/errors.hpp"

namespace swalloc {

ItemSet::ItemSet(std::initializer_list<Item> items) {
  for (Item i : items) insert(i);
}

ItemSet ItemSet::from_mask(std::uint64_t mask) {
  ItemSet s;
  s.low_ = mask;
  return s;
}

ItemSet ItemSet::range(Item count) {
  ItemSet s;
  if (count >= 64) {
    s.low_ = ~std::uint64_t{0};
    for (Item i = 64; i < count; ++i) s.insert(i);
  } else {
    s.low_ = (std::uint64_t{1} << count) - 1;
  }
  return s;
}

std::uint64_t ItemSet::word(std::size_t index) const {
  if (index == 0) return low_;
  return index - 1 < high_.size() ? high_[index - 1] : 0;
}

bool ItemSet::contains(Item item) const {
  return (word(item / 64) >> (item % 64)) & 1U;
}

void ItemSet::insert(Item item) {
  if (item < 64) {
    low_ |= std::uint64_t{1} << item;
    return;
  }
  std::size_t b = item / 64 - 1;
  if (high_.size() <= b) high_.resize(b + 1, 0);
  high_[b] |= std::uint64_t{1} << (item % 64);
}

void ItemSet::erase(Item item) {
  if (item < 64) {
    low_ &= ~(std::uint64_t{1} << item);
    return;
  }
  std::size_t b = item / 64 - 1;
  if (b < high_.size()) {
    high_[b] &= ~(std::uint64_t{1} << (item % 64));
    trim();
  }
}

ItemSet ItemSet::with(Item item) const {
  ItemSet s = *this;
  s.insert(item);
  return s;
}

ItemSet ItemSet::without(Item item) const {
  ItemSet s = *this;
  s.erase(item);
  return s;
}

std::size_t ItemSet::size() const {
  std::size_t n = static_cast<std::size_t>(std::popcount(low_));
  for (auto w : high_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

Item ItemSet::bound() const {
  if (!high_.empty()) return 64 * high_.size() + (64 - static_cast<Item>(std::countl_zero(high_.back())));
  return 64 - static_cast<Item>(std::countl_zero(low_));
}

bool ItemSet::is_subset_of(const ItemSet& other) const {
  if ((low_ & ~other.low_) != 0) return false;
  for (std::size_t b = 0; b < high_.size(); ++b) {
    if ((high_[b] & ~other.word(b + 1)) != 0) return false;
  }
  return true;
}

bool ItemSet::intersects(const ItemSet& other) const {
  if ((low_ & other.low_) != 0) return true;
  std::size_t n = std::min(high_.size(), other.high_.size());
  for (std::size_t b = 0; b < n; ++b) {
    if ((high_[b] & other.high_[b]) != 0) return true;
  }
  return false;
}

ItemSet& ItemSet::operator|=(const ItemSet& other) {
  low_ |= other.low_;
  if (high_.size() < other.high_.size()) high_.resize(other.high_.size(), 0);
  for (std::size_t b = 0; b < other.high_.size(); ++b) high_[b] |= other.high_[b];
  return *this;
}

ItemSet& ItemSet::operator&=(const ItemSet& other) {
  low_ &= other.low_;
  for (std::size_t b = 0; b < high_.size(); ++b) high_[b] &= other.word(b + 1);
  trim();
  return *this;
}

ItemSet& ItemSet::operator-=(const ItemSet& other) {
  low_ &= ~other.low_;
  for (std::size_t b = 0; b < high_.size(); ++b) high_[b] &= ~other.word(b + 1);
  trim();
  return *this;
}

bool operator<(const ItemSet& a, const ItemSet& b) {
  std::size_t n = std::max(a.high_.size(), b.high_.size());
  for (std::size_t w = n + 1; w-- > 0;) {
    std::uint64_t x = a.word(w), y = b.word(w);
    if (x != y) return x < y;
  }
  return false;
}

std::vector<Item> ItemSet::items() const {
  std::vector<Item> out;
  out.reserve(size());
  for_each([&](Item i) { out.push_back(i); });
  return out;
}

std::uint64_t ItemSet::mask() const {
  if (!high_.empty()) throw DomainError("item set does not fit in a 64-bit mask");
  return low_;
}

std::size_t ItemSet::hash() const {
  std::size_t h = std::hash<std::uint64_t>{}(low_);
  for (auto w : high_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

void ItemSet::trim() {
  while (!high_.empty() && high_.back() == 0) high_.pop_back();
}

}  // namespace swalloc
