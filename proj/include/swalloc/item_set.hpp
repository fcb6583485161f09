#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace swalloc {

using Item = std::size_t;

/// Set of item (or matroid element) indices. Indices below 64 live in a single
/// inline word so the small instances used for verification never allocate;
/// larger indices spill into a growable word vector. Two sets holding the same
/// indices compare equal regardless of how they were built.
class ItemSet {
 public:
  ItemSet() = default;
  ItemSet(std::initializer_list<Item> items);

  static ItemSet from_mask(std::uint64_t mask);
  static ItemSet range(Item count);  // {0, ..., count-1}

  bool contains(Item item) const;
  void insert(Item item);
  void erase(Item item);

  ItemSet with(Item item) const;
  ItemSet without(Item item) const;

  std::size_t size() const;
  bool empty() const { return low_ == 0 && high_.empty(); }

  /// Largest index + 1, or 0 for the empty set.
  Item bound() const;

  bool is_subset_of(const ItemSet& other) const;
  bool intersects(const ItemSet& other) const;

  ItemSet& operator|=(const ItemSet& other);
  ItemSet& operator&=(const ItemSet& other);
  ItemSet& operator-=(const ItemSet& other);

  friend ItemSet operator|(ItemSet a, const ItemSet& b) { return a |= b; }
  friend ItemSet operator&(ItemSet a, const ItemSet& b) { return a &= b; }
  friend ItemSet operator-(ItemSet a, const ItemSet& b) { return a -= b; }

  friend bool operator==(const ItemSet& a, const ItemSet& b) {
    return a.low_ == b.low_ && a.high_ == b.high_;
  }
  /// Orders by the integer whose bits are the members (mask order).
  friend bool operator<(const ItemSet& a, const ItemSet& b);

  /// Members in increasing order.
  std::vector<Item> items() const;

  /// Bitmask form; only valid when bound() <= 64.
  std::uint64_t mask() const;
  bool fits_mask() const { return high_.empty(); }

  template <typename F>
  void for_each(F&& f) const {
    for (std::uint64_t w = low_; w != 0; w &= w - 1) f(static_cast<Item>(__builtin_ctzll(w)));
    for (std::size_t b = 0; b < high_.size(); ++b) {
      for (std::uint64_t w = high_[b]; w != 0; w &= w - 1)
        f(static_cast<Item>(64 * (b + 1) + __builtin_ctzll(w)));
    }
  }

  std::size_t hash() const;

 private:
  void trim();
  std::uint64_t word(std::size_t index) const;

  std::uint64_t low_ = 0;
  std::vector<std::uint64_t> high_;  // word b covers [64(b+1), 64(b+2)); no trailing zero words
};

}  // namespace swalloc

template <>
struct std::hash<swalloc::ItemSet> {
  std::size_t operator()(const swalloc::ItemSet& s) const noexcept { return s.hash(); }
};
