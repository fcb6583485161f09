#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "swalloc/item_set.hpp"
#include "swalloc/oracle.hpp"

namespace swalloc {

using Bidder = std::size_t;

/// n bidders with submodular utilities over the same m items.
struct WelfareInstance {
  std::size_t items = 0;
  std::vector<SubmodularOracle> bidders;

  std::size_t bidder_count() const { return bidders.size(); }
  void reset_queries();
  std::uint64_t total_queries() const;
};

/// Throws DomainError unless every bidder's ground set has exactly `items` items.
void validate(const WelfareInstance& instance);

/// One item set per bidder.
struct Allocation {
  std::vector<ItemSet> sets;

  Allocation() = default;
  explicit Allocation(std::size_t bidders) : sets(bidders) {}

  std::size_t bidder_count() const { return sets.size(); }
  ItemSet assigned() const;
  bool disjoint() const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
  friend bool operator<(const Allocation& a, const Allocation& b) { return a.sets < b.sets; }
};

/// Σ_j f_j(S_j), evaluated through the counted oracles.
double welfare(const WelfareInstance& instance, const Allocation& allocation);

/// Same, straight on the underlying functions (analysis-side, no query cost).
double welfare_uncounted(const WelfareInstance& instance, const Allocation& allocation);

std::string to_string(const Allocation& allocation);  // "b1{1,3} b2{2}" with 1-based items

}  // namespace swalloc
