#pragma once

#include <memory>
#include <vector>

#include "swalloc/instance.hpp"
#include "swalloc/matroid.hpp"
#include "swalloc/set_function.hpp"

namespace swalloc {

/// Welfare as one set function over item-bidder pairs: element (i, j) is
/// i * n + j, and f(S) = Σ_j f_j({i : (i, j) ∈ S}).
class WelfareSetFunction final : public SetFunction {
 public:
  WelfareSetFunction(std::size_t items, std::vector<SetFunctionPtr> bidders);

  std::size_t ground_size() const override { return items_ * bidders_.size(); }
  double value(const ItemSet& s) const override;
  std::string kind() const override { return "welfare"; }

 private:
  std::size_t items_;
  std::vector<SetFunctionPtr> bidders_;
};

/// A welfare instance viewed as submodular maximisation over a partition
/// matroid whose part i holds the n copies (i, 1), ..., (i, n) of item i.
struct WelfareReduction {
  std::size_t items = 0;
  std::size_t bidders = 0;
  SetFunctionPtr function;
  std::shared_ptr<const PartitionMatroid> matroid;

  Item element(Item item, Bidder bidder) const { return item * bidders + bidder; }
  Allocation to_allocation(const ItemSet& elements) const;
  ItemSet to_elements(const Allocation& allocation) const;
};

WelfareReduction reduce(const WelfareInstance& instance);

}  // namespace swalloc
