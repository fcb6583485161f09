#include "swalloc/reduction.hpp"

#include "swalloc/errors.hpp"

namespace swalloc {

WelfareSetFunction::WelfareSetFunction(std::size_t items, std::vector<SetFunctionPtr> bidders)
    : items_(items), bidders_(std::move(bidders)) {
  for (const auto& f : bidders_) {
    if (f->ground_size() != items_) throw DomainError("bidder ground set does not match item count");
  }
}

double WelfareSetFunction::value(const ItemSet& s) const {
  const std::size_t n = bidders_.size();
  std::vector<ItemSet> per_bidder(n);
  s.for_each([&](Item e) { per_bidder[e % n].insert(e / n); });
  double total = 0;
  for (std::size_t j = 0; j < n; ++j) total += bidders_[j]->value(per_bidder[j]);
  return total;
}

Allocation WelfareReduction::to_allocation(const ItemSet& elements) const {
  Allocation a(bidders);
  elements.for_each([&](Item e) {
    if (e < items * bidders) a.sets[e % bidders].insert(e / bidders);
  });
  return a;
}

ItemSet WelfareReduction::to_elements(const Allocation& allocation) const {
  ItemSet s;
  for (Bidder j = 0; j < allocation.sets.size(); ++j) {
    allocation.sets[j].for_each([&](Item i) { s.insert(element(i, j)); });
  }
  return s;
}

WelfareReduction reduce(const WelfareInstance& instance) {
  validate(instance);
  if (instance.bidders.empty()) throw DomainError("welfare instance has no bidders");
  WelfareReduction r;
  r.items = instance.items;
  r.bidders = instance.bidder_count();
  std::vector<SetFunctionPtr> fs;
  for (const auto& b : instance.bidders) fs.push_back(b.function_ptr());
  r.function = std::make_shared<const WelfareSetFunction>(r.items, std::move(fs));
  std::vector<ItemSet> parts(r.items);
  for (Item i = 0; i < r.items; ++i) {
    for (Bidder j = 0; j < r.bidders; ++j) parts[i].insert(r.element(i, j));
  }
  r.matroid = std::make_shared<const PartitionMatroid>(PartitionStructure(r.items * r.bidders, std::move(parts)));
  return r;
}

}  // namespace swalloc
