#include "swalloc/hardness.hpp"

#include <algorithm>

#include "swalloc/errors.hpp"

namespace swalloc {

Assignment GreedyAllocator::decide(const GuardedInstanceView& view, const Allocation& state, Item item) {
  const BidderRanking ranking = rank_bidders(view, state, item);
  if (ranking.nonnegative == 0) return std::nullopt;
  return ranking.order.front().bidder;
}

Assignment RandomizedAllocator::decide(const GuardedInstanceView& view, const Allocation& state, Item item) {
  return sample_assignment(rank_bidders(view, state, item), rng_);
}

AdaptiveOracle::AdaptiveOracle(double big_m) : big_m_(big_m) {
  if (!(big_m > 0)) throw DomainError("the hardness parameter M must be positive");
}

double AdaptiveOracle::value(const ItemSet& s) const {
  const bool has_v1 = s.contains(0);
  const bool has_v2 = s.contains(1);
  if (!has_v2) return has_v1 ? 1.0 : 0.0;
  if (!committed_) throw ModelViolation("v2 queried before the decision on v1");
  if (*committed_) return has_v1 ? 0.0 : big_m_;
  return has_v1 ? 1.0 : 0.0;
}

void AdaptiveOracle::commit(bool v1_assigned) {
  if (committed_) throw PreconditionError("adaptive oracle already committed");
  committed_ = v1_assigned;
}

TableFunction AdaptiveOracle::table() const {
  if (!committed_) throw PreconditionError("adaptive oracle has not committed yet");
  return TableFunction(2, {value(ItemSet{}), value(ItemSet{0}), value(ItemSet{1}), value(ItemSet{0, 1})});
}

HardnessResult run_hardness(OnlineAllocator& alg, double big_m) {
  if (!alg.deterministic()) throw PreconditionError("hardness applies to deterministic allocators only");
  auto oracle = std::make_shared<AdaptiveOracle>(big_m);
  WelfareInstance instance;
  instance.items = 2;
  instance.bidders.emplace_back(oracle);

  GuardedInstanceView view(instance);
  Allocation state(1);
  view.arrive(0);
  const Assignment first = alg.decide(view, state, 0);
  if (first) state.sets[*first].insert(0);
  oracle->commit(first.has_value());

  view.arrive(1);
  const Assignment second = alg.decide(view, state, 1);
  if (second) state.sets[*second].insert(1);

  HardnessResult r;
  r.v1_assigned = first.has_value();
  r.committed_table = oracle->table();
  r.alg_value = oracle->value(state.sets[0]);
  const auto& v = r.committed_table.values();
  r.opt_value = *std::max_element(v.begin(), v.end());
  r.ratio = r.alg_value / r.opt_value;
  return r;
}

}  // namespace swalloc
