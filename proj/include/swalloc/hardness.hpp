#pragma once

#include <memory>
#include <optional>
#include <string>

#include "swalloc/adversarial.hpp"
#include "swalloc/set_function.hpp"

namespace swalloc {

/// An online allocator deciding one arriving item at a time.
class OnlineAllocator {
 public:
  virtual ~OnlineAllocator() = default;
  virtual std::string name() const = 0;
  virtual bool deterministic() const = 0;
  /// `item` has just arrived in `view`; `state` is the allocation so far.
  virtual Assignment decide(const GuardedInstanceView& view, const Allocation& state, Item item) = 0;
};

/// Highest marginal bidder if that marginal is >= 0.
class GreedyAllocator final : public OnlineAllocator {
 public:
  std::string name() const override { return "greedy"; }
  bool deterministic() const override { return true; }
  Assignment decide(const GuardedInstanceView& view, const Allocation& state, Item item) override;
};

class DiscardAllocator final : public OnlineAllocator {
 public:
  std::string name() const override { return "discard"; }
  bool deterministic() const override { return true; }
  Assignment decide(const GuardedInstanceView&, const Allocation&, Item) override { return std::nullopt; }
};

/// Every item to bidder 1, whatever its marginal.
class FirstBidderAllocator final : public OnlineAllocator {
 public:
  std::string name() const override { return "first"; }
  bool deterministic() const override { return true; }
  Assignment decide(const GuardedInstanceView&, const Allocation&, Item) override { return Bidder{0}; }
};

/// The dyadic randomised allocator, exposed through the same interface.
class RandomizedAllocator final : public OnlineAllocator {
 public:
  explicit RandomizedAllocator(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "adv"; }
  bool deterministic() const override { return false; }
  Assignment decide(const GuardedInstanceView& view, const Allocation& state, Item item) override;

 private:
  Rng rng_;
};

/// Two-item, one-bidder utility revealed adaptively. Before commit() only
/// f(∅) = 0 and f({v1}) = 1 are defined; any query containing v2 throws
/// ModelViolation. commit(false) extends with f({v2}) = 0, f({v1,v2}) = 1;
/// commit(true) with f({v2}) = M, f({v1,v2}) = 0.
class AdaptiveOracle final : public SetFunction {
 public:
  explicit AdaptiveOracle(double big_m);

  std::size_t ground_size() const override { return 2; }
  double value(const ItemSet& s) const override;
  std::string kind() const override { return "adaptive"; }

  void commit(bool v1_assigned);
  bool committed() const { return committed_.has_value(); }
  /// Full table after commit().
  TableFunction table() const;

 private:
  double big_m_;
  std::optional<bool> committed_;
};

struct HardnessResult {
  bool v1_assigned = false;
  double alg_value = 0;
  double opt_value = 0;
  double ratio = 0;
  TableFunction committed_table{0, {0.0}};
};

/// Plays the adaptive two-item instance against a deterministic allocator.
/// Throws PreconditionError for randomised allocators, DomainError for M <= 0.
HardnessResult run_hardness(OnlineAllocator& alg, double big_m);

}  // namespace swalloc
