#pragma once

#include <atomic>
#include <cstdint>
#include <memory>

#include "swalloc/item_set.hpp"
#include "swalloc/set_function.hpp"

namespace swalloc {

/// Value-oracle access to one set function. Every eval is one query; the
/// counter is atomic so trial workers may share an oracle.
class SubmodularOracle {
 public:
  explicit SubmodularOracle(SetFunctionPtr f);

  template <typename F>
  static SubmodularOracle of(F f) {
    return SubmodularOracle(std::make_shared<const F>(std::move(f)));
  }

  SubmodularOracle(const SubmodularOracle& other);
  SubmodularOracle& operator=(const SubmodularOracle& other);

  /// Throws DomainError if s references an item outside the ground set.
  double eval(const ItemSet& s) const;

  /// f(s + item) - f(s): two queries. Throws PreconditionError if item ∈ s.
  double marginal(Item item, const ItemSet& s) const;

  /// Same, reusing a known f(s): one query.
  double marginal(Item item, const ItemSet& s, double value_of_s) const;

  std::size_t ground_size() const { return f_->ground_size(); }
  std::uint64_t queries() const { return queries_.load(std::memory_order_relaxed); }
  void reset_queries() { queries_.store(0, std::memory_order_relaxed); }

  const SetFunction& function() const { return *f_; }
  const SetFunctionPtr& function_ptr() const { return f_; }

 private:
  SetFunctionPtr f_;
  mutable std::atomic<std::uint64_t> queries_{0};
};

}  // namespace swalloc
