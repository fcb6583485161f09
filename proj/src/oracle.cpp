#include "swalloc/oracle.hpp"

#include <string>

#include "swalloc/errors.hpp"

namespace swalloc {

SubmodularOracle::SubmodularOracle(SetFunctionPtr f) : f_(std::move(f)) {
  if (!f_) throw PreconditionError("oracle requires a set function");
}

SubmodularOracle::SubmodularOracle(const SubmodularOracle& other)
    : f_(other.f_), queries_(other.queries()) {}

SubmodularOracle& SubmodularOracle::operator=(const SubmodularOracle& other) {
  f_ = other.f_;
  queries_.store(other.queries(), std::memory_order_relaxed);
  return *this;
}

double SubmodularOracle::eval(const ItemSet& s) const {
  if (s.bound() > f_->ground_size()) {
    throw DomainError("item " + std::to_string(s.bound()) + " is outside the ground set of size " +
                      std::to_string(f_->ground_size()));
  }
  queries_.fetch_add(1, std::memory_order_relaxed);
  return f_->value(s);
}

double SubmodularOracle::marginal(Item item, const ItemSet& s) const {
  if (s.contains(item)) throw PreconditionError("marginal of an item already in the set");
  return eval(s.with(item)) - eval(s);
}

double SubmodularOracle::marginal(Item item, const ItemSet& s, double value_of_s) const {
  if (s.contains(item)) throw PreconditionError("marginal of an item already in the set");
  return eval(s.with(item)) - value_of_s;
}

}  // namespace swalloc
