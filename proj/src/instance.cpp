#include "swalloc/instance.hpp"

#include "swalloc/errors.hpp"

namespace swalloc {

void WelfareInstance::reset_queries() {
  for (auto& b : bidders) b.reset_queries();
}

std::uint64_t WelfareInstance::total_queries() const {
  std::uint64_t total = 0;
  for (const auto& b : bidders) total += b.queries();
  return total;
}

void validate(const WelfareInstance& instance) {
  for (std::size_t j = 0; j < instance.bidders.size(); ++j) {
    if (instance.bidders[j].ground_size() != instance.items) {
      throw DomainError("bidder " + std::to_string(j + 1) + " is defined over " +
                        std::to_string(instance.bidders[j].ground_size()) + " items, expected " +
                        std::to_string(instance.items));
    }
  }
}

ItemSet Allocation::assigned() const {
  ItemSet all;
  for (const auto& s : sets) all |= s;
  return all;
}

bool Allocation::disjoint() const {
  ItemSet seen;
  for (const auto& s : sets) {
    if (seen.intersects(s)) return false;
    seen |= s;
  }
  return true;
}

double welfare(const WelfareInstance& instance, const Allocation& allocation) {
  double total = 0;
  for (std::size_t j = 0; j < instance.bidders.size(); ++j) total += instance.bidders[j].eval(allocation.sets[j]);
  return total;
}

double welfare_uncounted(const WelfareInstance& instance, const Allocation& allocation) {
  double total = 0;
  for (std::size_t j = 0; j < instance.bidders.size(); ++j) {
    total += instance.bidders[j].function().value(allocation.sets[j]);
  }
  return total;
}

std::string to_string(const Allocation& allocation) {
  std::string out;
  for (std::size_t j = 0; j < allocation.sets.size(); ++j) {
    if (j) out += ' ';
    out += 'b' + std::to_string(j + 1) + '{';
    bool first = true;
    allocation.sets[j].for_each([&](Item i) {
      if (!first) out += ',';
      out += std::to_string(i + 1);
      first = false;
    });
    out += '}';
  }
  return out;
}

}  // namespace swalloc
