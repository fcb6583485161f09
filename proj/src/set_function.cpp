#include "swalloc/set_function.hpp"

#include <cmath>

#include "swalloc/errors.hpp"

namespace swalloc {

namespace {

void require_table_size(std::size_t m) {
  if (m > kMaxTableItems) {
    throw CapacityError("table functions are limited to " + std::to_string(kMaxTableItems) +
                        " items, got " + std::to_string(m));
  }
}

}  // namespace

TableFunction::TableFunction(std::size_t m, std::vector<double> values)
    : m_(m), values_(std::move(values)) {
  require_table_size(m);
  if (values_.size() != (std::size_t{1} << m)) {
    throw DomainError("table for " + std::to_string(m) + " items needs " +
                      std::to_string(std::size_t{1} << m) + " values, got " +
                      std::to_string(values_.size()));
  }
}

TableFunction TableFunction::checked(std::size_t m, std::vector<double> values) {
  TableFunction t(m, std::move(values));
  if (!is_nonnegative(t)) throw DomainError("table function takes a negative value");
  if (auto report = is_submodular(t); !report) {
    const auto& v = *report.violation;
    throw DomainError("table function is not submodular (item " + std::to_string(v.u + 1) + ")");
  }
  return t;
}

CoverageFunction::CoverageFunction(std::vector<double> weights, std::vector<ItemSet> covers)
    : weights_(std::move(weights)), covers_(std::move(covers)) {
  for (double w : weights_) {
    if (!(w >= 0)) throw DomainError("coverage weights must be non-negative");
  }
  for (const auto& c : covers_) {
    if (c.bound() > weights_.size()) throw DomainError("coverage set references unknown element");
  }
}

double CoverageFunction::value(const ItemSet& s) const {
  ItemSet covered;
  s.for_each([&](Item i) { covered |= covers_[i]; });
  double total = 0;
  covered.for_each([&](Item e) { total += weights_[e]; });
  return total;
}

CutFunction::CutFunction(std::size_t vertices, std::vector<WeightedEdge> edges)
    : vertices_(vertices), edges_(std::move(edges)) {
  for (const auto& e : edges_) {
    if (e.a >= vertices_ || e.b >= vertices_) throw DomainError("cut edge endpoint out of range");
    if (!(e.weight >= 0)) throw DomainError("cut edge weights must be non-negative");
  }
}

double CutFunction::value(const ItemSet& s) const {
  double total = 0;
  for (const auto& e : edges_) {
    if (s.contains(e.a) != s.contains(e.b)) total += e.weight;
  }
  return total;
}

PricedFunction::PricedFunction(CoverageFunction base, std::vector<double> prices)
    : base_(std::move(base)), prices_(std::move(prices)) {
  if (prices_.size() != base_.ground_size()) throw DomainError("one price per item is required");
  for (double p : prices_) {
    if (!(p >= 0)) throw DomainError("prices must be non-negative");
  }
  if (base_.ground_size() > kMaxTableItems) {
    throw CapacityError("priced function with " + std::to_string(base_.ground_size()) +
                        " items cannot be verified non-negative");
  }
  const std::uint64_t subsets = std::uint64_t{1} << base_.ground_size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    if (value(ItemSet::from_mask(mask)) < -kValueTolerance) {
      throw DomainError("priced function is negative on some subset");
    }
  }
}

double PricedFunction::value(const ItemSet& s) const {
  double v = base_.value(s);
  s.for_each([&](Item i) { v -= prices_[i]; });
  return v;
}

CoverageFunction make_modular(const std::vector<double>& weights) {
  std::vector<ItemSet> covers;
  covers.reserve(weights.size());
  for (Item i = 0; i < weights.size(); ++i) covers.push_back(ItemSet{i});
  return CoverageFunction(weights, std::move(covers));
}

TableFunction materialize(const SetFunction& f) {
  const std::size_t m = f.ground_size();
  require_table_size(m);
  std::vector<double> values(std::size_t{1} << m);
  for (std::uint64_t mask = 0; mask < values.size(); ++mask) values[mask] = f.value(ItemSet::from_mask(mask));
  return TableFunction(m, std::move(values));
}

SubmodularityReport is_submodular(const TableFunction& t, double eps) {
  const std::size_t m = t.ground_size();
  require_table_size(m);
  const std::uint64_t subsets = std::uint64_t{1} << m;
  for (std::uint64_t s = 0; s < subsets; ++s) {
    for (Item v = 0; v < m; ++v) {
      const std::uint64_t vb = std::uint64_t{1} << v;
      if (s & vb) continue;
      for (Item u = 0; u < m; ++u) {
        const std::uint64_t ub = std::uint64_t{1} << u;
        if (u == v || (s & ub)) continue;
        const double small_gain = t.at(s | ub) - t.at(s);
        const double large_gain = t.at(s | vb | ub) - t.at(s | vb);
        if (small_gain < large_gain - eps) {
          return {false, SubmodularityViolation{ItemSet::from_mask(s), ItemSet::from_mask(s | vb), u}};
        }
      }
    }
  }
  return {};
}

bool is_nonnegative(const TableFunction& t) {
  require_table_size(t.ground_size());
  for (double v : t.values()) {
    if (v < -kValueTolerance || std::isnan(v)) return false;
  }
  return true;
}

}  // namespace swalloc
