#include "swalloc/matroid.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "swalloc/errors.hpp"

namespace swalloc {

PartitionStructure::PartitionStructure(std::size_t ground_size, std::vector<ItemSet> parts)
    : parts_(std::move(parts)), part_of_(ground_size, parts_.size()) {
  for (std::size_t j = 0; j < parts_.size(); ++j) {
    if (parts_[j].empty()) throw DomainError("part " + std::to_string(j + 1) + " is empty");
    if (parts_[j].bound() > ground_size) throw DomainError("part " + std::to_string(j + 1) + " is outside the ground set");
    parts_[j].for_each([&](Item e) {
      if (part_of_[e] != parts_.size()) throw DomainError("element " + std::to_string(e + 1) + " is in two parts");
      part_of_[e] = j;
    });
  }
  for (Item e = 0; e < ground_size; ++e) {
    if (part_of_[e] == parts_.size()) throw DomainError("element " + std::to_string(e + 1) + " is in no part");
  }
}

bool PartitionMatroid::is_independent(const ItemSet& s) const {
  if (s.bound() > ground_size()) return false;
  for (const auto& part : parts_.parts()) {
    if ((s & part).size() > 1) return false;
  }
  return true;
}

UniformMatroid::UniformMatroid(std::size_t ground_size, std::size_t rank) : n_(ground_size), rank_(rank) {
  if (rank > ground_size) throw DomainError("uniform matroid rank exceeds ground set size");
}

bool UniformMatroid::is_independent(const ItemSet& s) const {
  return s.bound() <= n_ && s.size() <= rank_;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

GraphicMatroid::GraphicMatroid(std::size_t vertices, std::vector<std::pair<std::size_t, std::size_t>> edges)
    : vertices_(vertices), edges_(std::move(edges)) {
  DisjointSets ds(vertices_);
  for (const auto& [a, b] : edges_) {
    if (a >= vertices_ || b >= vertices_) throw DomainError("graphic matroid edge endpoint out of range");
    if (ds.unite(a, b)) ++rank_;
  }
}

bool GraphicMatroid::is_independent(const ItemSet& s) const {
  if (s.bound() > edges_.size()) return false;
  DisjointSets ds(vertices_);
  bool acyclic = true;
  s.for_each([&](Item e) {
    if (acyclic && !ds.unite(edges_[e].first, edges_[e].second)) acyclic = false;
  });
  return acyclic;
}

TableMatroid::TableMatroid(std::size_t ground_size, const std::vector<ItemSet>& independent)
    : n_(ground_size) {
  if (n_ > kMaxGround) throw CapacityError("table matroids are limited to 16 elements");
  const std::uint64_t subsets = std::uint64_t{1} << n_;
  independent_.assign(subsets, false);
  independent_[0] = true;
  for (const auto& s : independent) {
    if (s.bound() > n_) throw DomainError("independent set references an element outside the ground set");
    independent_[s.mask()] = true;
  }
  // Downward closure: X - e < X, so a single descending sweep suffices.
  for (std::uint64_t x = subsets; x-- > 1;) {
    if (!independent_[x]) continue;
    for (std::uint64_t w = x; w != 0; w &= w - 1) independent_[x & ~(w & -w)] = true;
  }
  std::vector<std::uint8_t> rank(subsets, 0);
  for (std::uint64_t x = 1; x < subsets; ++x) {
    if (independent_[x]) {
      rank[x] = static_cast<std::uint8_t>(std::popcount(x));
    } else {
      for (std::uint64_t w = x; w != 0; w &= w - 1) rank[x] = std::max(rank[x], rank[x & ~(w & -w)]);
    }
  }
  rank_ = rank[subsets - 1];
  // Augmentation holds iff no independent I is maximal inside a set of larger rank;
  // the largest set in which I is maximal is I together with every e where I+e is dependent.
  for (std::uint64_t i = 0; i < subsets; ++i) {
    if (!independent_[i]) continue;
    std::uint64_t span = i;
    for (Item e = 0; e < n_; ++e) {
      const std::uint64_t eb = std::uint64_t{1} << e;
      if (!(i & eb) && !independent_[i | eb]) span |= eb;
    }
    if (rank[span] != std::popcount(i)) throw DomainError("independent-set family violates the exchange axiom");
  }
}

bool TableMatroid::is_independent(const ItemSet& s) const {
  if (s.bound() > n_) return false;
  return independent_[s.mask()];
}

std::vector<ItemSet> TableMatroid::bases() const {
  std::vector<ItemSet> out;
  for (std::uint64_t x = 0; x < independent_.size(); ++x) {
    if (independent_[x] && static_cast<std::size_t>(std::popcount(x)) == rank_) out.push_back(ItemSet::from_mask(x));
  }
  return out;
}

ContractedMatroid::ContractedMatroid(MatroidPtr base, ItemSet contracted)
    : base_(std::move(base)), contracted_(std::move(contracted)) {
  if (!base_->is_independent(contracted_)) throw PreconditionError("cannot contract by a dependent set");
}

bool ContractedMatroid::is_independent(const ItemSet& s) const {
  if (s.intersects(contracted_)) return false;
  return base_->is_independent(s | contracted_);
}

bool MirroredMatroid::is_independent(const ItemSet& s) const {
  const std::size_t n = base_->ground_size();
  if (s.bound() > 2 * n) return false;
  ItemSet projected;
  bool ok = true;
  s.for_each([&](Item e) {
    const Item u = e < n ? e : e - n;
    if (projected.contains(u)) ok = false;
    projected.insert(u);
  });
  return ok && base_->is_independent(projected);
}

MatroidPtr contract(const MatroidPtr& m, const ItemSet& s) {
  return std::make_shared<const ContractedMatroid>(m, s);
}

ItemSet ground_set(const Matroid& m) { return ItemSet::range(m.ground_size()); }

ItemSet greedy_max_base(const Matroid& m, std::span<const double> weights) {
  if (weights.size() != m.ground_size()) throw PreconditionError("one weight per ground element is required");
  std::vector<Item> order(weights.size());
  std::iota(order.begin(), order.end(), Item{0});
  std::stable_sort(order.begin(), order.end(), [&](Item a, Item b) { return weights[a] > weights[b]; });
  ItemSet base;
  const std::size_t target = m.rank();
  for (Item e : order) {
    if (base.size() == target) break;
    ItemSet candidate = base.with(e);
    if (m.is_independent(candidate)) base = std::move(candidate);
  }
  return base;
}

std::size_t rank_of(const Matroid& m, const ItemSet& s) {
  ItemSet basis;
  s.for_each([&](Item e) {
    ItemSet candidate = basis.with(e);
    if (m.is_independent(candidate)) basis = std::move(candidate);
  });
  return basis.size();
}

PaddedMatroid pad(const MatroidPtr& m) {
  const std::size_t n = m->ground_size();
  if (const auto* partition = dynamic_cast<const PartitionMatroid*>(m.get())) {
    const auto& structure = partition->structure();
    std::vector<ItemSet> parts = structure.parts();
    const std::size_t k = parts.size();
    for (std::size_t j = 0; j < k; ++j) parts[j].insert(n + j);
    auto padded = std::make_shared<const PartitionMatroid>(PartitionStructure(n + k, std::move(parts)));
    return {padded, n};
  }
  return {std::make_shared<const MirroredMatroid>(m), n};
}

PaddedFunction::PaddedFunction(SetFunctionPtr base, std::size_t padded_size)
    : base_(std::move(base)), padded_size_(padded_size), real_(ItemSet::range(base_->ground_size())) {
  if (padded_size_ < base_->ground_size()) throw DomainError("padded ground set is smaller than the original");
}

double PaddedFunction::value(const ItemSet& s) const { return base_->value(s & real_); }

}  // namespace swalloc
