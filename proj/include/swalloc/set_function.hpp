#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swalloc/item_set.hpp"

namespace swalloc {

/// Absolute tolerance for every comparison between function values.
inline constexpr double kValueTolerance = 1e-9;

/// Largest ground set for which explicit tables and exhaustive checks are built.
inline constexpr std::size_t kMaxTableItems = 20;

/// A set function over the ground set {0, ..., ground_size()-1}. Implementations
/// are immutable and pure; callers go through SubmodularOracle, which performs
/// range checks and query accounting.
class SetFunction {
 public:
  virtual ~SetFunction() = default;
  virtual std::size_t ground_size() const = 0;
  virtual double value(const ItemSet& s) const = 0;
  virtual std::string kind() const = 0;
};

using SetFunctionPtr = std::shared_ptr<const SetFunction>;

/// Explicit table of 2^m values indexed by subset bitmask.
class TableFunction final : public SetFunction {
 public:
  /// Unchecked: stores the table as given (values.size() must be 2^m).
  TableFunction(std::size_t m, std::vector<double> values);

  /// Rejects tables that are negative somewhere or violate diminishing returns.
  static TableFunction checked(std::size_t m, std::vector<double> values);

  std::size_t ground_size() const override { return m_; }
  double value(const ItemSet& s) const override { return values_[s.mask()]; }
  std::string kind() const override { return "table"; }

  double at(std::uint64_t mask) const { return values_[mask]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t m_;
  std::vector<double> values_;
};

/// f(S) = total weight of universe elements covered by some item of S.
class CoverageFunction final : public SetFunction {
 public:
  CoverageFunction(std::vector<double> weights, std::vector<ItemSet> covers);

  std::size_t ground_size() const override { return covers_.size(); }
  double value(const ItemSet& s) const override;
  std::string kind() const override { return "coverage"; }

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<ItemSet>& covers() const { return covers_; }

 private:
  std::vector<double> weights_;
  std::vector<ItemSet> covers_;
};

struct WeightedEdge {
  Item a;
  Item b;
  double weight;
};

/// Undirected cut function: items are vertices, f(S) = weight of edges with
/// exactly one endpoint in S.
class CutFunction final : public SetFunction {
 public:
  CutFunction(std::size_t vertices, std::vector<WeightedEdge> edges);

  std::size_t ground_size() const override { return vertices_; }
  double value(const ItemSet& s) const override;
  std::string kind() const override { return "cut"; }

  const std::vector<WeightedEdge>& edges() const { return edges_; }

 private:
  std::size_t vertices_;
  std::vector<WeightedEdge> edges_;
};

/// Coverage minus per-item prices (a soft budget). Construction verifies
/// non-negativity on every subset and therefore refuses more than
/// kMaxTableItems items.
class PricedFunction final : public SetFunction {
 public:
  PricedFunction(CoverageFunction base, std::vector<double> prices);

  std::size_t ground_size() const override { return base_.ground_size(); }
  double value(const ItemSet& s) const override;
  std::string kind() const override { return "priced"; }

  const CoverageFunction& base() const { return base_; }
  const std::vector<double>& prices() const { return prices_; }

 private:
  CoverageFunction base_;
  std::vector<double> prices_;
};

/// Additive function, expressed as a coverage function with private elements.
CoverageFunction make_modular(const std::vector<double>& weights);

/// Tabulates any set function with at most kMaxTableItems items.
TableFunction materialize(const SetFunction& f);

/// A witness of f(A+u) - f(A) < f(B+u) - f(B) with A ⊆ B, u ∉ B.
struct SubmodularityViolation {
  ItemSet a;
  ItemSet b;
  Item u;
};

struct SubmodularityReport {
  bool submodular = true;
  std::optional<SubmodularityViolation> violation;

  explicit operator bool() const { return submodular; }
};

/// Exhaustive diminishing-returns check. Uses the equivalent local form
/// f(S+v+u) - f(S+v) <= f(S+u) - f(S) + eps, reported as A = S, B = S+v.
SubmodularityReport is_submodular(const TableFunction& t, double eps = kValueTolerance);

bool is_nonnegative(const TableFunction& t);

}  // namespace swalloc
