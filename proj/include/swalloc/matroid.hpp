#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "swalloc/item_set.hpp"
#include "swalloc/set_function.hpp"

namespace swalloc {

/// Independence oracle over elements {0, ..., ground_size()-1}. Immutable.
class Matroid {
 public:
  virtual ~Matroid() = default;
  virtual std::size_t ground_size() const = 0;
  virtual bool is_independent(const ItemSet& s) const = 0;
  /// Size of every base.
  virtual std::size_t rank() const = 0;
  virtual std::string kind() const = 0;
};

using MatroidPtr = std::shared_ptr<const Matroid>;

/// Disjoint non-empty parts covering {0, ..., ground_size-1}.
class PartitionStructure {
 public:
  PartitionStructure(std::size_t ground_size, std::vector<ItemSet> parts);

  std::size_t ground_size() const { return part_of_.size(); }
  std::size_t part_count() const { return parts_.size(); }
  const std::vector<ItemSet>& parts() const { return parts_; }
  const ItemSet& part(std::size_t j) const { return parts_[j]; }
  std::size_t part_of(Item e) const { return part_of_[e]; }

 private:
  std::vector<ItemSet> parts_;
  std::vector<std::size_t> part_of_;
};

class PartitionMatroid final : public Matroid {
 public:
  explicit PartitionMatroid(PartitionStructure parts) : parts_(std::move(parts)) {}

  std::size_t ground_size() const override { return parts_.ground_size(); }
  bool is_independent(const ItemSet& s) const override;
  std::size_t rank() const override { return parts_.part_count(); }
  std::string kind() const override { return "partition"; }

  const PartitionStructure& structure() const { return parts_; }

 private:
  PartitionStructure parts_;
};

class UniformMatroid final : public Matroid {
 public:
  UniformMatroid(std::size_t ground_size, std::size_t rank);

  std::size_t ground_size() const override { return n_; }
  bool is_independent(const ItemSet& s) const override;
  std::size_t rank() const override { return rank_; }
  std::string kind() const override { return "uniform"; }

 private:
  std::size_t n_;
  std::size_t rank_;
};

/// Cycle matroid of a multigraph; element e is edge e. Independent = acyclic.
class GraphicMatroid final : public Matroid {
 public:
  GraphicMatroid(std::size_t vertices, std::vector<std::pair<std::size_t, std::size_t>> edges);

  std::size_t ground_size() const override { return edges_.size(); }
  bool is_independent(const ItemSet& s) const override;
  std::size_t rank() const override { return rank_; }
  std::string kind() const override { return "graphic"; }

 private:
  std::size_t vertices_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::size_t rank_ = 0;
};

/// Matroid given by a list of independent sets (closed downward on
/// construction, so listing the bases suffices). Ground set at most 16;
/// construction rejects families that violate the exchange axiom.
class TableMatroid final : public Matroid {
 public:
  static constexpr std::size_t kMaxGround = 16;

  TableMatroid(std::size_t ground_size, const std::vector<ItemSet>& independent);

  std::size_t ground_size() const override { return n_; }
  bool is_independent(const ItemSet& s) const override;
  std::size_t rank() const override { return rank_; }
  std::string kind() const override { return "table"; }

  /// Maximal independent sets in mask order.
  std::vector<ItemSet> bases() const;

 private:
  std::size_t n_;
  std::vector<bool> independent_;  // indexed by mask
  std::size_t rank_ = 0;
};

/// M/S: S' independent iff S' ∩ S = ∅ and S' ∪ S independent in M.
/// Element indices are those of M; members of S are never independent.
class ContractedMatroid final : public Matroid {
 public:
  ContractedMatroid(MatroidPtr base, ItemSet contracted);

  std::size_t ground_size() const override { return base_->ground_size(); }
  bool is_independent(const ItemSet& s) const override;
  std::size_t rank() const override { return base_->rank() - contracted_.size(); }
  std::string kind() const override { return "contracted"; }

  const ItemSet& contracted() const { return contracted_; }

 private:
  MatroidPtr base_;
  ItemSet contracted_;
};

/// The mirrored extension N ∪ N' used to pad a general matroid: element u' =
/// u + n is a parallel copy of u, at most one of {u, u'} may be chosen.
class MirroredMatroid final : public Matroid {
 public:
  explicit MirroredMatroid(MatroidPtr base) : base_(std::move(base)) {}

  std::size_t ground_size() const override { return 2 * base_->ground_size(); }
  bool is_independent(const ItemSet& s) const override;
  std::size_t rank() const override { return base_->rank(); }
  std::string kind() const override { return "mirrored"; }

 private:
  MatroidPtr base_;
};

/// Throws PreconditionError when s is dependent.
MatroidPtr contract(const MatroidPtr& m, const ItemSet& s);

/// Every element of the ground set.
ItemSet ground_set(const Matroid& m);

/// Matroid greedy: elements by descending weight (lowest index on ties),
/// each kept if it preserves independence. Returns a max-weight base.
ItemSet greedy_max_base(const Matroid& m, std::span<const double> weights);

/// Rank of an arbitrary subset, by greedy.
std::size_t rank_of(const Matroid& m, const ItemSet& s);

/// Ground set padded with zero-valued dummy elements so that every optimum can
/// be completed to a base. Elements [0, original_size) are the original ones.
struct PaddedMatroid {
  MatroidPtr matroid;
  std::size_t original_size = 0;

  bool is_dummy(Item e) const { return e >= original_size; }
  ItemSet real_part(const ItemSet& s) const { return s & ItemSet::range(original_size); }
  std::size_t rank() const { return matroid->rank(); }
};

/// Partition matroids get one dummy per part (dummy of part j = original_size + j);
/// every other matroid gets the mirrored copy.
PaddedMatroid pad(const MatroidPtr& m);

/// f'(S) = f(S ∩ [0, original_size)) on the padded ground set.
class PaddedFunction final : public SetFunction {
 public:
  PaddedFunction(SetFunctionPtr base, std::size_t padded_size);

  std::size_t ground_size() const override { return padded_size_; }
  double value(const ItemSet& s) const override;
  std::string kind() const override { return "padded-" + base_->kind(); }

 private:
  SetFunctionPtr base_;
  std::size_t padded_size_;
  ItemSet real_;
};

}  // namespace swalloc
