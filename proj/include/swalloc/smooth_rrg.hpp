#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "swalloc/adversarial.hpp"
#include "swalloc/instance.hpp"
#include "swalloc/matroid.hpp"
#include "swalloc/oracle.hpp"
#include "swalloc/random.hpp"

namespace swalloc {

/// a = (3 - √5)/2, b = (3 + √5)/2 and the stopping point x* = ln(b/a)/√5.
struct BoundConstants {
  double a;
  double b;
  double x_star;
};

BoundConstants bound_constants();

/// (e^{-x* a} - e^{-x* b}) / √5 ≈ 0.274933, the k → ∞ guarantee.
double limit_ratio();

/// Guarantee of the smooth RRG at k parts (a guarantee for every k >= 3).
inline constexpr double kRandomOrderRatio = 0.27493;
inline constexpr double kAdversarialRatio = 0.25;

/// ⌈x* k⌉; k >= 1.
std::size_t default_T(std::size_t k);

struct ClosedFormBounds {
  double bound_set;    // lower bound on E[f(S_i)]
  double bound_union;  // lower bound on E[f(O_{S_i} ∪ S_i)]
};

/// Closed-form solution of the joint recursion after i iterations; k >= 3.
ClosedFormBounds closed_form_bounds(std::size_t k, std::size_t i, double opt_value);

/// ((1 - a/k)^{x k} - (1 - b/k)^{x k}) / √5 for a real exponent x k.
double bound_at_exponent(std::size_t k, double exponent);

/// One iteration of a smooth or original RRG run. Elements are numbered in
/// the padded ground set (dummies are >= the original ground size).
struct RrgStep {
  std::size_t iteration = 0;  // 1-based
  std::optional<Item> added;  // nullopt: the iteration changed nothing
  double value = 0;           // f(S_i)
  std::size_t slots_used = 0;  // |S_i| including dummies
};

struct RrgResult {
  ItemSet set;         // real elements only
  ItemSet padded_set;  // including dummies taken
  double value = 0;
  std::size_t slots_used = 0;
  std::vector<RrgStep> trace;
};

/// State of the partition-matroid smooth RRG. The dummy of part j is element
/// ground_size + j, matching pad().
class SmoothRrgPartition {
 public:
  SmoothRrgPartition(const SubmodularOracle& f, const PartitionStructure& parts);

  std::size_t part_count() const { return parts_->part_count(); }
  bool consumed(std::size_t part) const { return consumed_[part]; }

  /// The element this part would contribute now: the lowest-index argmax of
  /// the marginal in the part, or the part's dummy when that marginal is negative.
  Item candidate(std::size_t part) const;

  /// Applies a draw of `part`; no-op when the part is already intersected.
  void apply(std::size_t part);

  /// One iteration: a uniformly random part out of all k.
  void step(Rng& rng);

  const ItemSet& set() const { return set_; }
  const ItemSet& padded_set() const { return padded_; }
  double value() const { return value_; }
  std::size_t slots_used() const { return padded_.size(); }
  const std::vector<RrgStep>& trace() const { return trace_; }

 private:
  const SubmodularOracle* f_;
  const PartitionStructure* parts_;
  std::vector<bool> consumed_;
  ItemSet set_;
  ItemSet padded_;
  double value_;
  std::vector<RrgStep> trace_;
};

RrgResult smooth_rrg_partition(const SubmodularOracle& f, const PartitionStructure& parts, std::size_t T, Rng& rng);
RrgResult smooth_rrg_partition(const SubmodularOracle& f, const PartitionStructure& parts, std::size_t T,
                               std::uint64_t seed);

/// State of the general-matroid smooth RRG over the padded matroid.
class SmoothRrgMatroid {
 public:
  SmoothRrgMatroid(const SubmodularOracle& f, const MatroidPtr& matroid);

  std::size_t rank() const { return padded_.rank(); }
  const PaddedMatroid& padded() const { return padded_; }

  /// M_i: a max-marginal-weight base of the contraction by the current set,
  /// in increasing element order. Size is rank() - slots_used().
  std::vector<Item> candidates() const;

  /// Adds `element` (from candidates()) or, for nullopt, leaves S unchanged.
  void apply(std::optional<Item> element);

  /// One iteration: with probability 1 - |S|/k a uniform element of M_i.
  void step(Rng& rng);

  /// Original RRG iteration: a uniform element of M_i, unconditionally.
  void step_original(Rng& rng);

  const ItemSet& padded_set() const { return padded_set_; }
  ItemSet set() const { return padded_.real_part(padded_set_); }
  double value() const { return value_; }
  std::size_t slots_used() const { return padded_set_.size(); }
  const std::vector<RrgStep>& trace() const { return trace_; }

 private:
  const SubmodularOracle* f_;
  PaddedMatroid padded_;
  ItemSet padded_set_;
  double value_;
  std::vector<RrgStep> trace_;
};

RrgResult smooth_rrg_matroid(const SubmodularOracle& f, const MatroidPtr& matroid, std::size_t T, Rng& rng);
RrgResult smooth_rrg_matroid(const SubmodularOracle& f, const MatroidPtr& matroid, std::size_t T,
                             std::uint64_t seed);

/// Original residual random greedy: k iterations, each adding a uniform
/// element of the current max-weight residual base.
RrgResult original_rrg(const SubmodularOracle& f, const MatroidPtr& matroid, Rng& rng);
RrgResult original_rrg(const SubmodularOracle& f, const MatroidPtr& matroid, std::uint64_t seed);

/// Each arriving item goes to the bidder with the highest marginal (lowest
/// index on ties) when that marginal is >= 0; otherwise it is discarded.
WelfareRun deterministic_greedy(const WelfareInstance& instance, std::span<const std::size_t> order);

/// deterministic_greedy on a uniformly random arrival order.
WelfareRun greedy_random_order(const WelfareInstance& instance, Rng& rng);

/// Geometric coupling between smooth and original RRG progress.
struct CouplingSample {
  std::vector<std::uint64_t> z;             // Z_0..Z_{k-1}; Z_i ~ Geom(1 - i/k)
  std::vector<std::uint64_t> level_starts;  // T_ℓ = Z_0 + ... + Z_{ℓ-1}, ℓ = 0..k (saturating)
  std::size_t levels_reached = 0;           // ℓ_T = min{i : Z_0 + ... + Z_i > T}
};

CouplingSample sample_coupling(std::size_t k, std::uint64_t T, Rng& rng);
CouplingSample sample_coupling(std::size_t k, std::uint64_t T, std::uint64_t seed);

}  // namespace swalloc
