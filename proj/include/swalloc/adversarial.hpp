#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "swalloc/instance.hpp"
#include "swalloc/random.hpp"
#include "swalloc/stats.hpp"

namespace swalloc {

/// Read access to a welfare instance restricted to the items that have
/// arrived so far. Any query naming a future item throws GuardViolation and
/// is counted in violations().
class GuardedInstanceView {
 public:
  explicit GuardedInstanceView(const WelfareInstance& instance);

  void arrive(Item item);
  const ItemSet& arrived() const { return arrived_; }

  double eval(Bidder bidder, const ItemSet& s) const;

  std::size_t bidder_count() const { return instance_->bidder_count(); }
  std::size_t item_count() const { return instance_->items; }
  std::uint64_t violations() const { return *violations_; }
  const WelfareInstance& instance() const { return *instance_; }

 private:
  const WelfareInstance* instance_;
  ItemSet arrived_;
  std::shared_ptr<std::uint64_t> violations_;
};

struct RankedBidder {
  Bidder bidder;
  double marginal;
  double extended_value;  // f_j(S_j ∪ {item})
};

/// Bidders by non-increasing marginal for one item (lowest index first on
/// ties); `nonnegative` is how many leading entries have marginal >= 0.
struct BidderRanking {
  std::vector<RankedBidder> order;
  std::size_t nonnegative = 0;
};

/// Builds a ranking from raw per-bidder marginals (bidder j = index j).
BidderRanking rank_marginals(std::span<const double> marginals);

/// Ranks bidders for the newest arrived item: 2n guarded queries.
BidderRanking rank_bidders(const GuardedInstanceView& view, const Allocation& state, Item item);

/// Same, reusing the known values f_j(S_j): n guarded queries.
BidderRanking rank_bidders(const GuardedInstanceView& view, const Allocation& state,
                           std::span<const double> current_values, Item item);

/// nullopt means the item is discarded.
using Assignment = std::optional<Bidder>;

/// Top-ranked bidder r (1-based) with probability 2^-r for r <= ℓ; discard
/// with the remaining 2^-ℓ. One 64-bit draw, probabilities exact.
Assignment sample_assignment(const BidderRanking& ranking, Rng& rng);

/// Every outcome of sample_assignment with its exact dyadic probability.
std::vector<std::pair<Assignment, double>> assignment_distribution(const BidderRanking& ranking);

/// Per-iteration analysis quantities for a supplied reference optimum O.
struct IterationDiagnostics {
  std::size_t iteration = 0;  // 1-based
  Item item = 0;
  Assignment assigned;
  double profit = 0;        // f(S^i) - f(S^{i-1})
  double hybrid_delta = 0;  // f(H^i) - f(H^{i-1})
  std::vector<ItemSet> hybrid;  // H^i_j = (O_j ∩ arrived) ∪ S^i_j
};

/// Online state of the randomised allocator: current allocation plus cached
/// per-bidder values. Copyable, so exhaustive enumeration can branch on it.
class AdversarialAllocator {
 public:
  explicit AdversarialAllocator(const WelfareInstance& instance);

  /// Item arrives; returns the ranking of bidders for it.
  BidderRanking observe(Item item);
  /// Applies a decision for the item last observed.
  void commit(const BidderRanking& ranking, Assignment choice);

  const Allocation& allocation() const { return allocation_; }
  const GuardedInstanceView& view() const { return view_; }
  double welfare() const;

 private:
  GuardedInstanceView view_;
  Allocation allocation_;
  std::vector<double> values_;
  std::optional<Item> pending_;
};

struct AdversarialRun {
  Allocation allocation;
  double welfare = 0;
  std::vector<IterationDiagnostics> diagnostics;  // filled iff a reference was given
};

/// Throws PreconditionError unless order is a permutation of the instance's items.
void require_permutation(const WelfareInstance& instance, std::span<const std::size_t> order);

/// One run of the randomised allocator on items arriving in `order`.
AdversarialRun run_adversarial(const WelfareInstance& instance, std::span<const std::size_t> order, Rng& rng,
                               const Allocation* reference = nullptr);
AdversarialRun run_adversarial(const WelfareInstance& instance, std::span<const std::size_t> order,
                               std::uint64_t seed, const Allocation* reference = nullptr);

/// Exact expectations over all random branches (at most ℓ+1 per item).
struct ExactAdversarial {
  double expected_welfare = 0;
  std::size_t branches = 0;
  std::vector<double> expected_profit;        // per iteration, only with a reference
  std::vector<double> expected_hybrid_delta;  // per iteration, only with a reference
  /// Pr[item i ends with bidder j], indexed [item][bidder].
  std::vector<std::vector<double>> assignment_probability;
  /// Final allocations with their probabilities (merged, sorted).
  std::vector<std::pair<Allocation, double>> distribution;
};

ExactAdversarial exact_adversarial(const WelfareInstance& instance, std::span<const std::size_t> order,
                                   const Allocation* reference = nullptr);

/// Adversary's best fixed order: the minimum exact expectation over `orders`.
struct WorstOrder {
  std::vector<std::size_t> order;
  double expected_welfare = 0;
  std::size_t orders_checked = 0;
};

WorstOrder worst_order(const WelfareInstance& instance, const std::vector<std::vector<std::size_t>>& orders);

/// All m! orders; m <= 8.
std::vector<std::vector<std::size_t>> all_orders(std::size_t items);

struct WelfareRun {
  Allocation allocation;
  double welfare = 0;
};

/// Single-bidder baseline: keeps each arriving item independently with
/// probability 1/2. Requires exactly one bidder.
WelfareRun run_random_half_baseline(const WelfareInstance& instance, std::span<const std::size_t> order, Rng& rng);

/// One row per iteration of the E[K^i] <= 2 E[P^i] check.
struct KvsPRow {
  std::size_t iteration = 0;
  double mean_hybrid_delta = 0;
  double mean_profit = 0;
  double std_error = 0;  // of the paired difference K^i - 2 P^i; 0 in exact mode
  bool holds = false;
};

/// Monte Carlo: holds iff mean K^i <= 2 mean P^i + 3 std_error.
std::vector<KvsPRow> check_lemma_K_vs_P(const WelfareInstance& instance, std::span<const std::size_t> order,
                                        const Allocation& reference, std::size_t trials, std::uint64_t seed);

/// Exact expectations: holds iff E[K^i] <= 2 E[P^i] + kValueTolerance.
std::vector<KvsPRow> check_lemma_K_vs_P_exact(const WelfareInstance& instance, std::span<const std::size_t> order,
                                              const Allocation& reference);

}  // namespace swalloc
