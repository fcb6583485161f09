#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "swalloc/instance.hpp"
#include "swalloc/matroid.hpp"
#include "swalloc/oracle.hpp"
#include "swalloc/random.hpp"
#include "swalloc/set_function.hpp"
#include "swalloc/stats.hpp"

namespace swalloc {

/// Enumeration budget for every brute-force oracle.
inline constexpr std::uint64_t kMaxSearchSpace = 10'000'000;

struct OptResult {
  double value = 0;
  Allocation allocation;  // welfare optimum
  ItemSet set;            // matroid optimum, or the extension for best_extension
  std::uint64_t search_space = 0;
  std::uint64_t queries = 0;
};

/// Exact welfare optimum over all (n+1)^m assignments; ties go to the
/// smallest encoding Σ_i digit_i (n+1)^i with digit 0 = unassigned.
OptResult brute_force_opt_welfare(const WelfareInstance& instance);

/// Exact max of f over independent sets; ties go to the smallest mask.
OptResult brute_force_opt_matroid(const SubmodularOracle& f, const Matroid& m);

/// O_S: the best A with S ∪ A independent, completed with dummies so that
/// |A| = k - |S|. `s` is in padded numbering and may contain dummies.
OptResult best_extension(const SubmodularOracle& f, const PaddedMatroid& m, const ItemSet& s);

/// Convenience form on an unpadded matroid (s must be real elements).
OptResult best_extension(const SubmodularOracle& f, const MatroidPtr& m, const ItemSet& s);

struct SamplingLemmaReport {
  double expected_value = 0;  // E[f(A)]
  double bound = 0;           // (1 - p) f(∅)
  double max_inclusion = 0;   // largest (estimated) Pr[u ∈ A]
  bool marginals_ok = true;   // every Pr[u ∈ A] <= p (+ 3σ when estimated)
  bool holds = false;
  bool exact = true;
  double std_error = 0;
};

/// Product distribution with the given inclusion probabilities: exact E[f(A)].
SamplingLemmaReport check_sampling_lemma(const TableFunction& f, std::span<const double> inclusion, double p);

/// Arbitrary (possibly correlated) sampler: Monte Carlo with 3σ margins.
SamplingLemmaReport check_sampling_lemma(const TableFunction& f, const std::function<ItemSet(Rng&)>& sampler,
                                         double p, std::size_t trials, std::uint64_t seed);

/// Probability distributions over final states, computed by enumerating every
/// random branch. Keys are padded element sets (RRG) or allocations.
using SetDistribution = std::map<ItemSet, double>;
using AllocationDistribution = std::map<Allocation, double>;

SetDistribution exact_smooth_rrg_partition(const SubmodularOracle& f, const PartitionStructure& parts, std::size_t T);
SetDistribution exact_smooth_rrg_matroid(const SubmodularOracle& f, const MatroidPtr& m, std::size_t T);
SetDistribution exact_original_rrg(const SubmodularOracle& f, const MatroidPtr& m);

/// deterministic_greedy over all m! equally likely orders (m <= 8).
AllocationDistribution exact_greedy_random_order(const WelfareInstance& instance);

/// E[f(real part of S)] under a distribution from the enumerators above.
double expected_value(const SubmodularOracle& f, const SetDistribution& dist, std::size_t original_size);

/// Largest absolute probability difference between two distributions.
double max_probability_gap(const SetDistribution& a, const SetDistribution& b);
double max_probability_gap(const AllocationDistribution& a, const AllocationDistribution& b);

}  // namespace swalloc
