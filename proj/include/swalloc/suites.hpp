#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "swalloc/instance_io.hpp"

namespace swalloc {

/// One checked quantity. `passed` means value >= bound unless stated otherwise
/// by the suite.
struct CheckRow {
  std::string suite;
  std::string check;
  double value = 0;
  double bound = 0;
  bool passed = true;
};

struct SuiteReport {
  std::vector<CheckRow> rows;
  bool passed() const;
  std::size_t failures() const;
  void add(const std::string& suite, const std::string& check, double value, double bound, bool passed);
};

void write_csv(std::ostream& out, const SuiteReport& report);  // suite,check,value,bound,passed

/// Every bidder of every instance (tabulated) is non-negative and submodular;
/// so are both committed hardness tables.
SuiteReport suite_submodularity(const std::vector<ProblemInstance>& instances);

/// Random validated tables (m in 1..6) against product distributions with
/// p in {0, 1/4, 1/2, 1}, checked exactly. When instances are given, also the
/// correlated distribution of a bidder's set under the dyadic allocator
/// (p = 1/2), by Monte Carlo.
SuiteReport suite_sampling_lemma(std::size_t functions, std::uint64_t seed,
                                 const std::vector<ProblemInstance>& instances = {}, std::size_t trials = 20'000);

/// E[K^i] <= 2 E[P^i] at every iteration, exactly, with the brute-force
/// optimum as reference and the identity arrival order.
SuiteReport suite_lemma_kp(const std::vector<ProblemInstance>& instances);

/// One-step and closed-form recursions for the smooth RRG on partition-matroid
/// instances, from Monte Carlo trajectories with exact best extensions.
SuiteReport suite_recursions(const std::vector<ProblemInstance>& instances, std::size_t trials, std::uint64_t seed);

/// Per-element selection frequency of one smooth RRG iteration on a rank-4
/// graphic matroid, from several reachable states; each within 4σ of 1/k.
SuiteReport suite_obs3(std::size_t iterations, std::uint64_t seed);

/// Parts intersected after T smooth RRG iterations versus ℓ_T from the
/// geometric coupling (two-sample chi-squared, p > 0.001), plus exact equality
/// of original RRG and random-order greedy on the given welfare instances (m <= 4).
SuiteReport suite_coupling(const ProblemInstance& partition_instance, std::size_t T, std::size_t samples,
                           std::uint64_t seed, const std::vector<ProblemInstance>& welfare_instances);

/// Two-sample chi-squared homogeneity test on count vectors; returns the p-value.
double chi_squared_two_sample(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);

/// Constants, default_T, closed-form base cases and the grid over k = 3..1000.
SuiteReport suite_bounds();

}  // namespace swalloc
