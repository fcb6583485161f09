#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "swalloc/random.hpp"

namespace swalloc {

/// Worker threads for trial loops: SWALLOC_THREADS if set and positive,
/// otherwise the machine's hardware concurrency.
std::size_t worker_count();

/// Summary of per-trial outcomes. The raw values are kept so the summary can
/// be recomputed and audited.
struct TrialStats {
  std::size_t trials = 0;
  double mean = 0;
  double sd = 0;      // sample standard deviation (n - 1 denominator)
  double std_error = 0;  // sd / sqrt(trials)
  std::vector<double> values;

  static TrialStats from_values(std::vector<double> values);
};

/// Trials are grouped in fixed blocks; block b draws from one generator seeded
/// from (master_seed, b), so seeding cost is paid once per block.
inline constexpr std::size_t kTrialBlock = 256;

/// Runs fn(t, rng) for t in [0, trials) and returns the results in trial
/// order. Trial t continues the stream of block t / kTrialBlock, so the output
/// depends on the seed and the trial index only, never on the worker count.
template <typename T, typename Fn>
std::vector<T> run_trials(std::size_t trials, std::uint64_t master_seed, Fn&& fn,
                          std::size_t workers = worker_count()) {
  std::vector<T> out(trials);
  const std::size_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
  auto run_block = [&](std::size_t b) {
    Rng rng = make_rng(master_seed, b);
    const std::size_t end = std::min(trials, (b + 1) * kTrialBlock);
    for (std::size_t t = b * kTrialBlock; t < end; ++t) out[t] = fn(t, rng);
  };
  if (workers <= 1 || blocks < 2) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
    return out;
  }
  workers = std::min(workers, blocks);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t b = w; b < blocks; b += workers) run_block(b);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

/// Monte Carlo estimate of a scalar randomised procedure. trials >= 2.
TrialStats monte_carlo(const std::function<double(Rng&)>& run, std::size_t trials, std::uint64_t master_seed);

}  // namespace swalloc
