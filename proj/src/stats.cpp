#include "swalloc/stats.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "swalloc/errors.hpp"

namespace swalloc {

std::size_t worker_count() {
  if (const char* env = std::getenv("SWALLOC_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
      // fall through to the machine default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

TrialStats TrialStats::from_values(std::vector<double> values) {
  TrialStats s;
  s.trials = values.size();
  if (s.trials == 0) return s;
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.trials);
  if (s.trials > 1) {
    double ss = 0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.trials - 1));
    s.std_error = s.sd / std::sqrt(static_cast<double>(s.trials));
  }
  s.values = std::move(values);
  return s;
}

TrialStats monte_carlo(const std::function<double(Rng&)>& run, std::size_t trials, std::uint64_t master_seed) {
  if (trials < 2) throw PreconditionError("monte_carlo needs at least 2 trials");
  auto values = run_trials<double>(trials, master_seed, [&](std::size_t, Rng& rng) { return run(rng); });
  return TrialStats::from_values(std::move(values));
}

}  // namespace swalloc
