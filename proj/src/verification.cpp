#include "swalloc/verification.hpp"

#include <cmath>
#include <limits>

#include "swalloc/adversarial.hpp"
#include "swalloc/errors.hpp"
#include "swalloc/smooth_rrg.hpp"

namespace swalloc {

namespace {

void require_budget(double states, const char* what) {
  if (states > static_cast<double>(kMaxSearchSpace)) {
    throw CapacityError(std::string(what) + ": search space of " + std::to_string(states) +
                        " states exceeds the limit of " + std::to_string(kMaxSearchSpace));
  }
}

}  // namespace

OptResult brute_force_opt_welfare(const WelfareInstance& instance) {
  validate(instance);
  const std::size_t n = instance.bidder_count();
  const std::size_t m = instance.items;
  require_budget(std::pow(static_cast<double>(n + 1), static_cast<double>(m)), "brute_force_opt_welfare");
  if (m > kMaxTableItems) throw CapacityError("brute_force_opt_welfare: too many items");

  const std::uint64_t before = instance.total_queries();
  std::vector<std::vector<double>> tables(n);
  for (Bidder j = 0; j < n; ++j) {
    tables[j].resize(std::size_t{1} << m);
    for (std::uint64_t mask = 0; mask < tables[j].size(); ++mask) {
      tables[j][mask] = instance.bidders[j].eval(ItemSet::from_mask(mask));
    }
  }

  OptResult best;
  best.value = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> digit(m, 0);  // 0 = unassigned, j+1 = bidder j
  std::vector<std::uint64_t> masks(n, 0);
  std::uint64_t states = 0;
  while (true) {
    ++states;
    double v = 0;
    for (Bidder j = 0; j < n; ++j) v += tables[j][masks[j]];
    if (v > best.value + kValueTolerance) {
      best.value = v;
      best.allocation = Allocation(n);
      for (Bidder j = 0; j < n; ++j) best.allocation.sets[j] = ItemSet::from_mask(masks[j]);
    }
    std::size_t i = 0;
    for (; i < m; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (digit[i] > 0) masks[digit[i] - 1] &= ~bit;
      if (digit[i] < n) {
        ++digit[i];
        masks[digit[i] - 1] |= bit;
        break;
      }
      digit[i] = 0;
    }
    if (i == m) break;
  }
  best.search_space = states;
  best.queries = instance.total_queries() - before;
  return best;
}

OptResult brute_force_opt_matroid(const SubmodularOracle& f, const Matroid& m) {
  const std::size_t g = m.ground_size();
  if (f.ground_size() != g) throw DomainError("function and matroid ground sets differ");
  require_budget(std::ldexp(1.0, static_cast<int>(g)), "brute_force_opt_matroid");
  const std::uint64_t before = f.queries();
  OptResult best;
  best.value = -std::numeric_limits<double>::infinity();
  const std::uint64_t subsets = std::uint64_t{1} << g;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    const ItemSet s = ItemSet::from_mask(mask);
    if (!m.is_independent(s)) continue;
    const double v = f.eval(s);
    if (v > best.value + kValueTolerance) {
      best.value = v;
      best.set = s;
    }
  }
  best.search_space = subsets;
  best.queries = f.queries() - before;
  return best;
}

OptResult best_extension(const SubmodularOracle& f, const PaddedMatroid& m, const ItemSet& s) {
  const Matroid& matroid = *m.matroid;
  if (!matroid.is_independent(s)) throw PreconditionError("best_extension needs an independent set");
  if (f.ground_size() != m.original_size) throw DomainError("function and matroid ground sets differ");
  std::vector<Item> free;
  for (Item e = 0; e < m.original_size; ++e) {
    if (!s.contains(e) && matroid.is_independent(s.with(e))) free.push_back(e);
  }
  require_budget(std::ldexp(1.0, static_cast<int>(free.size())), "best_extension");
  const std::uint64_t before = f.queries();
  const ItemSet real_s = m.real_part(s);
  OptResult best;
  best.value = -std::numeric_limits<double>::infinity();
  const std::uint64_t subsets = std::uint64_t{1} << free.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    ItemSet a;
    for (std::uint64_t w = mask; w != 0; w &= w - 1) a.insert(free[static_cast<std::size_t>(__builtin_ctzll(w))]);
    if (!matroid.is_independent(s | a)) continue;
    const double v = f.eval(real_s | a);
    if (v > best.value + kValueTolerance) {
      best.value = v;
      best.set = a;
    }
  }
  ItemSet full = s | best.set;
  for (Item e = m.original_size; e < matroid.ground_size() && full.size() < matroid.rank(); ++e) {
    if (full.contains(e)) continue;
    ItemSet candidate = full.with(e);
    if (matroid.is_independent(candidate)) {
      full = std::move(candidate);
      best.set.insert(e);
    }
  }
  best.search_space = subsets;
  best.queries = f.queries() - before;
  return best;
}

OptResult best_extension(const SubmodularOracle& f, const MatroidPtr& m, const ItemSet& s) {
  if (s.bound() > m->ground_size()) throw DomainError("set outside the matroid ground set");
  return best_extension(f, pad(m), s);
}

SamplingLemmaReport check_sampling_lemma(const TableFunction& f, std::span<const double> inclusion, double p) {
  const std::size_t m = f.ground_size();
  if (inclusion.size() != m) throw PreconditionError("one inclusion probability per item is required");
  SamplingLemmaReport r;
  r.bound = (1.0 - p) * f.at(0);
  for (double q : inclusion) {
    if (q < 0 || q > 1) throw DomainError("inclusion probabilities must lie in [0, 1]");
    r.max_inclusion = std::max(r.max_inclusion, q);
  }
  r.marginals_ok = r.max_inclusion <= p + kValueTolerance;
  const std::uint64_t subsets = std::uint64_t{1} << m;
  double e = 0;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    double w = 1.0;
    for (Item i = 0; i < m; ++i) w *= ((mask >> i) & 1U) ? inclusion[i] : 1.0 - inclusion[i];
    e += w * f.at(mask);
  }
  r.expected_value = e;
  r.holds = r.marginals_ok && e >= r.bound - kValueTolerance;
  return r;
}

SamplingLemmaReport check_sampling_lemma(const TableFunction& f, const std::function<ItemSet(Rng&)>& sampler,
                                         double p, std::size_t trials, std::uint64_t seed) {
  if (trials < 2) throw PreconditionError("check_sampling_lemma needs at least 2 trials");
  const std::size_t m = f.ground_size();
  const auto sets = run_trials<std::uint64_t>(trials, seed, [&](std::size_t, Rng& rng) { return sampler(rng).mask(); });
  SamplingLemmaReport r;
  r.exact = false;
  r.bound = (1.0 - p) * f.at(0);
  const double n = static_cast<double>(trials);
  for (Item i = 0; i < m; ++i) {
    double hits = 0;
    for (auto s : sets) hits += static_cast<double>((s >> i) & 1U);
    const double q = hits / n;
    r.max_inclusion = std::max(r.max_inclusion, q);
    const double sigma = std::sqrt(p * (1.0 - p) / n);
    if (q > p + 3.0 * sigma) r.marginals_ok = false;
  }
  std::vector<double> values;
  values.reserve(trials);
  for (auto s : sets) values.push_back(f.at(s));
  const auto stats = TrialStats::from_values(std::move(values));
  r.expected_value = stats.mean;
  r.std_error = stats.std_error;
  r.holds = r.marginals_ok && stats.mean >= r.bound - 3.0 * stats.std_error - kValueTolerance;
  return r;
}

namespace {

template <typename State>
using StateMap = std::map<ItemSet, std::pair<State, double>>;

template <typename State>
void add_state(StateMap<State>& map, const State& state, double p) {
  auto [it, inserted] = map.try_emplace(state.padded_set(), state, 0.0);
  it->second.second += p;
}

template <typename State>
SetDistribution collapse(const StateMap<State>& map) {
  SetDistribution out;
  for (const auto& [key, entry] : map) out[key] += entry.second;
  return out;
}

}  // namespace

SetDistribution exact_smooth_rrg_partition(const SubmodularOracle& f, const PartitionStructure& parts, std::size_t T) {
  StateMap<SmoothRrgPartition> current;
  add_state(current, SmoothRrgPartition(f, parts), 1.0);
  const std::size_t k = parts.part_count();
  for (std::size_t t = 0; t < T; ++t) {
    StateMap<SmoothRrgPartition> next;
    for (const auto& [key, entry] : current) {
      for (std::size_t j = 0; j < k; ++j) {
        SmoothRrgPartition branch = entry.first;
        branch.apply(j);
        add_state(next, branch, entry.second / static_cast<double>(k));
      }
    }
    current = std::move(next);
  }
  return collapse(current);
}

SetDistribution exact_smooth_rrg_matroid(const SubmodularOracle& f, const MatroidPtr& m, std::size_t T) {
  StateMap<SmoothRrgMatroid> current;
  add_state(current, SmoothRrgMatroid(f, m), 1.0);
  for (std::size_t t = 0; t < T; ++t) {
    StateMap<SmoothRrgMatroid> next;
    for (const auto& [key, entry] : current) {
      const double k = static_cast<double>(entry.first.rank());
      const auto candidates = entry.first.candidates();
      for (Item u : candidates) {
        SmoothRrgMatroid branch = entry.first;
        branch.apply(u);
        add_state(next, branch, entry.second / k);
      }
      const double stay = k - static_cast<double>(candidates.size());
      if (stay > 0) {
        SmoothRrgMatroid branch = entry.first;
        branch.apply(std::nullopt);
        add_state(next, branch, entry.second * stay / k);
      }
    }
    current = std::move(next);
  }
  return collapse(current);
}

SetDistribution exact_original_rrg(const SubmodularOracle& f, const MatroidPtr& m) {
  StateMap<SmoothRrgMatroid> current;
  SmoothRrgMatroid start(f, m);
  const std::size_t k = start.rank();
  add_state(current, start, 1.0);
  for (std::size_t t = 0; t < k; ++t) {
    StateMap<SmoothRrgMatroid> next;
    for (const auto& [key, entry] : current) {
      const auto candidates = entry.first.candidates();
      for (Item u : candidates) {
        SmoothRrgMatroid branch = entry.first;
        branch.apply(u);
        add_state(next, branch, entry.second / static_cast<double>(candidates.size()));
      }
    }
    current = std::move(next);
  }
  return collapse(current);
}

AllocationDistribution exact_greedy_random_order(const WelfareInstance& instance) {
  const auto orders = all_orders(instance.items);
  AllocationDistribution out;
  const double p = 1.0 / static_cast<double>(orders.size());
  for (const auto& order : orders) out[deterministic_greedy(instance, order).allocation] += p;
  return out;
}

double expected_value(const SubmodularOracle& f, const SetDistribution& dist, std::size_t original_size) {
  const ItemSet real = ItemSet::range(original_size);
  double e = 0;
  for (const auto& [s, p] : dist) e += p * f.function().value(s & real);
  return e;
}

namespace {

template <typename Map>
double gap(const Map& a, const Map& b) {
  double worst = 0;
  for (const auto& [k, p] : a) {
    auto it = b.find(k);
    worst = std::max(worst, std::abs(p - (it == b.end() ? 0.0 : it->second)));
  }
  for (const auto& [k, p] : b) {
    if (!a.count(k)) worst = std::max(worst, p);
  }
  return worst;
}

}  // namespace

double max_probability_gap(const SetDistribution& a, const SetDistribution& b) { return gap(a, b); }
double max_probability_gap(const AllocationDistribution& a, const AllocationDistribution& b) { return gap(a, b); }

}  // namespace swalloc
