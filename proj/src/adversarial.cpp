#include "swalloc/adversarial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "swalloc/errors.hpp"

namespace swalloc {

GuardedInstanceView::GuardedInstanceView(const WelfareInstance& instance)
    : instance_(&instance), violations_(std::make_shared<std::uint64_t>(0)) {}

void GuardedInstanceView::arrive(Item item) {
  if (item >= instance_->items) throw DomainError("item " + std::to_string(item + 1) + " does not exist");
  if (arrived_.contains(item)) throw PreconditionError("item " + std::to_string(item + 1) + " arrived twice");
  arrived_.insert(item);
}

double GuardedInstanceView::eval(Bidder bidder, const ItemSet& s) const {
  if (!s.is_subset_of(arrived_)) {
    ++*violations_;
    throw GuardViolation("query references an item that has not arrived yet");
  }
  return instance_->bidders.at(bidder).eval(s);
}

namespace {

void finish_ranking(BidderRanking& ranking) {
  // Stable insertion sort: n is small and stable_sort would allocate a buffer per item.
  auto& v = ranking.order;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const RankedBidder x = v[i];
    std::size_t j = i;
    for (; j > 0 && v[j - 1].marginal < x.marginal; --j) v[j] = v[j - 1];
    v[j] = x;
  }
  ranking.nonnegative = static_cast<std::size_t>(
      std::count_if(ranking.order.begin(), ranking.order.end(),
                    [](const RankedBidder& r) { return r.marginal >= -kValueTolerance; }));
}

void require_new_item(const GuardedInstanceView& view, const Allocation& state, Item item) {
  if (!view.arrived().contains(item)) throw GuardViolation("item " + std::to_string(item + 1) + " has not arrived");
  if (state.assigned().contains(item)) throw PreconditionError("item is already assigned");
}

}  // namespace

BidderRanking rank_marginals(std::span<const double> marginals) {
  BidderRanking ranking;
  ranking.order.reserve(marginals.size());
  for (Bidder j = 0; j < marginals.size(); ++j) {
    ranking.order.push_back({j, marginals[j], std::numeric_limits<double>::quiet_NaN()});
  }
  finish_ranking(ranking);
  return ranking;
}

BidderRanking rank_bidders(const GuardedInstanceView& view, const Allocation& state, Item item) {
  require_new_item(view, state, item);
  BidderRanking ranking;
  ranking.order.reserve(view.bidder_count());
  for (Bidder j = 0; j < view.bidder_count(); ++j) {
    const double extended = view.eval(j, state.sets[j].with(item));
    ranking.order.push_back({j, extended - view.eval(j, state.sets[j]), extended});
  }
  finish_ranking(ranking);
  return ranking;
}

BidderRanking rank_bidders(const GuardedInstanceView& view, const Allocation& state,
                           std::span<const double> current_values, Item item) {
  require_new_item(view, state, item);
  BidderRanking ranking;
  ranking.order.reserve(view.bidder_count());
  for (Bidder j = 0; j < view.bidder_count(); ++j) {
    const double extended = view.eval(j, state.sets[j].with(item));
    ranking.order.push_back({j, extended - current_values[j], extended});
  }
  finish_ranking(ranking);
  return ranking;
}

Assignment sample_assignment(const BidderRanking& ranking, Rng& rng) {
  const std::size_t r = sample_dyadic_rank(rng);
  if (r > ranking.nonnegative) return std::nullopt;
  return ranking.order[r - 1].bidder;
}

std::vector<std::pair<Assignment, double>> assignment_distribution(const BidderRanking& ranking) {
  std::vector<std::pair<Assignment, double>> out;
  double p = 1.0;
  for (std::size_t r = 0; r < ranking.nonnegative; ++r) {
    p *= 0.5;
    out.emplace_back(ranking.order[r].bidder, p);
  }
  out.emplace_back(std::nullopt, p);
  return out;
}

AdversarialAllocator::AdversarialAllocator(const WelfareInstance& instance)
    : view_(instance), allocation_(instance.bidder_count()), values_(instance.bidder_count()) {
  for (Bidder j = 0; j < instance.bidder_count(); ++j) values_[j] = view_.eval(j, ItemSet{});
}

BidderRanking AdversarialAllocator::observe(Item item) {
  if (pending_) throw PreconditionError("previous item has not been decided");
  view_.arrive(item);
  pending_ = item;
  return rank_bidders(view_, allocation_, values_, item);
}

void AdversarialAllocator::commit(const BidderRanking& ranking, Assignment choice) {
  if (!pending_) throw PreconditionError("no item is awaiting a decision");
  const Item item = *pending_;
  pending_.reset();
  if (!choice) return;
  const auto it = std::find_if(ranking.order.begin(), ranking.order.end(),
                               [&](const RankedBidder& r) { return r.bidder == *choice; });
  if (it == ranking.order.end()) throw PreconditionError("assignment to an unknown bidder");
  if (it->marginal < -kValueTolerance) throw PreconditionError("assignment with a negative marginal");
  allocation_.sets[*choice].insert(item);
  values_[*choice] = it->extended_value;
}

double AdversarialAllocator::welfare() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

void require_permutation(const WelfareInstance& instance, std::span<const std::size_t> order) {
  if (order.size() != instance.items) throw PreconditionError("order must list every item exactly once");
  std::vector<bool> seen(instance.items, false);
  for (std::size_t i : order) {
    if (i >= instance.items || seen[i]) throw PreconditionError("order must list every item exactly once");
    seen[i] = true;
  }
}

namespace {

void require_reference(const WelfareInstance& instance, const Allocation* reference) {
  if (!reference) return;
  if (reference->bidder_count() != instance.bidder_count() || !reference->disjoint() ||
      reference->assigned().bound() > instance.items) {
    throw PreconditionError("reference optimum must be a feasible allocation of this instance");
  }
}

// Items the reference leaves unassigned belong to an implicit zero-utility
// bidder, which contributes nothing to f(H).
double hybrid_value(const WelfareInstance& instance, const Allocation& reference, const Allocation& state,
                    const ItemSet& arrived, std::vector<ItemSet>* hybrid) {
  double total = 0;
  for (Bidder j = 0; j < instance.bidder_count(); ++j) {
    ItemSet h = (reference.sets[j] & arrived) | state.sets[j];
    total += instance.bidders[j].function().value(h);
    if (hybrid) hybrid->push_back(std::move(h));
  }
  return total;
}

}  // namespace

AdversarialRun run_adversarial(const WelfareInstance& instance, std::span<const std::size_t> order, Rng& rng,
                               const Allocation* reference) {
  require_permutation(instance, order);
  require_reference(instance, reference);
  AdversarialAllocator alloc(instance);
  AdversarialRun run;
  double hybrid_before = reference ? welfare_uncounted(instance, Allocation(instance.bidder_count())) : 0.0;
  for (std::size_t step = 0; step < order.size(); ++step) {
    const double before = alloc.welfare();
    const BidderRanking ranking = alloc.observe(order[step]);
    const Assignment choice = sample_assignment(ranking, rng);
    alloc.commit(ranking, choice);
    if (reference) {
      IterationDiagnostics d;
      d.iteration = step + 1;
      d.item = order[step];
      d.assigned = choice;
      d.profit = alloc.welfare() - before;
      const double hybrid_after =
          hybrid_value(instance, *reference, alloc.allocation(), alloc.view().arrived(), &d.hybrid);
      d.hybrid_delta = hybrid_after - hybrid_before;
      hybrid_before = hybrid_after;
      run.diagnostics.push_back(std::move(d));
    }
  }
  run.allocation = alloc.allocation();
  run.welfare = alloc.welfare();
  return run;
}

AdversarialRun run_adversarial(const WelfareInstance& instance, std::span<const std::size_t> order,
                               std::uint64_t seed, const Allocation* reference) {
  Rng rng(seed);
  return run_adversarial(instance, order, rng, reference);
}

namespace {

struct ExactWalker {
  const WelfareInstance& instance;
  std::span<const std::size_t> order;
  const Allocation* reference;
  ExactAdversarial& out;
  std::map<Allocation, double> leaves;

  void walk(const AdversarialAllocator& state, std::size_t step, double probability, double hybrid_before) {
    if (step == order.size()) {
      ++out.branches;
      out.expected_welfare += probability * state.welfare();
      const auto& sets = state.allocation().sets;
      for (Bidder j = 0; j < sets.size(); ++j) {
        sets[j].for_each([&](Item i) { out.assignment_probability[i][j] += probability; });
      }
      leaves[state.allocation()] += probability;
      return;
    }
    AdversarialAllocator base = state;
    const BidderRanking ranking = base.observe(order[step]);
    for (const auto& [choice, p] : assignment_distribution(ranking)) {
      AdversarialAllocator next = base;
      next.commit(ranking, choice);
      double hybrid_after = 0;
      if (reference) {
        out.expected_profit[step] += probability * p * (next.welfare() - state.welfare());
        hybrid_after = hybrid_value(instance, *reference, next.allocation(), next.view().arrived(), nullptr);
        out.expected_hybrid_delta[step] += probability * p * (hybrid_after - hybrid_before);
      }
      walk(next, step + 1, probability * p, hybrid_after);
    }
  }
};

}  // namespace

ExactAdversarial exact_adversarial(const WelfareInstance& instance, std::span<const std::size_t> order,
                                   const Allocation* reference) {
  require_permutation(instance, order);
  require_reference(instance, reference);
  ExactAdversarial out;
  out.assignment_probability.assign(instance.items, std::vector<double>(instance.bidder_count(), 0.0));
  if (reference) {
    out.expected_profit.assign(order.size(), 0.0);
    out.expected_hybrid_delta.assign(order.size(), 0.0);
  }
  ExactWalker walker{instance, order, reference, out, {}};
  const double hybrid0 = reference ? welfare_uncounted(instance, Allocation(instance.bidder_count())) : 0.0;
  walker.walk(AdversarialAllocator(instance), 0, 1.0, hybrid0);
  out.distribution.assign(walker.leaves.begin(), walker.leaves.end());
  return out;
}

std::vector<std::vector<std::size_t>> all_orders(std::size_t items) {
  if (items > 8) throw CapacityError("refusing to enumerate more than 8! orders");
  std::vector<std::size_t> perm(items);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::vector<std::size_t>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

WorstOrder worst_order(const WelfareInstance& instance, const std::vector<std::vector<std::size_t>>& orders) {
  WorstOrder worst;
  worst.expected_welfare = std::numeric_limits<double>::infinity();
  for (const auto& order : orders) {
    const double e = exact_adversarial(instance, order).expected_welfare;
    if (e < worst.expected_welfare) {
      worst.expected_welfare = e;
      worst.order = order;
    }
    ++worst.orders_checked;
  }
  return worst;
}

WelfareRun run_random_half_baseline(const WelfareInstance& instance, std::span<const std::size_t> order, Rng& rng) {
  if (instance.bidder_count() != 1) throw PreconditionError("the random-half baseline needs exactly one bidder");
  require_permutation(instance, order);
  GuardedInstanceView view(instance);
  WelfareRun run;
  run.allocation = Allocation(1);
  for (std::size_t item : order) {
    view.arrive(item);
    if (rng() & 1U) run.allocation.sets[0].insert(item);
  }
  run.welfare = view.eval(0, run.allocation.sets[0]);
  return run;
}

std::vector<KvsPRow> check_lemma_K_vs_P(const WelfareInstance& instance, std::span<const std::size_t> order,
                                        const Allocation& reference, std::size_t trials, std::uint64_t seed) {
  if (trials < 2) throw PreconditionError("check_lemma_K_vs_P needs at least 2 trials");
  const std::size_t m = order.size();
  auto samples = run_trials<std::vector<double>>(trials, seed, [&](std::size_t, Rng& rng) {
    const AdversarialRun run = run_adversarial(instance, order, rng, &reference);
    std::vector<double> row(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
      row[i] = run.diagnostics[i].hybrid_delta;
      row[m + i] = run.diagnostics[i].profit;
    }
    return row;
  });
  std::vector<KvsPRow> rows;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> k(trials), p(trials), diff(trials);
    for (std::size_t t = 0; t < trials; ++t) {
      k[t] = samples[t][i];
      p[t] = samples[t][m + i];
      diff[t] = k[t] - 2 * p[t];
    }
    const auto ks = TrialStats::from_values(std::move(k));
    const auto ps = TrialStats::from_values(std::move(p));
    const auto ds = TrialStats::from_values(std::move(diff));
    rows.push_back({i + 1, ks.mean, ps.mean, ds.std_error, ks.mean <= 2 * ps.mean + 3 * ds.std_error + kValueTolerance});
  }
  return rows;
}

std::vector<KvsPRow> check_lemma_K_vs_P_exact(const WelfareInstance& instance, std::span<const std::size_t> order,
                                              const Allocation& reference) {
  const ExactAdversarial exact = exact_adversarial(instance, order, &reference);
  std::vector<KvsPRow> rows;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double k = exact.expected_hybrid_delta[i];
    const double p = exact.expected_profit[i];
    rows.push_back({i + 1, k, p, 0.0, k <= 2 * p + kValueTolerance});
  }
  return rows;
}

}  // namespace swalloc
