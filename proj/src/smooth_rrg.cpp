#include "swalloc/smooth_rrg.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "swalloc/errors.hpp"

namespace swalloc {

BoundConstants bound_constants() {
  const double s5 = std::sqrt(5.0);
  const double a = (3.0 - s5) / 2.0;
  const double b = (3.0 + s5) / 2.0;
  return {a, b, std::log(b / a) / s5};
}

double limit_ratio() {
  const auto c = bound_constants();
  return (std::exp(-c.x_star * c.a) - std::exp(-c.x_star * c.b)) / std::sqrt(5.0);
}

std::size_t default_T(std::size_t k) {
  if (k == 0) throw DomainError("default_T needs k >= 1");
  return static_cast<std::size_t>(std::ceil(bound_constants().x_star * static_cast<double>(k)));
}

ClosedFormBounds closed_form_bounds(std::size_t k, std::size_t i, double opt_value) {
  if (k < 3) throw DomainError("closed-form bounds are stated for k >= 3");
  const auto c = bound_constants();
  const double s5 = std::sqrt(5.0);
  const double kd = static_cast<double>(k);
  const double pa = std::pow(1.0 - c.a / kd, static_cast<double>(i));
  const double pb = std::pow(1.0 - c.b / kd, static_cast<double>(i));
  return {opt_value / s5 * (pa - pb), opt_value / (2.0 * s5) * ((s5 - 1.0) * pa + (s5 + 1.0) * pb)};
}

double bound_at_exponent(std::size_t k, double exponent) {
  if (k < 3) throw DomainError("closed-form bounds are stated for k >= 3");
  const auto c = bound_constants();
  const double kd = static_cast<double>(k);
  return (std::pow(1.0 - c.a / kd, exponent) - std::pow(1.0 - c.b / kd, exponent)) / std::sqrt(5.0);
}

SmoothRrgPartition::SmoothRrgPartition(const SubmodularOracle& f, const PartitionStructure& parts)
    : f_(&f), parts_(&parts), consumed_(parts.part_count(), false), value_(f.eval(ItemSet{})) {
  if (f.ground_size() != parts.ground_size()) throw DomainError("partition and function ground sets differ");
}

Item SmoothRrgPartition::candidate(std::size_t part) const {
  if (part >= part_count()) throw DomainError("part index out of range");
  if (consumed_[part]) throw PreconditionError("part already intersects the solution");
  std::optional<Item> best;
  double best_gain = 0;
  parts_->part(part).for_each([&](Item e) {
    const double gain = f_->marginal(e, set_, value_);
    if (!best || gain > best_gain) {
      best = e;
      best_gain = gain;
    }
  });
  if (best_gain < -kValueTolerance) return parts_->ground_size() + part;
  return *best;
}

void SmoothRrgPartition::apply(std::size_t part) {
  if (part >= part_count()) throw DomainError("part index out of range");
  RrgStep rec;
  rec.iteration = trace_.size() + 1;
  if (!consumed_[part]) {
    const Item e = candidate(part);
    consumed_[part] = true;
    padded_.insert(e);
    if (e < parts_->ground_size()) {
      set_.insert(e);
      value_ = f_->eval(set_);
    }
    rec.added = e;
  }
  rec.value = value_;
  rec.slots_used = padded_.size();
  trace_.push_back(rec);
}

void SmoothRrgPartition::step(Rng& rng) { apply(uniform_index(rng, part_count())); }

namespace {

RrgResult finish(const ItemSet& set, const ItemSet& padded, double value, std::vector<RrgStep> trace) {
  RrgResult r;
  r.set = set;
  r.padded_set = padded;
  r.value = value;
  r.slots_used = padded.size();
  r.trace = std::move(trace);
  return r;
}

}  // namespace

RrgResult smooth_rrg_partition(const SubmodularOracle& f, const PartitionStructure& parts, std::size_t T, Rng& rng) {
  SmoothRrgPartition run(f, parts);
  for (std::size_t i = 0; i < T; ++i) run.step(rng);
  return finish(run.set(), run.padded_set(), run.value(), run.trace());
}

RrgResult smooth_rrg_partition(const SubmodularOracle& f, const PartitionStructure& parts, std::size_t T,
                               std::uint64_t seed) {
  Rng rng(seed);
  return smooth_rrg_partition(f, parts, T, rng);
}

SmoothRrgMatroid::SmoothRrgMatroid(const SubmodularOracle& f, const MatroidPtr& matroid)
    : f_(&f), padded_(pad(matroid)), value_(f.eval(ItemSet{})) {
  if (f.ground_size() != matroid->ground_size()) throw DomainError("matroid and function ground sets differ");
}

std::vector<Item> SmoothRrgMatroid::candidates() const {
  const Matroid& m = *padded_.matroid;
  const ItemSet real = set();
  std::vector<double> weights(m.ground_size(), std::numeric_limits<double>::lowest());
  for (Item e = 0; e < m.ground_size(); ++e) {
    if (padded_set_.contains(e)) continue;
    if (padded_.is_dummy(e)) {
      weights[e] = 0.0;
    } else if (m.is_independent(padded_set_.with(e))) {
      weights[e] = f_->marginal(e, real, value_);
    }
  }
  const ItemSet base = greedy_max_base(*contract(padded_.matroid, padded_set_), weights);
  return base.items();
}

void SmoothRrgMatroid::apply(std::optional<Item> element) {
  RrgStep rec;
  rec.iteration = trace_.size() + 1;
  if (element) {
    ItemSet next = padded_set_.with(*element);
    if (padded_set_.contains(*element) || !padded_.matroid->is_independent(next)) {
      throw PreconditionError("element does not extend the current independent set");
    }
    padded_set_ = std::move(next);
    if (!padded_.is_dummy(*element)) value_ = f_->eval(set());
    rec.added = element;
  }
  rec.value = value_;
  rec.slots_used = padded_set_.size();
  trace_.push_back(rec);
}

void SmoothRrgMatroid::step(Rng& rng) {
  const std::size_t k = rank();
  if (k == 0) {
    apply(std::nullopt);
    return;
  }
  const std::size_t r = uniform_index(rng, k);
  if (r >= k - slots_used()) {
    apply(std::nullopt);
    return;
  }
  const auto m = candidates();
  if (m.size() != k - slots_used()) throw PreconditionError("residual base has the wrong size; matroid not padded");
  apply(m[r]);
}

void SmoothRrgMatroid::step_original(Rng& rng) {
  const auto m = candidates();
  if (m.empty()) {
    apply(std::nullopt);
    return;
  }
  apply(m[uniform_index(rng, m.size())]);
}

RrgResult smooth_rrg_matroid(const SubmodularOracle& f, const MatroidPtr& matroid, std::size_t T, Rng& rng) {
  SmoothRrgMatroid run(f, matroid);
  for (std::size_t i = 0; i < T; ++i) run.step(rng);
  return finish(run.set(), run.padded_set(), run.value(), run.trace());
}

RrgResult smooth_rrg_matroid(const SubmodularOracle& f, const MatroidPtr& matroid, std::size_t T,
                             std::uint64_t seed) {
  Rng rng(seed);
  return smooth_rrg_matroid(f, matroid, T, rng);
}

RrgResult original_rrg(const SubmodularOracle& f, const MatroidPtr& matroid, Rng& rng) {
  SmoothRrgMatroid run(f, matroid);
  const std::size_t k = run.rank();
  for (std::size_t i = 0; i < k; ++i) run.step_original(rng);
  return finish(run.set(), run.padded_set(), run.value(), run.trace());
}

RrgResult original_rrg(const SubmodularOracle& f, const MatroidPtr& matroid, std::uint64_t seed) {
  Rng rng(seed);
  return original_rrg(f, matroid, rng);
}

WelfareRun deterministic_greedy(const WelfareInstance& instance, std::span<const std::size_t> order) {
  require_permutation(instance, order);
  GuardedInstanceView view(instance);
  WelfareRun run;
  run.allocation = Allocation(instance.bidder_count());
  std::vector<double> values(instance.bidder_count());
  for (Bidder j = 0; j < values.size(); ++j) values[j] = view.eval(j, ItemSet{});
  for (std::size_t item : order) {
    view.arrive(item);
    const BidderRanking ranking = rank_bidders(view, run.allocation, values, item);
    if (ranking.nonnegative == 0) continue;
    const RankedBidder& top = ranking.order.front();
    run.allocation.sets[top.bidder].insert(item);
    values[top.bidder] = top.extended_value;
  }
  run.welfare = std::accumulate(values.begin(), values.end(), 0.0);
  return run;
}

WelfareRun greedy_random_order(const WelfareInstance& instance, Rng& rng) {
  const auto order = random_permutation(rng, instance.items);
  return deterministic_greedy(instance, order);
}

CouplingSample sample_coupling(std::size_t k, std::uint64_t T, Rng& rng) {
  if (k == 0) throw DomainError("sample_coupling needs k >= 1");
  CouplingSample s;
  s.z.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    s.z.push_back(sample_geometric(rng, 1.0 - static_cast<double>(i) / static_cast<double>(k)));
  }
  s.level_starts.assign(k + 1, 0);
  for (std::size_t l = 1; l <= k; ++l) {
    const std::uint64_t prev = s.level_starts[l - 1];
    const std::uint64_t z = s.z[l - 1];
    s.level_starts[l] = (prev == kInfiniteDraw || z == kInfiniteDraw || prev > kInfiniteDraw - z) ? kInfiniteDraw
                                                                                                   : prev + z;
  }
  s.levels_reached = k;  // Z_k is infinite
  for (std::size_t i = 0; i < k; ++i) {
    if (s.level_starts[i + 1] > T) {
      s.levels_reached = i;
      break;
    }
  }
  return s;
}

CouplingSample sample_coupling(std::size_t k, std::uint64_t T, std::uint64_t seed) {
  Rng rng(seed);
  return sample_coupling(k, T, rng);
}

}  // namespace swalloc
