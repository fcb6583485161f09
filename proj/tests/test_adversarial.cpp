#include <gtest/gtest.h>

#include <cmath>

#include "swalloc/adversarial.hpp"
#include "swalloc/errors.hpp"
#include "swalloc/generator.hpp"
#include "swalloc/verification.hpp"

using namespace swalloc;

namespace {

WelfareInstance single(SetFunctionPtr f) {
  WelfareInstance w;
  w.items = f->ground_size();
  w.bidders.emplace_back(std::move(f));
  return w;
}

WelfareInstance edge_cut_instance() {
  return single(std::make_shared<const CutFunction>(2, std::vector<WeightedEdge>{{0, 1, 1.0}}));
}

WelfareInstance zero_instance(std::size_t m, std::size_t n) {
  WelfareInstance w;
  w.items = m;
  for (std::size_t j = 0; j < n; ++j) w.bidders.emplace_back(std::make_shared<const CutFunction>(m, std::vector<WeightedEdge>{}));
  return w;
}

WelfareInstance generated(Family fam, std::size_t m, std::size_t n, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.family = fam;
  spec.items = m;
  spec.bidders = n;
  spec.seed = seed;
  return generate(spec).welfare;
}

std::vector<std::size_t> identity(std::size_t m) {
  std::vector<std::size_t> o(m);
  for (std::size_t i = 0; i < m; ++i) o[i] = i;
  return o;
}

}  // namespace

TEST(Ranking, Examples) {
  const std::vector<double> a = {5, 2, -1};
  auto r = rank_marginals(a);
  EXPECT_EQ(r.nonnegative, 2u);
  EXPECT_EQ(r.order[0].bidder, 0u);
  EXPECT_EQ(r.order[1].bidder, 1u);
  EXPECT_EQ(r.order[2].bidder, 2u);

  const std::vector<double> b = {2, 5, -1};
  r = rank_marginals(b);
  EXPECT_EQ(r.nonnegative, 2u);
  EXPECT_EQ(r.order[0].bidder, 1u);
  EXPECT_EQ(r.order[1].bidder, 0u);

  const std::vector<double> c = {-1, -3};
  EXPECT_EQ(rank_marginals(c).nonnegative, 0u);

  const std::vector<double> ties = {1, 3, 3, 0};
  r = rank_marginals(ties);
  EXPECT_EQ(r.order[0].bidder, 1u);
  EXPECT_EQ(r.order[1].bidder, 2u);
  EXPECT_EQ(r.nonnegative, 4u);  // zero counts as non-negative
}

TEST(Sampling, ExactDistributions) {
  const std::vector<double> a = {5, 2, -1};
  const auto d = assignment_distribution(rank_marginals(a));
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[0].first, Assignment{0});
  EXPECT_EQ(d[0].second, 0.5);
  EXPECT_EQ(d[1].first, Assignment{1});
  EXPECT_EQ(d[1].second, 0.25);
  EXPECT_EQ(d[2].first, std::nullopt);
  EXPECT_EQ(d[2].second, 0.25);

  const std::vector<double> none = {-1};
  const auto z = assignment_distribution(rank_marginals(none));
  ASSERT_EQ(z.size(), 1u);
  EXPECT_EQ(z[0].first, std::nullopt);
  EXPECT_EQ(z[0].second, 1.0);

  const std::vector<double> one = {1};
  const auto h = assignment_distribution(rank_marginals(one));
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0].second, 0.5);
  EXPECT_EQ(h[1].second, 0.5);
}

TEST(Sampling, FrequenciesMatchDyadicProbabilities) {
  const int draws = 1'000'000;
  for (std::size_t ell = 0; ell <= 6; ++ell) {
    std::vector<double> marginals(6, -1.0);
    for (std::size_t r = 0; r < ell; ++r) marginals[r] = static_cast<double>(10 - r);
    const auto ranking = rank_marginals(marginals);
    Rng rng(derive_seed(42, ell));
    std::vector<double> counts(7, 0);  // bidders 0..5, discard = 6
    for (int t = 0; t < draws; ++t) {
      const auto a = sample_assignment(ranking, rng);
      ++counts[a ? *a : 6];
    }
    for (std::size_t r = 0; r <= 6; ++r) {
      double p = 0;
      if (r < ell) p = std::ldexp(1.0, -static_cast<int>(r + 1));
      if (r == 6) p = std::ldexp(1.0, -static_cast<int>(ell));
      const double sigma = std::sqrt(p * (1 - p) / draws);
      EXPECT_NEAR(counts[r] / draws, p, 4 * sigma + 1e-12) << "ell " << ell << " outcome " << r;
    }
  }
}

TEST(Guard, FutureItemsAreRejected) {
  const auto w = generated(Family::Coverage, 4, 2, 3);
  GuardedInstanceView view(w);
  view.arrive(2);
  EXPECT_NO_THROW(view.eval(0, {2}));
  EXPECT_THROW(view.eval(0, {1, 2}), GuardViolation);
  EXPECT_EQ(view.violations(), 1u);
  EXPECT_THROW(view.arrive(2), PreconditionError);
  Allocation state(2);
  EXPECT_THROW(rank_bidders(view, state, 3), GuardViolation);
}

TEST(Adversarial, EdgeCutExpectation) {
  const auto w = edge_cut_instance();
  const auto order = identity(2);
  EXPECT_DOUBLE_EQ(exact_adversarial(w, order).expected_welfare, 0.75);
  const auto s = monte_carlo([&](Rng& rng) { return run_adversarial(w, order, rng).welfare; }, 100'000, 7);
  EXPECT_NEAR(s.mean, 0.75, 4 * s.std_error);
}

TEST(Adversarial, ZeroUtilities) {
  const auto w = zero_instance(4, 3);
  EXPECT_EQ(run_adversarial(w, identity(4), 1).welfare, 0.0);
  EXPECT_EQ(exact_adversarial(w, identity(4)).expected_welfare, 0.0);
}

TEST(Adversarial, RequiresPermutation) {
  const auto w = zero_instance(3, 1);
  const std::vector<std::size_t> bad = {0, 0, 1};
  EXPECT_THROW(run_adversarial(w, bad, 1), PreconditionError);
  const std::vector<std::size_t> short_order = {0, 1};
  EXPECT_THROW(run_adversarial(w, short_order, 1), PreconditionError);
}

TEST(Adversarial, RunInvariants) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto w = generated(seed % 2 ? Family::Cut : Family::Priced, 5, 3, seed);
    Rng rng(seed);
    const auto order = random_permutation(rng, 5);
    AdversarialAllocator alg(w);
    for (auto item : order) {
      const auto ranking = alg.observe(item);
      const auto choice = sample_assignment(ranking, rng);
      if (choice) {
        const Allocation& s = alg.allocation();
        const double gain = w.bidders[*choice].function().value(s.sets[*choice].with(item)) -
                            w.bidders[*choice].function().value(s.sets[*choice]);
        ASSERT_GE(gain, -kValueTolerance);
      }
      alg.commit(ranking, choice);
    }
    EXPECT_TRUE(alg.allocation().disjoint());
    EXPECT_EQ(alg.view().violations(), 0u);
    EXPECT_NEAR(alg.welfare(), welfare_uncounted(w, alg.allocation()), 1e-9);
  }
}

TEST(Adversarial, QueryCountIsPredicted) {
  auto w = generated(Family::Coverage, 5, 3, 11);
  w.reset_queries();
  (void)run_adversarial(w, identity(5), 3);
  EXPECT_EQ(w.total_queries(), 3u + 5u * 3u);  // f_j(∅) once, then one query per bidder per item
}

TEST(Adversarial, EachItemGoesToABidderWithProbabilityAtMostHalf) {
  const auto w = generated(Family::Coverage, 4, 3, 5);
  const auto e = exact_adversarial(w, identity(4));
  for (const auto& row : e.assignment_probability) {
    for (double p : row) EXPECT_LE(p, 0.5 + 1e-15);
  }
  double total = 0;
  for (const auto& [alloc, p] : e.distribution) total += p;
  EXPECT_DOUBLE_EQ(total, 1.0);
}

TEST(Adversarial, ExactAgreesWithMonteCarlo) {
  const auto w = generated(Family::Cut, 4, 2, 8);
  const auto order = identity(4);
  const double exact = exact_adversarial(w, order).expected_welfare;
  const auto s = monte_carlo([&](Rng& rng) { return run_adversarial(w, order, rng).welfare; }, 100'000, 3);
  EXPECT_NEAR(s.mean, exact, 4 * s.std_error);
}

TEST(Adversarial, QuarterOfOptimumOnEveryOrder) {
  const auto w = generated(Family::Priced, 4, 2, 21);
  const double opt = brute_force_opt_welfare(w).value;
  const auto worst = worst_order(w, all_orders(4));
  EXPECT_EQ(worst.orders_checked, 24u);
  EXPECT_GE(worst.expected_welfare, 0.25 * opt);
}

TEST(Adversarial, SameSeedSameRun) {
  const auto w = generated(Family::Coverage, 5, 3, 2);
  const auto a = run_adversarial(w, identity(5), 99);
  const auto b = run_adversarial(w, identity(5), 99);
  EXPECT_EQ(a.allocation, b.allocation);
}

TEST(Diagnostics, ProfitsAndHybridDeltasTelescope) {
  const auto w = generated(Family::Cut, 5, 2, 4);
  const auto opt = brute_force_opt_welfare(w);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto run = run_adversarial(w, identity(5), seed, &opt.allocation);
    ASSERT_EQ(run.diagnostics.size(), 5u);
    double p = 0, k = 0;
    for (const auto& d : run.diagnostics) {
      p += d.profit;
      k += d.hybrid_delta;
    }
    const double f0 = welfare_uncounted(w, Allocation(2));
    EXPECT_NEAR(p, run.welfare - f0, 1e-9);
    const auto& last = run.diagnostics.back().hybrid;
    double h = 0;
    for (std::size_t j = 0; j < 2; ++j) h += w.bidders[j].function().value(last[j]);
    EXPECT_NEAR(k, h - f0, 1e-9);
    // H^m_j = O_j ∪ S^m_j.
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(last[j], opt.allocation.sets[j] | run.allocation.sets[j]);
  }
}

TEST(HybridVsProfit, ZeroInstance) {
  const auto w = zero_instance(3, 2);
  for (const auto& row : check_lemma_K_vs_P_exact(w, identity(3), Allocation(2))) {
    EXPECT_EQ(row.mean_hybrid_delta, 0.0);
    EXPECT_EQ(row.mean_profit, 0.0);
    EXPECT_TRUE(row.holds);
  }
}

TEST(HybridVsProfit, EdgeCutExact) {
  const auto w = edge_cut_instance();
  const auto opt = brute_force_opt_welfare(w);
  const auto rows = check_lemma_K_vs_P_exact(w, identity(2), opt.allocation);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) EXPECT_TRUE(r.holds) << r.iteration;
  // O = {item 1}. Iteration 1: H^1 = {1} on every branch, so K = 1 against P = 1/2
  // (tight). Iteration 2: item 2 is taken only when item 1 was discarded.
  EXPECT_DOUBLE_EQ(rows[0].mean_profit, 0.5);
  EXPECT_DOUBLE_EQ(rows[0].mean_hybrid_delta, 1.0);
  EXPECT_DOUBLE_EQ(rows[1].mean_profit, 0.25);
  EXPECT_DOUBLE_EQ(rows[1].mean_hybrid_delta, -0.25);
}

TEST(HybridVsProfit, RandomTablesMonteCarlo) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto w = generated(Family::RandomTable, 4, 2, seed);
    const auto opt = brute_force_opt_welfare(w);
    for (const auto& r : check_lemma_K_vs_P(w, identity(4), opt.allocation, 20'000, seed)) {
      EXPECT_TRUE(r.holds) << "seed " << seed << " i " << r.iteration;
    }
    for (const auto& r : check_lemma_K_vs_P_exact(w, identity(4), opt.allocation)) {
      EXPECT_TRUE(r.holds) << "seed " << seed << " i " << r.iteration;
    }
  }
}

TEST(Baseline, RandomHalf) {
  const auto w = edge_cut_instance();
  const auto s = monte_carlo([&](Rng& rng) { return run_random_half_baseline(w, identity(2), rng).welfare; }, 100'000, 5);
  EXPECT_NEAR(s.mean, 0.5, 4 * s.std_error);
  const auto zero = zero_instance(3, 1);
  Rng rng(1);
  EXPECT_EQ(run_random_half_baseline(zero, identity(3), rng).welfare, 0.0);
  const auto empty = single(std::make_shared<const TableFunction>(0, std::vector<double>{2.0}));
  EXPECT_EQ(run_random_half_baseline(empty, {}, rng).welfare, 2.0);
  EXPECT_THROW(run_random_half_baseline(zero_instance(3, 2), identity(3), rng), PreconditionError);
}
