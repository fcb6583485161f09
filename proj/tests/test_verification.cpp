#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <string>

#include "swalloc/errors.hpp"
#include "swalloc/instance_io.hpp"
#include "swalloc/reduction.hpp"
#include "swalloc/smooth_rrg.hpp"
#include "swalloc/verification.hpp"

using namespace swalloc;

namespace {

const std::filesystem::path kCorpus = SWALLOC_CORPUS_DIR;

double sidecar_opt(const std::filesystem::path& inst) {
  std::ifstream in(std::filesystem::path(inst).replace_extension(".opt"));
  std::string word;
  double v = NAN;
  in >> word >> v;
  EXPECT_EQ(word, "opt");
  return v;
}

SubmodularOracle cut_k2() { return SubmodularOracle::of(CutFunction(2, {{0, 1, 1.0}})); }

SubmodularOracle modular(std::vector<double> w) { return SubmodularOracle::of(make_modular(w)); }

}  // namespace

TEST(BruteForceWelfare, TwoCutBidders) {
  WelfareInstance w;
  w.items = 2;
  w.bidders = {cut_k2(), cut_k2()};
  const auto r = brute_force_opt_welfare(w);
  EXPECT_EQ(r.value, 2.0);
  EXPECT_EQ(r.search_space, 9u);
  // Smallest encoding with value 2: item 1 -> bidder 2, item 2 -> bidder 1.
  EXPECT_EQ(r.allocation.sets[0], ItemSet{1});
  EXPECT_EQ(r.allocation.sets[1], ItemSet{0});
  EXPECT_EQ(r.queries, 8u);
}

TEST(BruteForceWelfare, AllZeroKeepsEverythingUnassigned) {
  WelfareInstance w;
  w.items = 3;
  w.bidders = {SubmodularOracle::of(CutFunction(3, {}))};
  const auto r = brute_force_opt_welfare(w);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_TRUE(r.allocation.assigned().empty());
}

TEST(BruteForceWelfare, CapacityLimit) {
  WelfareInstance w;
  w.items = 15;
  for (int j = 0; j < 3; ++j) w.bidders.push_back(SubmodularOracle::of(CutFunction(15, {})));
  EXPECT_THROW(brute_force_opt_welfare(w), CapacityError);
}

TEST(BruteForceMatroid, UniformModular) {
  const auto f = modular({1, 4, 2, 3});
  const auto r = brute_force_opt_matroid(f, UniformMatroid(4, 2));
  EXPECT_EQ(r.value, 7.0);
  EXPECT_EQ(r.set, (ItemSet{1, 3}));
}

TEST(BruteForceMatroid, GroundMismatch) {
  EXPECT_THROW(brute_force_opt_matroid(modular({1, 2}), UniformMatroid(3, 1)), DomainError);
}

TEST(BruteForceMatroid, CapacityLimit) {
  const auto f = SubmodularOracle::of(CutFunction(24, {}));
  EXPECT_THROW(brute_force_opt_matroid(f, UniformMatroid(24, 3)), CapacityError);
}

TEST(Corpus, WelfareSidecarsMatchBruteForce) {
  const auto files = instance_files(kCorpus / "welfare");
  ASSERT_GE(files.size(), 20u);
  for (const auto& file : files) {
    const auto inst = load_instance(file);
    EXPECT_NEAR(brute_force_opt_welfare(inst.welfare).value, sidecar_opt(file), 1e-9) << file;
  }
}

TEST(Corpus, WelfareOptEqualsReductionOpt) {
  for (const auto& file : instance_files(kCorpus / "welfare")) {
    const auto inst = load_instance(file);
    const auto red = reduce(inst.welfare);
    if (red.matroid->ground_size() > 18) continue;
    const SubmodularOracle g(red.function);
    const auto a = brute_force_opt_welfare(inst.welfare);
    const auto b = brute_force_opt_matroid(g, *red.matroid);
    EXPECT_NEAR(a.value, b.value, 1e-9) << file;
    EXPECT_NEAR(welfare_uncounted(inst.welfare, red.to_allocation(b.set)), b.value, 1e-9) << file;
  }
}

TEST(Corpus, PartitionSidecarsMatchBruteForce) {
  const auto files = instance_files(kCorpus / "partition");
  ASSERT_GE(files.size(), 4u);
  for (const auto& file : files) {
    const auto inst = load_instance(file);
    ASSERT_TRUE(inst.matroid) << file;
    const auto& f = inst.welfare.bidders[0];
    const auto r = brute_force_opt_matroid(f, *inst.matroid);
    EXPECT_NEAR(r.value, sidecar_opt(file), 1e-9) << file;
    EXPECT_TRUE(inst.matroid->is_independent(r.set));
    // The empty-set extension is the optimum itself.
    EXPECT_NEAR(best_extension(f, inst.matroid, ItemSet{}).value, r.value, 1e-9) << file;
  }
}

TEST(BestExtension, ModularUniform) {
  const auto f = modular({1, 4, 2, 3});
  const MatroidPtr m = std::make_shared<const UniformMatroid>(4, 2);
  const auto r = best_extension(f, m, ItemSet{0});
  EXPECT_EQ(r.value, 5.0);
  EXPECT_EQ(r.set, ItemSet{1});
  EXPECT_TRUE(best_extension(f, m, ItemSet{0, 2}).set.empty());
}

TEST(BestExtension, NegativeMarginalCompletesWithDummy) {
  const auto f = cut_k2();
  const MatroidPtr m = std::make_shared<const PartitionMatroid>(PartitionStructure(2, {ItemSet{0}, ItemSet{1}}));
  const auto r = best_extension(f, m, ItemSet{0});
  EXPECT_EQ(r.value, 1.0);
  EXPECT_EQ(r.set, ItemSet{3});  // dummy of part 2
}

TEST(BestExtension, MirroredPaddingFillsTheBase) {
  const auto f = cut_k2();
  const MatroidPtr m = std::make_shared<const UniformMatroid>(2, 2);
  const PaddedMatroid p = pad(m);
  const auto r = best_extension(f, p, ItemSet{0});
  EXPECT_EQ(r.value, 1.0);
  EXPECT_EQ(r.set.size(), 1u);
  EXPECT_TRUE(p.is_dummy(r.set.items()[0]));
  EXPECT_THROW(best_extension(f, p, ItemSet{0, 2}), PreconditionError);  // 0 and its mirror
}

TEST(SamplingBound, ProductTight) {
  const TableFunction f(2, {2, 1, 1, 0});
  const std::vector<double> q = {0.5, 0.5};
  const auto r = check_sampling_lemma(f, q, 0.5);
  EXPECT_DOUBLE_EQ(r.expected_value, 1.0);
  EXPECT_DOUBLE_EQ(r.bound, 1.0);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.exact);
}

TEST(SamplingBound, MarginalAboveP) {
  const TableFunction f(2, {2, 1, 1, 0});
  const std::vector<double> q = {0.75, 0.25};
  const auto r = check_sampling_lemma(f, q, 0.5);
  EXPECT_FALSE(r.marginals_ok);
  EXPECT_FALSE(r.holds);
  EXPECT_DOUBLE_EQ(r.max_inclusion, 0.75);
}

TEST(SamplingBound, Degenerate) {
  const TableFunction f(1, {3, 1});
  EXPECT_DOUBLE_EQ(check_sampling_lemma(f, std::vector<double>{0.0}, 0.0).expected_value, 3.0);
  const auto all = check_sampling_lemma(f, std::vector<double>{1.0}, 1.0);
  EXPECT_DOUBLE_EQ(all.bound, 0.0);
  EXPECT_TRUE(all.holds);
  EXPECT_THROW(check_sampling_lemma(f, std::vector<double>{1.5}, 1.0), DomainError);
  EXPECT_THROW(check_sampling_lemma(f, std::vector<double>{0.5, 0.5}, 1.0), PreconditionError);
}

TEST(SamplingBound, CorrelatedSampler) {
  // A is {1} or {2} with probability 1/2 each: marginals 1/2, E[f(A)] = 1.
  const TableFunction f(2, {2, 1, 1, 0});
  const auto r = check_sampling_lemma(
      f, [](Rng& rng) { return uniform_index(rng, 2) == 0 ? ItemSet{0} : ItemSet{1}; }, 0.5, 10'000, 3);
  EXPECT_FALSE(r.exact);
  EXPECT_DOUBLE_EQ(r.expected_value, 1.0);
  EXPECT_TRUE(r.holds);
}

TEST(MonteCarlo, ConstantRun) {
  const auto s = monte_carlo([](Rng&) { return 2.5; }, 100, 1);
  EXPECT_EQ(s.trials, 100u);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_DOUBLE_EQ(s.sd, 0.0);
  EXPECT_DOUBLE_EQ(s.std_error, 0.0);
  EXPECT_THROW(monte_carlo([](Rng&) { return 0.0; }, 1, 1), PreconditionError);
}

TEST(MonteCarlo, FairCoin) {
  const auto s = monte_carlo([](Rng& rng) { return static_cast<double>(uniform_index(rng, 2)); }, 100'000, 9);
  EXPECT_NEAR(s.mean, 0.5, 4 * 0.5 / std::sqrt(100'000.0));
  EXPECT_NEAR(s.sd, 0.5, 1e-3);
}

TEST(MonteCarlo, IndependentOfWorkerCount) {
  auto draw = [](std::size_t, Rng& rng) { return rng(); };
  const auto one = run_trials<std::uint64_t>(1000, 77, draw, 1);
  const auto many = run_trials<std::uint64_t>(1000, 77, draw, 7);
  EXPECT_EQ(one, many);
  const auto other = run_trials<std::uint64_t>(1000, 78, draw, 1);
  EXPECT_NE(one, other);
}

TEST(MonteCarlo, StatsFromValues) {
  const auto s = TrialStats::from_values({1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.sd, std::sqrt(5.0 / 3.0), 1e-15);
  EXPECT_NEAR(s.std_error, std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
}

TEST(Distributions, GreedyOnOneEdge) {
  WelfareInstance w;
  w.items = 2;
  w.bidders = {cut_k2()};
  const auto d = exact_greedy_random_order(w);
  ASSERT_EQ(d.size(), 2u);
  for (const auto& [a, p] : d) {
    EXPECT_DOUBLE_EQ(p, 0.5);
    EXPECT_EQ(a.sets[0].size(), 1u);
  }
}

TEST(Distributions, SmoothPartitionSumsToOne) {
  const auto f = modular({1, 2, 3, 4});
  const PartitionStructure parts(4, {ItemSet{0, 1}, ItemSet{2, 3}});
  for (std::size_t T : {0, 1, 2, 5}) {
    const auto d = exact_smooth_rrg_partition(f, parts, T);
    double total = 0;
    for (const auto& [s, p] : d) total += p;
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
  // One iteration: part 1 gives {2}, part 2 gives {4}.
  EXPECT_DOUBLE_EQ(expected_value(f, exact_smooth_rrg_partition(f, parts, 1), 4), 3.0);
  // T -> infinity takes both parts.
  EXPECT_NEAR(expected_value(f, exact_smooth_rrg_partition(f, parts, 40), 4), 6.0, 1e-9);
}

TEST(Distributions, Gap) {
  SetDistribution a{{ItemSet{0}, 0.5}, {ItemSet{1}, 0.5}};
  SetDistribution b{{ItemSet{0}, 0.25}, {ItemSet{2}, 0.75}};
  EXPECT_DOUBLE_EQ(max_probability_gap(a, b), 0.75);
  EXPECT_DOUBLE_EQ(max_probability_gap(a, a), 0.0);
}
