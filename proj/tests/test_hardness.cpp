#include <gtest/gtest.h>

#include "swalloc/errors.hpp"
#include "swalloc/hardness.hpp"

using namespace swalloc;

TEST(AdaptiveOracle, RevealsOnlyTheFirstItem) {
  AdaptiveOracle f(10);
  EXPECT_EQ(f.value(ItemSet{}), 0.0);
  EXPECT_EQ(f.value(ItemSet{0}), 1.0);
  EXPECT_THROW(f.value(ItemSet{1}), ModelViolation);
  EXPECT_THROW(f.value(ItemSet{0, 1}), ModelViolation);
  EXPECT_THROW(f.table(), PreconditionError);
}

TEST(AdaptiveOracle, BothCompletionsAreSubmodular) {
  for (bool assigned : {false, true}) {
    AdaptiveOracle f(7.5);
    f.commit(assigned);
    const auto t = f.table();
    EXPECT_TRUE(is_submodular(t)) << assigned;
    EXPECT_TRUE(is_nonnegative(t)) << assigned;
    EXPECT_THROW(f.commit(assigned), PreconditionError);
  }
}

TEST(AdaptiveOracle, RejectsNonPositiveM) {
  EXPECT_THROW(AdaptiveOracle(0), DomainError);
  EXPECT_THROW(AdaptiveOracle(-1), DomainError);
}

TEST(Hardness, GreedyTakesTheFirstItemAndLosesM) {
  GreedyAllocator greedy;
  for (double m : {1.0, 10.0, 1000.0}) {
    const auto r = run_hardness(greedy, m);
    EXPECT_TRUE(r.v1_assigned);
    EXPECT_EQ(r.alg_value, 1.0);
    EXPECT_EQ(r.opt_value, std::max(1.0, m));
    EXPECT_DOUBLE_EQ(r.ratio, 1.0 / std::max(1.0, m));
  }
}

TEST(Hardness, DiscardingGetsZero) {
  DiscardAllocator discard;
  const auto r = run_hardness(discard, 100);
  EXPECT_FALSE(r.v1_assigned);
  EXPECT_EQ(r.alg_value, 0.0);
  EXPECT_EQ(r.opt_value, 1.0);
  EXPECT_EQ(r.ratio, 0.0);
}

TEST(Hardness, EveryDeterministicAllocatorIsAtMostOneOverM) {
  GreedyAllocator greedy;
  DiscardAllocator discard;
  FirstBidderAllocator first;
  const double m = 1e6;
  for (OnlineAllocator* alg : std::initializer_list<OnlineAllocator*>{&greedy, &discard, &first}) {
    EXPECT_LE(run_hardness(*alg, m).ratio, 1.0 / m) << alg->name();
  }
}

TEST(Hardness, FirstBidderTakesBothItems) {
  FirstBidderAllocator first;
  const auto r = run_hardness(first, 5);
  EXPECT_EQ(r.alg_value, 0.0);
  EXPECT_EQ(r.committed_table.at(3), 0.0);
}

TEST(Hardness, RandomizedAllocatorRefused) {
  RandomizedAllocator adv(1);
  EXPECT_THROW(run_hardness(adv, 10), PreconditionError);
}
