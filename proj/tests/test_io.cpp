#include <gtest/gtest.h>

#include <filesystem>

#include "swalloc/errors.hpp"
#include "swalloc/generator.hpp"
#include "swalloc/instance_io.hpp"

using namespace swalloc;

namespace {

const std::filesystem::path kCorpus = SWALLOC_CORPUS_DIR;

int parse_error_line(const std::string& text) {
  try {
    parse_instance_string(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

void expect_same_values(const ProblemInstance& a, const ProblemInstance& b) {
  ASSERT_EQ(a.welfare.items, b.welfare.items);
  ASSERT_EQ(a.welfare.bidder_count(), b.welfare.bidder_count());
  for (std::size_t j = 0; j < a.welfare.bidder_count(); ++j) {
    const auto ta = materialize(a.welfare.bidders[j].function());
    const auto tb = materialize(b.welfare.bidders[j].function());
    EXPECT_EQ(ta.values(), tb.values());
  }
  ASSERT_EQ(static_cast<bool>(a.matroid), static_cast<bool>(b.matroid));
  if (a.matroid) {
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << a.welfare.items); ++x) {
      const ItemSet s = ItemSet::from_mask(x);
      EXPECT_EQ(a.matroid->is_independent(s), b.matroid->is_independent(s));
    }
  }
}

}  // namespace

TEST(Parse, EveryBidderKind) {
  const auto p = parse_instance_string(R"(swinstance 1
items 2
bidders 4
# comments and blank lines are ignored

bidder 1 table
values 0 1 1 1.5
bidder 2 coverage
universe 2
weights 1 2
covers 1: 1
covers 2: 1 2
bidder 3 cut
edge 1 2 0.5
bidder 4 priced
universe 1
weights 3
covers 1: 1
covers 2: 1
prices 1 1
)");
  ASSERT_EQ(p.welfare.bidder_count(), 4u);
  EXPECT_EQ(p.welfare.bidders[0].function().value(ItemSet{0, 1}), 1.5);
  EXPECT_EQ(p.welfare.bidders[1].function().value(ItemSet{0}), 1.0);
  EXPECT_EQ(p.welfare.bidders[1].function().value(ItemSet{1}), 3.0);
  EXPECT_EQ(p.welfare.bidders[2].function().value(ItemSet{1}), 0.5);
  EXPECT_EQ(p.welfare.bidders[3].function().value(ItemSet{0, 1}), 1.0);
  EXPECT_FALSE(p.matroid);
}

TEST(Parse, Matroids) {
  const std::string head = "swinstance 1\nitems 3\nbidders 1\nbidder 1 cut\n";
  const auto part = parse_instance_string(head + "matroid partition\npart 1: 1 3\npart 2: 2\n");
  EXPECT_EQ(part.matroid->kind(), "partition");
  EXPECT_FALSE(part.matroid->is_independent(ItemSet{0, 2}));
  EXPECT_TRUE(part.matroid->is_independent(ItemSet{0, 1}));
  const auto uni = parse_instance_string(head + "matroid uniform 2\n");
  EXPECT_EQ(uni.matroid->rank(), 2u);
  const auto tab = parse_instance_string(head + "matroid table\nindependent: 1 2 ; 2 3\n");
  EXPECT_TRUE(tab.matroid->is_independent(ItemSet{1}));
  EXPECT_FALSE(tab.matroid->is_independent(ItemSet{0, 2}));
}

TEST(Parse, ErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line(""), 1);
  EXPECT_EQ(parse_error_line("swinstance 2\n"), 1);
  EXPECT_EQ(parse_error_line("swinstance 1\nitems x\n"), 2);
  EXPECT_EQ(parse_error_line("swinstance 1\nitems 2\nbidders 1\nbidder 1 magic\n"), 4);
  EXPECT_EQ(parse_error_line("swinstance 1\nitems 2\nbidders 1\nbidder 1 cut\nedge 1 3 1\n"), 5);
  EXPECT_EQ(parse_error_line("swinstance 1\nitems 2\nbidders 1\nbidder 1 cut\nedge 1 1 1\n"), 5);
  EXPECT_EQ(parse_error_line("swinstance 1\nitems 2\nbidders 1\nbidder 1 cut\nedge 1 2 -1\n"), 5);
  // Not submodular: item 1 gains more once item 2 is present.
  EXPECT_EQ(parse_error_line("swinstance 1\nitems 2\nbidders 1\nbidder 1 table\nvalues 0 1 1 3\n"), 5);
  EXPECT_EQ(parse_error_line("swinstance 1\nitems 2\nbidders 1\nbidder 1 table\nvalues 0 1 1\n"), 5);
  EXPECT_EQ(parse_error_line("swinstance 1\nitems 2\nbidders 2\nbidder 1 cut\n"), 4);
  EXPECT_EQ(parse_error_line("swinstance 1\nitems 2\nbidders 1\nbidder 1 cut\nbidder 1 cut\n"), 5);
  EXPECT_EQ(parse_error_line("swinstance 1\nitems 2\nbidders 1\nbidder 1 cut\nmatroid graphic\n"), 5);
  EXPECT_EQ(parse_error_line("swinstance 1\nitems 2\nbidders 1\nbidder 1 cut\nmatroid partition\npart 1: 1\n"), 5);
  EXPECT_EQ(
      parse_error_line("swinstance 1\nitems 3\nbidders 1\nbidder 1 cut\nmatroid table\nindependent: 1 2 ; 3\n"), 5);
  // Priced bidder negative somewhere.
  EXPECT_EQ(parse_error_line("swinstance 1\nitems 1\nbidders 1\nbidder 1 priced\nuniverse 1\nweights 1\n"
                             "covers 1: 1\nprices 2\n"),
            4);
}

TEST(Write, RoundTripsTheCorpus) {
  for (const auto& dir : {"welfare", "partition"}) {
    for (const auto& file : instance_files(kCorpus / dir)) {
      const auto a = load_instance(file);
      const auto text = to_text(a);
      const auto b = parse_instance_string(text, a.id);
      expect_same_values(a, b);
      EXPECT_EQ(to_text(b), text) << file;
    }
  }
}

TEST(Write, GraphicMatroidIsTabulated) {
  ProblemInstance p;
  p.id = "g";
  p.welfare.items = 3;
  p.welfare.bidders.push_back(SubmodularOracle::of(CutFunction(3, {})));
  p.matroid = std::make_shared<const GraphicMatroid>(3, std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}, {0, 2}});
  const auto text = to_text(p);
  EXPECT_NE(text.find("matroid table"), std::string::npos);
  expect_same_values(p, parse_instance_string(text));
}

TEST(Write, NumbersRoundTrip) {
  for (double v : {0.0, 1.0, 0.1, 1.0 / 3.0, 12345.678, 1e-300}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
  EXPECT_EQ(format_number(3.0), "3");
}

TEST(Files, MissingPath) {
  EXPECT_THROW(instance_files("/nonexistent/swalloc"), std::runtime_error);
  EXPECT_THROW(load_instance("/nonexistent/x.inst"), std::runtime_error);
}
