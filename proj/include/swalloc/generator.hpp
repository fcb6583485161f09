#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "swalloc/instance_io.hpp"

namespace swalloc {

enum class Family { RandomTable, Coverage, Cut, Priced };

Family parse_family(const std::string& name);  // "random-table", "coverage", "cut", "priced"
std::string family_name(Family family);

struct GeneratorSpec {
  Family family = Family::Coverage;
  std::size_t items = 4;    // m
  std::size_t bidders = 2;  // n; ignored when parts > 0
  /// 0: a welfare instance. k > 0: one function over `items` elements plus a
  /// random partition matroid with k parts.
  std::size_t parts = 0;
  std::int64_t weight_min = 1;
  std::int64_t weight_max = 5;
  double density = 0.5;  // cover / edge probability
  std::uint64_t seed = 1;
  std::string id = "generated";
  std::size_t max_attempts = 10'000;
};

/// Deterministic per spec. Every function is validated (non-negative and
/// submodular); the rejection-sampled families (random-table, priced) redraw
/// failing candidates and throw GenerationError once max_attempts draws are used.
ProblemInstance generate(const GeneratorSpec& spec);

}  // namespace swalloc
