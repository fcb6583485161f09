#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace swalloc {

using Rng = std::mt19937_64;

/// Seed for trial `index` of an experiment with master seed `master`
/// (splitmix64 finaliser over both inputs). Independent of scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

inline Rng make_rng(std::uint64_t master, std::uint64_t index) { return Rng(derive_seed(master, index)); }

/// Rank r >= 1 with Pr[r] = 2^-r exactly: the position of the lowest set bit
/// of one 64-bit draw. Returns 65 for the all-zero draw (probability 2^-64).
std::size_t sample_dyadic_rank(Rng& rng);

/// Uniform integer in [0, n), unbiased by rejection; n >= 1.
std::size_t uniform_index(Rng& rng, std::size_t n);

/// Uniform double in (0, 1] with 53 random bits.
double uniform_open_closed(Rng& rng);

inline constexpr std::uint64_t kInfiniteDraw = std::numeric_limits<std::uint64_t>::max();

/// Geometric draw on {1, 2, ...} with success probability p, by inverse CDF
/// ceil(ln u / ln(1-p)). p == 1 gives 1; p == 0 gives kInfiniteDraw.
std::uint64_t sample_geometric(Rng& rng, double p);

/// Uniform random permutation of 0..n-1 (Fisher-Yates on uniform_index).
std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n);

}  // namespace swalloc
