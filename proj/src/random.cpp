#include "swalloc/random.hpp"

#include <bit>
#include <cmath>
#include <numeric>

#include "swalloc/errors.hpp"

namespace swalloc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ (index * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL));
}

std::size_t sample_dyadic_rank(Rng& rng) {
  const std::uint64_t bits = rng();
  if (bits == 0) return 65;
  return static_cast<std::size_t>(std::countr_zero(bits)) + 1;
}

std::size_t uniform_index(Rng& rng, std::size_t n) {
  if (n == 0) throw PreconditionError("uniform_index over an empty range");
  const std::uint64_t range = n;
  // Largest multiple of n that fits; draws at or above it are redrawn.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              (std::numeric_limits<std::uint64_t>::max() % range + 1) % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return static_cast<std::size_t>(x % range);
}

double uniform_open_closed(Rng& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

std::uint64_t sample_geometric(Rng& rng, double p) {
  if (p >= 1.0) return 1;
  if (p <= 0.0) return kInfiniteDraw;
  const double u = uniform_open_closed(rng);
  const double draw = std::ceil(std::log(u) / std::log1p(-p));
  if (draw < 1.0) return 1;
  if (draw >= 1.8e19) return kInfiniteDraw;
  return static_cast<std::uint64_t>(draw);
}

std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_index(rng, i)]);
  return perm;
}

}  // namespace swalloc
