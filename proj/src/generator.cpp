#include "swalloc/generator.hpp"

#include <algorithm>
#include <functional>

#include "swalloc/errors.hpp"
#include "swalloc/random.hpp"

namespace swalloc {

Family parse_family(const std::string& name) {
  if (name == "random-table") return Family::RandomTable;
  if (name == "coverage") return Family::Coverage;
  if (name == "cut") return Family::Cut;
  if (name == "priced") return Family::Priced;
  throw DomainError("unknown family '" + name + "'");
}

std::string family_name(Family family) {
  switch (family) {
    case Family::RandomTable: return "random-table";
    case Family::Coverage: return "coverage";
    case Family::Cut: return "cut";
    case Family::Priced: return "priced";
  }
  return "?";
}

namespace {

class Draw {
 public:
  explicit Draw(const GeneratorSpec& spec) : spec_(spec), rng_(spec.seed) {}

  double weight() {
    const auto span = static_cast<std::size_t>(spec_.weight_max - spec_.weight_min) + 1;
    return static_cast<double>(spec_.weight_min + static_cast<std::int64_t>(uniform_index(rng_, span)));
  }
  bool coin(double p) { return uniform_open_closed(rng_) <= p; }
  std::size_t index(std::size_t n) { return uniform_index(rng_, n); }
  Rng& rng() { return rng_; }

  void count_attempt() {
    if (++attempts_ > spec_.max_attempts) {
      throw GenerationError(spec_.id + ": no valid " + family_name(spec_.family) + " function after " +
                            std::to_string(spec_.max_attempts) + " attempts");
    }
  }

 private:
  const GeneratorSpec& spec_;
  Rng rng_;
  std::size_t attempts_ = 0;
};

bool valid(const SetFunction& f) {
  if (f.ground_size() > kMaxTableItems) return true;  // structured families only; valid by construction
  const TableFunction t = materialize(f);
  return is_nonnegative(t) && is_submodular(t).submodular;
}

CoverageFunction draw_coverage(Draw& d, std::size_t m, double density) {
  const std::size_t universe = m + 2;
  std::vector<double> weights(universe);
  for (auto& w : weights) w = d.weight();
  std::vector<ItemSet> covers(m);
  for (auto& c : covers) {
    for (std::size_t e = 0; e < universe; ++e) {
      if (d.coin(density)) c.insert(e);
    }
    if (c.empty()) c.insert(d.index(universe));
  }
  return CoverageFunction(std::move(weights), std::move(covers));
}

CutFunction draw_cut(Draw& d, std::size_t m, double density) {
  std::vector<WeightedEdge> edges;
  for (Item a = 0; a < m; ++a) {
    for (Item b = a + 1; b < m; ++b) {
      if (d.coin(density)) edges.push_back({a, b, d.weight()});
    }
  }
  return CutFunction(m, std::move(edges));
}

// Coverage minus prices; prices that make some subset negative are redrawn.
PricedFunction draw_priced(Draw& d, std::size_t m, double density) {
  while (true) {
    d.count_attempt();
    CoverageFunction base = draw_coverage(d, m, density);
    std::vector<double> prices(m);
    for (Item i = 0; i < m; ++i) {
      const double cap = base.value(ItemSet{i});
      prices[i] = static_cast<double>(d.index(static_cast<std::size_t>(cap) + 1));
    }
    try {
      return PricedFunction(std::move(base), std::move(prices));
    } catch (const DomainError&) {
    }
  }
}

// A cut or priced table, then perturbed: the value of the full set is lowered
// and one random subset moves by ±1. Perturbations failing validation are redrawn.
TableFunction draw_table(Draw& d, std::size_t m, double density) {
  const TableFunction base = d.coin(0.5) ? materialize(draw_cut(d, m, density)) : materialize(draw_priced(d, m, density));
  const std::uint64_t subsets = std::uint64_t{1} << m;
  while (true) {
    d.count_attempt();
    std::vector<double> values = base.values();
    values[subsets - 1] -= static_cast<double>(d.index(3));
    const std::uint64_t s = d.index(subsets);
    values[s] += d.coin(0.5) ? 1.0 : -1.0;
    TableFunction t(m, std::move(values));
    if (is_nonnegative(t) && is_submodular(t).submodular) return t;
  }
}

SetFunctionPtr draw_function(Draw& d, const GeneratorSpec& spec, std::size_t m) {
  while (true) {
    SetFunctionPtr f;
    switch (spec.family) {
      case Family::Coverage: f = std::make_shared<const CoverageFunction>(draw_coverage(d, m, spec.density)); break;
      case Family::Cut: f = std::make_shared<const CutFunction>(draw_cut(d, m, spec.density)); break;
      case Family::Priced: f = std::make_shared<const PricedFunction>(draw_priced(d, m, spec.density)); break;
      case Family::RandomTable: f = std::make_shared<const TableFunction>(draw_table(d, m, spec.density)); break;
    }
    if (valid(*f)) return f;
    d.count_attempt();
  }
}

std::vector<ItemSet> draw_parts(Draw& d, std::size_t m, std::size_t k) {
  const auto perm = random_permutation(d.rng(), m);
  std::vector<ItemSet> parts(k);
  for (std::size_t t = 0; t < m; ++t) parts[t < k ? t : d.index(k)].insert(perm[t]);
  return parts;
}

}  // namespace

ProblemInstance generate(const GeneratorSpec& spec) {
  if (spec.weight_min < 0 || spec.weight_max < spec.weight_min) throw DomainError("weight range must satisfy 0 <= min <= max");
  if (!(spec.density >= 0 && spec.density <= 1)) throw DomainError("density must lie in [0, 1]");
  const bool needs_table = spec.family == Family::RandomTable || spec.family == Family::Priced;
  if (needs_table && spec.items > kMaxTableItems) {
    throw PreconditionError(family_name(spec.family) + " instances are validated exhaustively and need m <= 20");
  }
  if (spec.parts > spec.items) throw DomainError("a partition needs at least one element per part");

  Draw d(spec);
  ProblemInstance out;
  out.id = spec.id;
  out.welfare.items = spec.items;
  const std::size_t n = spec.parts > 0 ? 1 : spec.bidders;
  for (std::size_t j = 0; j < n; ++j) out.welfare.bidders.emplace_back(draw_function(d, spec, spec.items));
  if (spec.parts > 0) {
    out.matroid = std::make_shared<const PartitionMatroid>(PartitionStructure(spec.items, draw_parts(d, spec.items, spec.parts)));
  }
  return out;
}

}  // namespace swalloc
