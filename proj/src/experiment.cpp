#include "swalloc/experiment.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "swalloc/adversarial.hpp"
#include "swalloc/errors.hpp"
#include "swalloc/reduction.hpp"
#include "swalloc/smooth_rrg.hpp"
#include "swalloc/stats.hpp"
#include "swalloc/verification.hpp"

namespace swalloc {

OrderMode parse_order_mode(const std::string& name) {
  if (name == "given") return OrderMode::Given;
  if (name == "random") return OrderMode::Random;
  if (name == "all") return OrderMode::All;
  throw DomainError("unknown order mode '" + name + "'");
}

std::vector<std::vector<std::size_t>> experiment_orders(std::size_t items, std::uint64_t seed) {
  if (items <= 5) return all_orders(items);
  constexpr std::uint64_t kOrderStream = 0x6f72646572ULL;
  const std::uint64_t master = derive_seed(seed, kOrderStream);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t o = 0; o < 50; ++o) {
    Rng rng = make_rng(master, o);
    out.push_back(random_permutation(rng, items));
  }
  return out;
}

std::string order_id(const std::vector<std::size_t>& order) {
  std::string s;
  for (std::size_t t = 0; t < order.size(); ++t) {
    if (t > 0) s += '-';
    s += std::to_string(order[t] + 1);
  }
  return s;
}

double algorithm_threshold(const std::string& alg) {
  if (alg == "adv" || alg == "rrg") return kAdversarialRatio;
  if (alg == "greedy" || alg == "rrg-smooth") return kRandomOrderRatio;
  throw DomainError("unknown algorithm '" + alg + "'");
}

namespace {

std::vector<std::size_t> identity_order(std::size_t m) {
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  return order;
}

// The maximisation view used by the RRG variants: the instance's own matroid
// with its single function, or the welfare reduction.
struct MatroidProblem {
  SubmodularOracle f;
  MatroidPtr matroid;
  const PartitionStructure* parts = nullptr;
};

MatroidProblem matroid_problem(const ProblemInstance& inst) {
  if (inst.matroid) {
    if (inst.welfare.bidder_count() != 1) throw PreconditionError(inst.id + ": a matroid instance needs exactly one bidder");
    MatroidProblem p{inst.welfare.bidders[0], inst.matroid, nullptr};
    if (const auto* pm = dynamic_cast<const PartitionMatroid*>(inst.matroid.get())) p.parts = &pm->structure();
    return p;
  }
  WelfareReduction red = reduce(inst.welfare);
  MatroidProblem p{SubmodularOracle(red.function), red.matroid, &red.matroid->structure()};
  return p;
}

double optimum(const ProblemInstance& inst) {
  if (inst.matroid) {
    if (inst.welfare.bidder_count() != 1) throw PreconditionError(inst.id + ": a matroid instance needs exactly one bidder");
    SubmodularOracle f(inst.welfare.bidders[0].function_ptr());
    return brute_force_opt_matroid(f, *inst.matroid).value;
  }
  return brute_force_opt_welfare(inst.welfare).value;
}

ExperimentRow make_row(const ProblemInstance& inst, const ExperimentConfig& cfg, std::string oid, double opt) {
  ExperimentRow row;
  row.instance_id = inst.id;
  row.alg = cfg.alg;
  row.order_id = std::move(oid);
  row.trials = cfg.exact ? 0 : cfg.trials;
  row.seed = cfg.seed;
  row.opt = opt;
  return row;
}

void finish_row(ExperimentRow& row, double mean, double se, bool checked) {
  row.mean_welfare = mean;
  row.std_error = se;
  const double lower = mean - 3.0 * se;
  row.ratio_lower = row.opt > 0 ? lower / row.opt : std::numeric_limits<double>::quiet_NaN();
  row.threshold = checked ? algorithm_threshold(row.alg) : 0.0;
  if (!checked) {
    row.passed = true;
  } else if (row.opt > 0) {
    row.passed = lower >= row.threshold * row.opt;
  } else {
    row.passed = lower >= -kValueTolerance;
  }
}

void sampled_row(ExperimentRow& row, const ExperimentConfig& cfg, bool checked,
                 const std::function<double(Rng&)>& trial) {
  const TrialStats s = monte_carlo(trial, cfg.trials, cfg.seed);
  finish_row(row, s.mean, s.std_error, checked);
}

void run_welfare_alg(const ProblemInstance& inst, const ExperimentConfig& cfg, double opt,
                     std::vector<ExperimentRow>& rows) {
  if (inst.matroid) throw PreconditionError(inst.id + ": " + cfg.alg + " runs on welfare instances without a matroid");
  const WelfareInstance& w = inst.welfare;
  const bool adv = cfg.alg == "adv";
  auto fixed_order_row = [&](const std::vector<std::size_t>& order) {
    ExperimentRow row = make_row(inst, cfg, order_id(order), opt);
    if (adv) {
      if (cfg.exact) {
        finish_row(row, exact_adversarial(w, order).expected_welfare, 0.0, cfg.check_thresholds);
      } else {
        sampled_row(row, cfg, cfg.check_thresholds, [&](Rng& rng) { return run_adversarial(w, order, rng).welfare; });
      }
    } else {
      // Greedy on a fixed order is deterministic; there is nothing to sample.
      row.trials = cfg.exact ? 0 : 1;
      finish_row(row, deterministic_greedy(w, order).welfare, 0.0, false);
    }
    rows.push_back(std::move(row));
  };
  switch (cfg.order) {
    case OrderMode::Given: fixed_order_row(identity_order(w.items)); break;
    case OrderMode::All:
      for (const auto& order : experiment_orders(w.items, cfg.seed)) fixed_order_row(order);
      break;
    case OrderMode::Random: {
      ExperimentRow row = make_row(inst, cfg, "random", opt);
      if (cfg.exact) {
        double mean = 0;
        if (adv) {
          const auto orders = all_orders(w.items);
          for (const auto& order : orders) mean += exact_adversarial(w, order).expected_welfare;
          mean /= static_cast<double>(orders.size());
        } else {
          for (const auto& [alloc, p] : exact_greedy_random_order(w)) mean += p * welfare_uncounted(w, alloc);
        }
        finish_row(row, mean, 0.0, cfg.check_thresholds);
      } else if (adv) {
        sampled_row(row, cfg, cfg.check_thresholds, [&](Rng& rng) {
          const auto order = random_permutation(rng, w.items);
          return run_adversarial(w, order, rng).welfare;
        });
      } else {
        sampled_row(row, cfg, cfg.check_thresholds, [&](Rng& rng) { return greedy_random_order(w, rng).welfare; });
      }
      rows.push_back(std::move(row));
      break;
    }
  }
}

void run_rrg_alg(const ProblemInstance& inst, const ExperimentConfig& cfg, double opt, std::vector<ExperimentRow>& rows) {
  const MatroidProblem p = matroid_problem(inst);
  const std::size_t k = p.matroid->rank();
  const std::size_t original = p.matroid->ground_size();
  ExperimentRow row = make_row(inst, cfg, "-", opt);
  if (cfg.alg == "rrg") {
    if (cfg.exact) {
      finish_row(row, expected_value(p.f, exact_original_rrg(p.f, p.matroid), original), 0.0, cfg.check_thresholds);
    } else {
      sampled_row(row, cfg, cfg.check_thresholds, [&](Rng& rng) { return original_rrg(p.f, p.matroid, rng).value; });
    }
  } else {
    const std::size_t T = cfg.T ? *cfg.T : (k == 0 ? 0 : default_T(k));
    if (cfg.exact) {
      const SetDistribution dist = p.parts ? exact_smooth_rrg_partition(p.f, *p.parts, T)
                                           : exact_smooth_rrg_matroid(p.f, p.matroid, T);
      finish_row(row, expected_value(p.f, dist, original), 0.0, cfg.check_thresholds);
    } else if (p.parts) {
      sampled_row(row, cfg, cfg.check_thresholds,
                  [&](Rng& rng) { return smooth_rrg_partition(p.f, *p.parts, T, rng).value; });
    } else {
      sampled_row(row, cfg, cfg.check_thresholds,
                  [&](Rng& rng) { return smooth_rrg_matroid(p.f, p.matroid, T, rng).value; });
    }
  }
  rows.push_back(std::move(row));
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  algorithm_threshold(cfg.alg);  // rejects unknown algorithms
  if (!cfg.exact && cfg.trials < 2) throw PreconditionError("experiments need at least 2 trials");
  ExperimentResult result;
  for (const auto& inst : cfg.instances) {
    try {
      const double opt = optimum(inst);
      if (cfg.alg == "adv" || cfg.alg == "greedy") {
        run_welfare_alg(inst, cfg, opt, result.rows);
      } else {
        run_rrg_alg(inst, cfg, opt, result.rows);
      }
    } catch (const CapacityError& e) {
      throw CapacityError(inst.id + ": " + e.what());
    }
  }
  for (const auto& row : result.rows) result.all_passed = result.all_passed && row.passed;
  return result;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.instance_id << ',' << r.alg << ',' << r.order_id << ',' << r.trials << ',' << r.seed << ','
        << format_number(r.mean_welfare) << ',' << format_number(r.std_error) << ',' << format_number(r.opt) << ','
        << (std::isnan(r.ratio_lower) ? std::string("nan") : format_number(r.ratio_lower)) << '\n';
  }
}

std::vector<ProblemInstance> load_instances(const std::filesystem::path& path) {
  std::vector<ProblemInstance> out;
  for (const auto& file : instance_files(path)) out.push_back(load_instance(file));
  return out;
}

}  // namespace swalloc
