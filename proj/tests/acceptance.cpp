// Acceptance run: one [PASS]/[FAIL] line per criterion, exit 1 if any fails.
// Usage: swalloc_acceptance [corpus-root]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "swalloc/adversarial.hpp"
#include "swalloc/experiment.hpp"
#include "swalloc/hardness.hpp"
#include "swalloc/smooth_rrg.hpp"
#include "swalloc/suites.hpp"
#include "swalloc/verification.hpp"

using namespace swalloc;
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kTrials = 100'000;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool passed = true;
  std::string detail;
};

std::string fmt(double v, int precision = 6) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

Outcome from_report(const SuiteReport& r) {
  Outcome o;
  o.passed = r.passed();
  o.detail = std::to_string(r.rows.size()) + " checks, " + std::to_string(r.failures()) + " failed";
  for (const auto& row : r.rows) {
    if (!row.passed) {
      o.detail += "; first failure: " + row.check + " value " + fmt(row.value) + " bound " + fmt(row.bound);
      break;
    }
  }
  return o;
}

Outcome from_rows(const ExperimentResult& r) {
  Outcome o;
  o.passed = r.all_passed;
  double worst = INFINITY;
  std::string where;
  for (const auto& row : r.rows) {
    if (!std::isnan(row.ratio_lower) && row.ratio_lower < worst) {
      worst = row.ratio_lower;
      where = row.instance_id + " " + row.order_id;
    }
  }
  o.detail = std::to_string(r.rows.size()) + " rows, min ratio_lower " + fmt(worst) + " (" + where + ")";
  return o;
}

std::vector<ProblemInstance> with_rank(const std::vector<ProblemInstance>& all, std::size_t k) {
  std::vector<ProblemInstance> out;
  for (const auto& p : all) {
    if (p.matroid && p.matroid->rank() == k) out.push_back(p);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path root = argc > 1 ? fs::path(argv[1]) : fs::path(SWALLOC_CORPUS_DIR);
  const auto welfare = load_instances(root / "welfare");
  const auto partition = load_instances(root / "partition");
  std::size_t failures = 0;

  auto criterion = [&](int id, const std::string& name, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.passed) ++failures;
    std::printf("[%s] %2d %s: %s [%.1fs]\n", o.passed ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  };

  criterion(1, "adversarial 1/4 over every order", [&] {
    ExperimentConfig cfg;
    cfg.instances = welfare;
    cfg.alg = "adv";
    cfg.order = OrderMode::All;
    cfg.seed = kSeed;
    cfg.exact = true;
    const auto exact = run_experiment(cfg);
    const auto start = std::chrono::steady_clock::now();
    cfg.exact = false;
    cfg.trials = kTrials;
    const auto sampled = run_experiment(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Outcome o = from_rows(exact);
    const Outcome mc = from_rows(sampled);
    o.passed = o.passed && mc.passed && secs <= 300.0;
    o.detail = "exact " + o.detail + "; Monte Carlo " + mc.detail + " in " + fmt(secs, 3) + "s";
    return o;
  });

  criterion(2, "random-order greedy 0.27493", [&] {
    ExperimentConfig cfg;
    cfg.instances = welfare;
    cfg.alg = "greedy";
    cfg.order = OrderMode::Random;
    cfg.trials = kTrials;
    cfg.seed = kSeed;
    return from_rows(run_experiment(cfg));
  });

  criterion(3, "smooth RRG 0.27493 on partition matroids", [&] {
    ExperimentConfig cfg;
    for (std::size_t k : {3, 4, 5}) {
      for (auto& p : with_rank(partition, k)) cfg.instances.push_back(std::move(p));
    }
    cfg.alg = "rrg-smooth";
    cfg.trials = kTrials;
    cfg.seed = kSeed;
    Outcome o = from_rows(run_experiment(cfg));
    if (cfg.instances.empty()) o = {false, "no k in {3,4,5} partition instances"};
    return o;
  });

  criterion(4, "constants", [&] {
    const auto c = bound_constants();
    const double r = limit_ratio();
    Outcome o;
    o.passed = r >= 0.27492 && r <= 0.27494 && std::abs(c.a - 0.381966) <= 1e-6 && std::abs(c.b - 2.61803) <= 1e-5;
    o.detail = "a " + fmt(c.a, 10) + ", b " + fmt(c.b, 10) + ", x* " + fmt(c.x_star, 10) + ", ratio " + fmt(r, 12);
    return o;
  });

  criterion(5, "E[K] <= 2 E[P] exactly", [&] {
    std::vector<ProblemInstance> three(welfare.begin(), welfare.begin() + std::min<std::size_t>(3, welfare.size()));
    Outcome o = from_report(suite_lemma_kp(three));
    if (three.size() < 3) o = {false, "fewer than 3 welfare instances"};
    return o;
  });

  criterion(6, "joint recursions and closed form", [&] {
    const auto k3 = with_rank(partition, 3);
    Outcome o = from_report(suite_recursions(k3, kTrials, kSeed));
    if (k3.empty()) o = {false, "no k = 3 partition instances"};
    return o;
  });

  criterion(7, "per-element selection probability 1/k", [&] { return from_report(suite_obs3(1'000'000, kSeed)); });

  criterion(8, "geometric coupling and original RRG = random-order greedy", [&] {
    const auto k3 = with_rank(partition, 3);
    if (k3.empty()) return Outcome{false, "no k = 3 partition instance"};
    return from_report(suite_coupling(k3.front(), 5, kTrials, kSeed, welfare));
  });

  criterion(9, "deterministic hardness", [&] {
    GreedyAllocator greedy;
    DiscardAllocator discard;
    const auto g = run_hardness(greedy, 100);
    const auto d = run_hardness(discard, 100);
    Outcome o;
    o.passed = g.ratio <= 0.01 && d.ratio == 0.0 && is_submodular(g.committed_table).submodular &&
               is_submodular(d.committed_table).submodular;
    o.detail = "greedy ratio " + fmt(g.ratio) + ", discard ratio " + fmt(d.ratio);
    return o;
  });

  criterion(10, "sampling bound on 1000 random tables", [&] { return from_report(suite_sampling_lemma(1000, kSeed)); });

  criterion(11, "random order beats adversarial worst order (informational)", [&] {
    double greedy_sum = 0, adv_sum = 0;
    std::size_t counted = 0;
    for (const auto& inst : welfare) {
      const double opt = brute_force_opt_welfare(inst.welfare).value;
      if (opt <= 0) continue;
      double g = 0;
      for (const auto& [alloc, p] : exact_greedy_random_order(inst.welfare)) g += p * welfare_uncounted(inst.welfare, alloc);
      const auto worst = worst_order(inst.welfare, experiment_orders(inst.welfare.items, kSeed));
      greedy_sum += g / opt;
      adv_sum += worst.expected_welfare / opt;
      ++counted;
    }
    const double n = static_cast<double>(counted);
    Outcome o;
    o.passed = counted > 0 && greedy_sum / n > adv_sum / n;
    o.detail = "mean greedy ratio " + fmt(greedy_sum / n) + " vs mean worst-order adversarial ratio " + fmt(adv_sum / n);
    return o;
  });

  std::printf("%zu of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
