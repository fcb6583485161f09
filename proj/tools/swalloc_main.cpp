// swalloc: command-line harness for generation, experiments and checks.
#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "swalloc/adversarial.hpp"
#include "swalloc/errors.hpp"
#include "swalloc/experiment.hpp"
#include "swalloc/generator.hpp"
#include "swalloc/hardness.hpp"
#include "swalloc/smooth_rrg.hpp"
#include "swalloc/suites.hpp"
#include "swalloc/verification.hpp"

namespace fs = std::filesystem;
using namespace swalloc;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::string csv;  // empty or "-": stdout
  bool quiet = false;
};

// Writes to the --csv file, or stdout.
class CsvSink {
 public:
  explicit CsvSink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string set_text(const ItemSet& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](Item e) {
    if (!first) out += ',';
    out += std::to_string(e + 1);
    first = false;
  });
  return out + "}";
}

std::vector<ProblemInstance> instances_with_matroid(const std::string& instance, const std::string& matroid) {
  auto list = load_instances(instance);
  if (!matroid.empty()) {
    for (auto& inst : list) inst.matroid = load_matroid(matroid, inst.welfare.items);
  }
  return list;
}

// Sidecar text: the optimum and its witness.
std::string opt_text(const ProblemInstance& inst) {
  std::ostringstream out;
  if (inst.matroid) {
    if (inst.welfare.bidder_count() != 1) throw PreconditionError(inst.id + ": a matroid instance needs exactly one bidder");
    const auto r = brute_force_opt_matroid(inst.welfare.bidders[0], *inst.matroid);
    out << "opt " << format_number(r.value) << "\nwitness " << set_text(r.set) << '\n';
  } else {
    const auto r = brute_force_opt_welfare(inst.welfare);
    out << "opt " << format_number(r.value) << "\nwitness " << to_string(r.allocation) << '\n';
  }
  return out.str();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) return {};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<ProblemInstance> with_matroid(const std::vector<ProblemInstance>& all, bool want) {
  std::vector<ProblemInstance> out;
  for (const auto& i : all) {
    if (static_cast<bool>(i.matroid) == want) out.push_back(i);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online submodular welfare: allocators, experiments and checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--csv", g.csv, "CSV output path (default stdout)");
  app.add_flag("--quiet", g.quiet, "Suppress summaries on stderr");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a validated instance");
  std::string family = "coverage", gen_out, gen_id;
  GeneratorSpec spec;
  gen->add_option("--family", family, "random-table | coverage | cut | priced")->capture_default_str();
  gen->add_option("--m", spec.items, "Items")->capture_default_str();
  gen->add_option("--n", spec.bidders, "Bidders")->capture_default_str();
  gen->add_option("--k", spec.parts, "Parts of a partition matroid (one function); 0 for welfare")->capture_default_str();
  gen->add_option("--wmin", spec.weight_min, "Smallest integer weight")->capture_default_str();
  gen->add_option("--wmax", spec.weight_max, "Largest integer weight")->capture_default_str();
  gen->add_option("--density", spec.density, "Cover or edge probability")->capture_default_str();
  gen->add_option("--id", gen_id, "Instance id (default: output file stem)");
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  // run
  auto* run = app.add_subcommand("run", "Run an algorithm over instances and report CSV rows");
  std::string alg = "adv", run_instance, run_matroid, order = "given", T = "auto";
  std::size_t trials = 1000;
  bool exact = false, diagnostics = false, no_check = false;
  run->add_option("--alg", alg, "adv | greedy | rrg-smooth | rrg")->capture_default_str();
  run->add_option("--instance", run_instance, "Instance file or directory")->required();
  run->add_option("--matroid", run_matroid, "Matroid file replacing the instance's matroid");
  run->add_option("--order", order, "given | random | all")->capture_default_str();
  run->add_option("--trials", trials, "Monte Carlo trials")->capture_default_str();
  run->add_option("--T", T, "Smooth RRG iterations, or auto")->capture_default_str();
  run->add_flag("--exact", exact, "Exact expectation by branch enumeration");
  run->add_flag("--diagnostics", diagnostics, "Per-iteration K/P report on stderr (adv)");
  run->add_flag("--no-check", no_check, "Do not gate the exit code on the guarantees");

  // opt
  auto* opt = app.add_subcommand("opt", "Brute-force optimum");
  std::string opt_instance, opt_matroid, sidecar = "none";
  opt->add_option("--instance", opt_instance, "Instance file or directory")->required();
  opt->add_option("--matroid", opt_matroid, "Matroid file");
  opt->add_option("--sidecar", sidecar, "none | write | check (against <instance>.opt)")->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "Property suites");
  std::string suite, corpus = "corpus";
  std::size_t verify_trials = 100'000;
  verify->add_option("--suite", suite, "submodularity | sampling-lemma | lemma-kp | recursions | obs3 | coupling | bounds")
      ->required();
  verify->add_option("--corpus", corpus, "Corpus root (welfare/ and partition/)")->capture_default_str();
  verify->add_option("--trials", verify_trials, "Samples for statistical suites")->capture_default_str();

  // hardness
  auto* hard = app.add_subcommand("hardness", "Adaptive two-item construction against a deterministic allocator");
  std::string hard_alg = "greedy";
  double big_m = 100;
  hard->add_option("--alg", hard_alg, "greedy | discard | first")->capture_default_str();
  hard->add_option("--M", big_m, "Payoff M > 0")->capture_default_str();

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Closed-form lower bounds");
  std::size_t bk = 3, bi = 0;
  double bopt = 1;
  bounds->add_option("--k", bk, "Parts k >= 3")->capture_default_str();
  bounds->add_option("--i", bi, "Iteration")->capture_default_str();
  bounds->add_option("--opt", bopt, "Optimum value")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      spec.family = parse_family(family);
      spec.seed = g.seed;
      spec.id = !gen_id.empty() ? gen_id : (!gen_out.empty() ? fs::path(gen_out).stem().string() : "generated");
      const ProblemInstance inst = generate(spec);
      if (gen_out.empty()) {
        write_instance(std::cout, inst);
      } else {
        std::ofstream out(gen_out);
        if (!out) throw std::runtime_error("cannot write " + gen_out);
        write_instance(out, inst);
      }
      return 0;
    }

    if (*run) {
      ExperimentConfig cfg;
      cfg.instances = instances_with_matroid(run_instance, run_matroid);
      cfg.alg = alg;
      cfg.order = parse_order_mode(order);
      cfg.trials = trials;
      cfg.seed = g.seed;
      cfg.exact = exact;
      cfg.check_thresholds = !no_check;
      if (T != "auto") cfg.T = static_cast<std::size_t>(std::stoull(T));
      const ExperimentResult result = run_experiment(cfg);
      CsvSink sink(g.csv);
      write_csv(sink.out(), result.rows);
      if (diagnostics && alg == "adv") {
        for (const auto& inst : cfg.instances) {
          if (inst.matroid) continue;
          const auto ref = brute_force_opt_welfare(inst.welfare).allocation;
          std::vector<std::size_t> ord(inst.welfare.items);
          for (std::size_t i = 0; i < ord.size(); ++i) ord[i] = i;
          std::cerr << "# " << inst.id << " iteration,mean_K,mean_P,stderr,holds\n";
          const auto rows = exact ? check_lemma_K_vs_P_exact(inst.welfare, ord, ref)
                                  : check_lemma_K_vs_P(inst.welfare, ord, ref, trials, g.seed);
          for (const auto& r : rows) {
            std::cerr << r.iteration << ',' << format_number(r.mean_hybrid_delta) << ',' << format_number(r.mean_profit)
                      << ',' << format_number(r.std_error) << ',' << (r.holds ? 1 : 0) << '\n';
          }
        }
      }
      if (!g.quiet) {
        std::size_t failed = 0;
        for (const auto& r : result.rows) failed += r.passed ? 0 : 1;
        std::cerr << result.rows.size() << " rows, " << failed << " below threshold\n";
      }
      return result.all_passed ? 0 : 1;
    }

    if (*opt) {
      bool ok = true;
      for (const auto& inst : instances_with_matroid(opt_instance, opt_matroid)) {
        const std::string text = opt_text(inst);
        const fs::path file = fs::is_directory(opt_instance) ? fs::path(opt_instance) / (inst.id + ".opt")
                                                              : fs::path(opt_instance).replace_extension(".opt");
        if (sidecar == "write") {
          std::ofstream(file) << text;
        } else if (sidecar == "check") {
          if (read_file(file) != text) {
            ok = false;
            std::cerr << inst.id << ": sidecar " << file.string() << " differs\n";
          }
        } else {
          std::cout << "instance " << inst.id << '\n' << text;
        }
      }
      return ok ? 0 : 1;
    }

    if (*verify) {
      const fs::path root(corpus);
      auto load_dir = [&](const char* sub) {
        const fs::path p = root / sub;
        return fs::exists(p) ? load_instances(p) : std::vector<ProblemInstance>{};
      };
      SuiteReport report;
      if (suite == "submodularity") {
        auto all = load_dir("welfare");
        for (auto& p : load_dir("partition")) all.push_back(std::move(p));
        report = suite_submodularity(all);
      } else if (suite == "sampling-lemma") {
        auto welfare = load_dir("welfare");
        welfare.resize(std::min<std::size_t>(welfare.size(), 3));
        report = suite_sampling_lemma(1000, g.seed, welfare, std::min<std::size_t>(verify_trials, 20'000));
      } else if (suite == "lemma-kp") {
        report = suite_lemma_kp(load_dir("welfare"));
      } else if (suite == "recursions") {
        std::vector<ProblemInstance> k3;
        for (auto& p : load_dir("partition")) {
          if (p.matroid->rank() == 3) k3.push_back(std::move(p));
        }
        report = suite_recursions(k3, verify_trials, g.seed);
      } else if (suite == "obs3") {
        report = suite_obs3(std::max<std::size_t>(verify_trials, 2), g.seed);
      } else if (suite == "coupling") {
        const auto partition = load_dir("partition");
        const ProblemInstance* k3 = nullptr;
        for (const auto& p : partition) {
          if (!k3 && p.matroid->rank() == 3) k3 = &p;
        }
        if (!k3) throw std::runtime_error("coupling needs a k = 3 partition instance under " + (root / "partition").string());
        report = suite_coupling(*k3, 5, verify_trials, g.seed, load_dir("welfare"));
      } else if (suite == "bounds") {
        report = suite_bounds();
      } else {
        throw DomainError("unknown suite '" + suite + "'");
      }
      CsvSink sink(g.csv);
      write_csv(sink.out(), report);
      if (!g.quiet) std::cerr << report.rows.size() << " checks, " << report.failures() << " failed\n";
      return report.passed() ? 0 : 1;
    }

    if (*hard) {
      std::unique_ptr<OnlineAllocator> a;
      if (hard_alg == "greedy") {
        a = std::make_unique<GreedyAllocator>();
      } else if (hard_alg == "discard") {
        a = std::make_unique<DiscardAllocator>();
      } else if (hard_alg == "first") {
        a = std::make_unique<FirstBidderAllocator>();
      } else {
        throw DomainError("unknown allocator '" + hard_alg + "'");
      }
      const auto r = run_hardness(*a, big_m);
      std::cout << "alg " << a->name() << "\nM " << format_number(big_m) << "\nv1_assigned " << (r.v1_assigned ? 1 : 0)
                << "\nalg_value " << format_number(r.alg_value) << "\nopt_value " << format_number(r.opt_value)
                << "\nratio " << format_number(r.ratio) << '\n';
      return 0;
    }

    if (*bounds) {
      const auto c = bound_constants();
      const auto b = closed_form_bounds(bk, bi, bopt);
      std::cout << "a " << format_number(c.a) << "\nb " << format_number(c.b) << "\nx_star " << format_number(c.x_star)
                << "\ndefault_T " << default_T(bk) << "\nbound_set " << format_number(b.bound_set) << "\nbound_union "
                << format_number(b.bound_union) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "swalloc: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
