// dfo-sparse: benchmark and experiment driver for the sparse-model
// trust-region toolkit.
#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "dfo/bench.hpp"

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void list_problems() {
  std::printf("%-20s %5s %6s\n", "name", "n", "NNZH");
  for (const auto& name : dfo::problem_names()) {
    const dfo::Problem p = dfo::get_problem(name);
    const int nnz = dfo::hessian_nnz(p, p.start);
    std::printf("%-20s %5d %6d\n", p.name.c_str(), p.n, nnz);
  }
}

int run_bench(const std::string& problems_arg, const std::string& solvers_arg,
              const std::string& acc_arg, long budget, const std::string& preset_name,
              std::uint64_t seed, const std::string& out_dir, int threads) {
  dfo::BenchPreset preset =
      preset_name == "table3" ? dfo::BenchPreset::table3() : dfo::BenchPreset::table1();
  if (budget > 0) preset.budget = budget;

  std::vector<dfo::Problem> probs;
  if (problems_arg == "all") {
    for (const auto& name : dfo::problem_names()) {
      dfo::Problem p = dfo::get_problem(name);
      if (p.f_best) probs.push_back(std::move(p));
    }
  } else {
    for (const auto& spec : split_list(problems_arg)) {
      // NAME or NAME:n
      const auto colon = spec.find(':');
      const std::string name = spec.substr(0, colon);
      const int n = colon == std::string::npos ? 0 : std::stoi(spec.substr(colon + 1));
      probs.push_back(dfo::get_problem(name, n));
    }
  }

  std::vector<int> ts;
  for (const auto& s : split_list(solvers_arg)) {
    if (s == "frob") ts.push_back(2);
    else if (s == "l1") ts.push_back(1);
    else throw CLI::ValidationError("--solvers", "unknown solver " + s);
  }

  std::vector<int> accs;
  for (const auto& a : split_list(acc_arg)) accs.push_back(std::stoi(a));

  for (size_t ai = 0; ai < accs.size(); ++ai) {
    const int acc = accs[ai];
    const auto records = dfo::run_benchmark(probs, ts, acc, preset, seed, threads);
    const dfo::ProfileTable profile = dfo::performance_profile(records);
    const std::string dir =
        accs.size() == 1 ? out_dir : out_dir + "/acc" + std::to_string(acc);
    dfo::emit_outputs(&records, &profile, nullptr, dir);
    std::printf("acc=%d  (%zu records -> %s)\n", acc, records.size(), dir.c_str());
    for (const auto& r : records) {
      std::printf("  %-12s n=%-3d %-12s fevals=%-6ld final_f=%-13.6g %s  (%.2fs, pass %d)\n",
                  r.problem.c_str(), r.n, r.solver.c_str(), r.fevals, r.final_f,
                  r.success ? "OK" : "FAIL", r.wall_seconds, r.pass_used);
    }
  }
  return 0;
}

int run_recover(int n, int h, const std::string& p_grid, int trials, double delta,
                std::uint64_t seed, const std::string& out_dir) {
  std::vector<dfo::RecoveryReport> reports;
  for (const auto& ps : split_list(p_grid)) {
    const int p = std::stoi(ps);
    reports.push_back(dfo::sparse_hessian_recovery_experiment(n, h, p, trials, delta, seed));
    std::printf("n=%d h=%d p=%-3d trials=%d  success rate %.3f\n", n, h, p, trials,
                reports.back().success_rate);
  }
  dfo::emit_outputs(nullptr, nullptr, &reports, out_dir);
  std::printf("wrote %s/recovery.csv\n", out_dir.c_str());
  return 0;
}

int run_solve(const std::string& name, int n, const std::string& solver, bool trace) {
  const dfo::Problem prob = dfo::get_problem(name, n);
  dfo::DfoConfig cfg;
  cfg.t = solver == "l1" ? 1 : 2;
  const dfo::DfoTrace tr = dfo::run_dfo_tr(prob.objective, prob.start, cfg);
  if (trace) {
    std::printf("%4s %14s %12s %5s %12s %9s %5s\n", "k", "f", "delta", "|Y|", "rho", "gnorm",
                "nf");
    for (const auto& it : tr.iters)
      std::printf("%4d %14.6e %12.4e %5d %12.4e %9.2e %5ld\n", it.k, it.f, it.delta, it.y_size,
                  it.rho, it.gnorm, it.fevals);
  }
  std::printf("%s n=%d solver=%s: f=%.12e gnorm=%.3e fevals=%ld stop=%s\n", prob.name.c_str(),
              prob.n, dfo::solver_label(cfg.t), tr.final_f, tr.final_gnorm, tr.fevals,
              dfo::stop_reason_name(tr.reason));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"derivative-free trust-region optimization with sparse quadratic models"};
  app.set_help_flag("--help", "print help and exit");  // frees -h for recover --h
  app.require_subcommand(0, 1);

  bool do_list = false;
  app.add_flag("--list-problems", do_list, "list the problem registry and exit");

  auto* bench = app.add_subcommand("bench", "run solver variants over the registry");
  std::string problems = "all", solvers = "frob,l1", acc = "6", preset = "table1";
  std::string out_dir = "out";
  long budget = 0;
  std::uint64_t seed = 0;
  int threads = 0;
  bench->add_option("--problems", problems, "comma list of NAME or NAME:n, or 'all'");
  bench->add_option("--solvers", solvers, "comma list from {frob,l1}");
  bench->add_option("--acc", acc, "comma list of accuracy exponents");
  bench->add_option("--budget", budget, "evaluation budget override");
  bench->add_option("--preset", preset, "table1 | table3")
      ->check(CLI::IsMember({"table1", "table3"}));
  bench->add_option("--seed", seed, "master seed");
  bench->add_option("--out", out_dir, "output directory");
  bench->add_option("--threads", threads, "worker threads (0 = hardware)");

  auto* recover = app.add_subcommand("recover", "sparse-Hessian recovery experiment");
  int rn = 10, rh = 5, trials = 100;
  double rdelta = 1.0;
  std::string p_grid = "25,35,45,55,66";
  std::string rout = "out";
  std::uint64_t rseed = 0;
  recover->add_option("--n", rn, "dimension");
  recover->add_option("--h", rh, "Hessian sparsity level");
  recover->add_option("--p-grid", p_grid, "comma list of sample counts");
  recover->add_option("--trials", trials, "trials per sample count");
  recover->add_option("--delta", rdelta, "hypercube radius");
  recover->add_option("--seed", rseed, "master seed");
  recover->add_option("--out", rout, "output directory");

  auto* solve = app.add_subcommand("solve", "run one solver on one problem");
  std::string sname, ssolver = "l1";
  int sn = 0;
  bool strace = false;
  solve->add_option("--problem", sname, "problem name")->required();
  solve->add_option("--n", sn, "dimension (0 = registry default)");
  solve->add_option("--solver", ssolver, "frob | l1")->check(CLI::IsMember({"frob", "l1"}));
  solve->add_flag("--trace", strace, "print the per-iteration trace");

  CLI11_PARSE(app, argc, argv);

  try {
    if (do_list) {
      list_problems();
      return 0;
    }
    if (bench->parsed()) return run_bench(problems, solvers, acc, budget, preset, seed, out_dir, threads);
    if (recover->parsed()) return run_recover(rn, rh, p_grid, trials, rdelta, rseed, rout);
    if (solve->parsed()) return run_solve(sname, sn, ssolver, strace);
    std::printf("%s\n", app.help().c_str());
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
