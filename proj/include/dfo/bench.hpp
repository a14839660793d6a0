#pragma once

#include <map>
#include <string>
#include <vector>

#include "dfo/driver.hpp"
#include "dfo/problems.hpp"
#include "dfo/recovery.hpp"

namespace dfo {

inline const char* solver_label(int t) { return t == 1 ? "DFO-TR-l1" : "DFO-TR-Frob"; }

// One (problem, solver, accuracy) cell.
struct BenchmarkRecord {
  std::string problem;
  int n = 0;
  std::string solver;   // DFO-TR-Frob | DFO-TR-l1
  int acc = 6;          // accuracy exponent
  long fevals = 0;      // see BenchPreset for the metric
  double final_f = 0.0;
  double final_gnorm = 0.0;
  bool success = false;  // f <= f_best + 10^-acc was reached within budget
  double wall_seconds = 0.0;  // reporting only, never serialized
  int pass_used = 1;          // 1 = default tolerances, 2 = tightened rerun
};

// Benchmarking protocol.  table1: run with the default stopping tolerances
// and, if the target accuracy is not reached, rerun with eps_g = delta =
// 1e-7; the metric is the evaluation count at the first evaluation meeting
// f <= f_best + 10^-acc.  table3: single run at eps_g = delta = 1e-5 with a
// 5000-evaluation cap; the metric is the total evaluation count consumed.
struct BenchPreset {
  std::string name;
  double eps_g = 1e-5;
  double delta_stop = 1e-5;
  long budget = 15000;
  bool two_pass = true;
  double eps_tight = 1e-7;
  bool count_to_accuracy = true;

  static BenchPreset table1() { return {"table1", 1e-5, 1e-5, 15000, true, 1e-7, true}; }
  static BenchPreset table3() { return {"table3", 1e-5, 1e-5, 5000, false, 1e-7, false}; }
};

// Run every (problem, solver) cell; cells execute concurrently, output is
// canonically ordered (problem name, then solver label).  Problems must
// carry f_best.
std::vector<BenchmarkRecord> run_benchmark(const std::vector<Problem>& problems,
                                           const std::vector<int>& solver_ts, int acc,
                                           const BenchPreset& preset, std::uint64_t seed,
                                           int threads = 0);

struct ProfileTable {
  std::vector<double> tau;  // grid: 1 and every finite performance ratio
  std::vector<std::string> solvers;
  std::map<std::string, std::vector<double>> rho;  // per solver, same length as tau
};

constexpr double kProfileFailSentinel = 1073741824.0;  // 2^30

// Dolan-More profile: r_ps = t_ps / min_s t_ps, failures get the sentinel;
// rho_s(tau) = fraction of problems with r_ps <= tau.
ProfileTable performance_profile(const std::vector<BenchmarkRecord>& records);

// records.csv / profile.csv / recovery.csv, RFC-4180 with LF line endings
// and 17 significant digits.  Null pointers skip the corresponding file.
void emit_outputs(const std::vector<BenchmarkRecord>* records, const ProfileTable* profile,
                  const std::vector<RecoveryReport>* recovery, const std::string& dir);

// Parse a records.csv previously written by emit_outputs.
std::vector<BenchmarkRecord> parse_records_csv(const std::string& path);

std::string format_double(double v);  // %.17g

}  // namespace dfo
