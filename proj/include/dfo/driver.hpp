#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dfo/model_fit.hpp"

namespace dfo {

// Trust-region method parameters.  p_min = n+1 and p_max = (n+1)(n+2)/2 are
// derived from the dimension at run time.
struct DfoConfig {
  double eps_g = 1e-5;       // stop when ||model gradient|| <= eps_g
  double delta_stop = 1e-5;  // stop when the radius falls to this
  double eta1 = 1e-3;        // acceptance threshold for rho
  double eta2 = 0.75;        // radius-increase threshold
  double gamma1 = 0.5;       // radius shrink factor
  double gamma2 = 2.0;       // radius growth factor
  double delta0 = 1.0;       // initial radius
  int t = 1;                 // model norm: 1 = min-l1, 2 = min-Frobenius
  long max_fevals = 15000;
  double prune_trigger = 1e-3;      // prune when the radius drops below this
  double prune_radius_base = 100.0; // doubling sequence 100, 200, 400, ...
  int min_kept_points = 3;
  std::uint64_t seed = 0;  // carried for problem construction; the run itself
                           // is deterministic

  void validate() const;
};

enum class StopReason { Gradient, Radius, FevalBudget };

const char* stop_reason_name(StopReason r);

struct DfoIter {
  int k = 0;
  Vector x;          // iterate at the start of the iteration
  double f = 0.0;    // f(x)
  double delta = 0.0;
  int y_size = 0;    // |Y_k| when the model was built
  double rho = 0.0;
  bool success = false;
  double gnorm = 0.0;  // model gradient norm at x, original coordinates
  long fevals = 0;     // cumulative evaluations after this iteration
  bool lp_fallback = false;  // l1 fit failed, MFN model used instead
};

struct DfoTrace {
  std::vector<DfoIter> iters;
  StopReason reason = StopReason::FevalBudget;
  Vector final_x;
  double final_f = 0.0;
  double final_gnorm = 0.0;
  long fevals = 0;
  int lp_fallbacks = 0;
};

using Objective = std::function<double(const Vector&)>;

// The practical trust-region method, run to termination:
//   Step 0  initial stencil {x0, x0 +- delta0 e_i}, 2n+1 evaluations
//   Step 1  fit a model by min-l1 (t=1) or min-Frobenius (t=2) on Y_k,
//           in scaled coordinates
//   Step 2  stop on small model gradient or small radius
//   Step 3  l2 trust-region step
//   Step 4  evaluate the trial point, rho = ared/pred
//   Step 5  accept/reject; shrink only when |Y_k| >= n+1; grow when
//           rho > eta2
//   Step 6  greedy sample-set update, farthest-from-new-iterate swap at
//           p_max
//   Step 7  when delta < 1e-3, keep only points inside B_2(x; r delta)
//           with r the smallest of {100, 200, 400, ...} retaining >= 3
DfoTrace run_dfo_tr(const Objective& f, const Vector& x0, const DfoConfig& cfg);

// Step 6 in isolation (trial already evaluated).  x_next is the new iterate:
// the trial on success, the old iterate otherwise.
SampleSet update_sample_set(const SampleSet& y, const Vector& x_next, const Vector& trial,
                            double trial_value, bool success, int p_max);

// Step 7 in isolation.
SampleSet prune_far_points(const SampleSet& y, const Vector& x, double delta,
                           const DfoConfig& cfg);

}  // namespace dfo
