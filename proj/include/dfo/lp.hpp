#pragma once

#include <Eigen/Core>
#include <string>

#include "dfo/basis.hpp"

namespace dfo {

// General-form linear program
//   min c'x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  lower <= x <= upper,
// with +-inf bounds allowed.  Zero-row blocks may be left empty.
struct LpProblem {
  Vector c;
  Matrix A_eq;
  Vector b_eq;
  Matrix A_ub;
  Vector b_ub;
  Vector lower;  // defaults to 0 per column
  Vector upper;  // defaults to +inf per column

  static LpProblem with_cols(int cols) {
    LpProblem p;
    p.c = Vector::Zero(cols);
    p.A_eq.resize(0, cols);
    p.b_eq.resize(0);
    p.A_ub.resize(0, cols);
    p.b_ub.resize(0);
    p.lower = Vector::Zero(cols);
    p.upper = Vector::Constant(cols, kInf);
    return p;
  }
  int cols() const { return static_cast<int>(c.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* lp_status_name(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vector x;          // original variables (meaningful when Optimal)
  double objective = 0.0;
  int iterations = 0;  // simplex pivots across both phases
};

// Two-phase revised simplex, Dantzig pricing with a Bland's-rule
// anti-cycling fallback; deterministic (lowest-index tie breaking).
// Pivot cap: 10 * (rows + cols) of the internal standard form, after which
// the solve reports IterationLimit.
LpSolution solve_lp(const LpProblem& p);

}  // namespace dfo
