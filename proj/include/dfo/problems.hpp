#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dfo/basis.hpp"

namespace dfo {

// A registry entry: objective with standard dimension and start point.
// Reference derivatives exist for validation and Hessian sparsity counts
// only; the DFO driver never sees them.
struct Problem {
  std::string name;
  int n = 0;
  std::function<double(const Vector&)> objective;
  Vector start;
  std::optional<double> f_best;
  std::optional<int> nnz_upper;  // reference upper bound on Hessian nonzeros
  std::function<Vector(const Vector&)> reference_grad;
  std::function<Matrix(const Vector&)> reference_hess;

  SmoothFunction as_smooth() const { return {objective, reference_grad, reference_hess}; }
};

// Look up a problem; n = 0 selects the registry default dimension.
// Throws std::invalid_argument for unknown names or inadmissible n
// (e.g. POWELLSG and WOODS need n to be a multiple of 4).
Problem get_problem(const std::string& name, int n = 0);

// Controlled instrument for sparsity experiments: a quadratic with exactly
// h nonzero Hessian entries on or above the diagonal (magnitudes in
// [0.1, 1], signs random), dense gradient.
Problem synth_sparse_quad(int n, int h, std::uint64_t seed);

// Upper-triangle count of Hessian entries with |value| > 1e-10 at x.
// Throws when the problem carries no reference Hessian.
int hessian_nnz(const Problem& p, const Vector& x);

const std::vector<std::string>& problem_names();

}  // namespace dfo
