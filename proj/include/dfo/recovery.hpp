#pragma once

#include <cstdint>
#include <vector>

#include "dfo/basis.hpp"
#include "dfo/rng.hpp"

namespace dfo {

struct RipReport {
  int s = 0;
  double delta_s = 0.0;
  std::vector<int> support;  // column set attaining the bound
};

// Exact RIP constant of order s by exhaustive support enumeration:
//   delta_s = max over s-column submatrices A_S of
//             max(1 - sigma_min(A_S)^2, sigma_max(A_S)^2 - 1).
// Refuses when C(N, s) exceeds 10^6.
RipReport rip_constant(const Matrix& a, int s);

// P = I - A2 (A2'A2)^{-1} A2', the orthogonal projector onto range(A2)^perp.
// A2 must have full column rank (sigma_min > 1e-10 sigma_max).
Matrix partial_projector(const Matrix& a2);

// Partial RIP constant of order s-r: the RIP constant of P A1.
// An empty A2 (r = 0) reduces to rip_constant(A1, order).
RipReport partial_rip_constant(const Matrix& a1, const Matrix& a2, int order);

// Solve min ||z||_1 s.t. A z = A zbar and report whether the minimizer
// recovers zbar within 1e-6 * max(1, ||zbar||_inf) in the sup norm.
bool verify_l1_recovery(const Matrix& a, const Vector& zbar);

// Random quadratic with exactly h nonzero canonical Hessian coefficients on
// or above the diagonal (magnitudes in [0.1, 1], random signs), dense
// gradient and constant term in [-1, 1]; centered at the origin.
QuadraticModel draw_sparse_quadratic(int n, int h, Rng& rng);

struct RecoveryTrial {
  int trial = 0;
  std::uint64_t seed = 0;
  bool success = false;
  bool lp_ok = true;
  double coef_err = 0.0;  // || alpha* - alpha ||_2 in the psi basis
  double ef = 0.0, eg = 0.0, eh = 0.0;  // scaled sup-errors over the grid
};

struct RecoveryReport {
  int n = 0, h = 0, p = 0;
  double delta = 1.0;
  std::uint64_t master_seed = 0;
  std::vector<RecoveryTrial> trials;
  double success_rate = 0.0;
};

// Randomized sparse-Hessian recovery experiment: per trial, draw an h-sparse
// quadratic and p sample points uniform in B_inf(0;delta), fit by exact-
// constraint l1-minimization in the psi basis, and record the coefficient
// error (success iff <= 1e-6) plus the scaled value/gradient/Hessian
// sup-errors.  Trial seeds derive from the master seed via derive_seed, so
// trials are independent and reproducible.
RecoveryReport sparse_hessian_recovery_experiment(int n, int h, int p, int trials,
                                                  double delta, std::uint64_t seed);

// Check the coefficient-norm bounds for a psi-basis quadratic on a grid
// inside B_inf(0;delta):
//   |m(x)|          <= 3 sqrt(card(alpha)) ||alpha||_2
//   ||grad m(x)||_2 <= 3 sqrt5 sqrt(card) ||alpha||_2 / delta
//   ||hess m||_2    <= 3 sqrt5 sqrt(card) ||alpha||_2 / delta^2
// These hold for every input; a violation (beyond round-off slack 1e-12
// relative) indicates an implementation bug.
bool lemma_bound_check(const Vector& alpha_psi, int n, double delta,
                       const std::vector<Vector>& grid);

}  // namespace dfo
