#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace dfo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Quadratic polynomial bases on R^n.  Both bases have
// q = (n+1)(n+2)/2 elements and share one fixed ordering:
//   [ n diagonal quadratics | n(n-1)/2 off-diagonals, lexicographic i<j |
//     n linears | constant ]
//
// Canonical:      { 1/2 x_i^2, x_i x_j, x_i, 1 }
// PsiHypercube:   orthonormal basis on B_inf(0; delta) under the uniform
//                 probability measure,
//   psi_{2,i}  = 3*sqrt(5)/(2 delta^2) x_i^2 - sqrt(5)/2
//   psi_{2,ij} = 3/delta^2 x_i x_j
//   psi_{1,i}  = sqrt(3)/delta x_i
//   psi_0      = 1
struct BasisKind {
  enum class Tag { Canonical, PsiHypercube };
  Tag tag = Tag::Canonical;
  double delta = 1.0;  // meaningful for PsiHypercube only

  static BasisKind canonical() { return {Tag::Canonical, 1.0}; }
  static BasisKind psi_hypercube(double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("psi basis requires delta > 0");
    return {Tag::PsiHypercube, delta};
  }
  bool is_psi() const { return tag == Tag::PsiHypercube; }
  bool operator==(const BasisKind& o) const {
    return tag == o.tag && (tag == Tag::Canonical || delta == o.delta);
  }
};

inline int basis_size(int n) { return (n + 1) * (n + 2) / 2; }
inline int quad_block_size(int n) { return n * (n + 1) / 2; }

// Index helpers for the fixed coefficient ordering.
inline int diag_index(int /*n*/, int i) { return i; }
inline int offdiag_index(int n, int i, int j) {
  // i < j, 0-based; lexicographic (0,1),(0,2),...,(1,2),...
  return n + i * n - i * (i + 1) / 2 + (j - i - 1);
}
inline int linear_index(int n, int i) { return n * (n + 1) / 2 + i; }
inline int constant_index(int n) { return basis_size(n) - 1; }

// A quadratic polynomial given by coefficients over a declared basis,
// as a function of x - center.
struct QuadraticModel {
  int n = 0;
  BasisKind basis;
  Vector alpha;   // length (n+1)(n+2)/2, ordered as above
  Vector center;  // length n

  int q() const { return basis_size(n); }
  // quadratic block alpha_Q = alpha.head(n(n+1)/2), linear block the rest
  auto alpha_quad() const { return alpha.head(quad_block_size(n)); }
  auto alpha_lin() const { return alpha.tail(n + 1); }
  // nonzeros in the off-diagonal sub-block (sparsity bookkeeping)
  int offdiag_card(double tol = 0.0) const;
};

// Evaluate all q basis polynomials at x.  For PsiHypercube, x must already
// be in centered coordinates.
Vector eval_basis(const BasisKind& kind, int n, const Vector& x);

// Gram matrix of the psi basis over B_inf(0;delta) under the uniform
// probability measure, computed in closed form from the one-dimensional
// moments m2 = delta^2/3, m4 = delta^4/5 (odd moments vanish).  Equals the
// identity up to accumulation round-off.
Matrix gram_psi(int n, double delta);

// Exact linear change of basis; the represented polynomial is unchanged.
// Off-diagonal sparsity of alpha_Q is preserved in both directions.
QuadraticModel convert_coefficients(const QuadraticModel& model, const BasisKind& target);

struct ModelDerivatives {
  double value = 0.0;
  Vector gradient;
  Matrix hessian;  // symmetric by construction, independent of x
};

// Exact quadratic calculus of the model at x (original coordinates).
ModelDerivatives model_value_grad_hess(const QuadraticModel& model, const Vector& x);

// Objective with reference derivatives (test problems and synthetic
// quadratics; the DFO driver itself never sees derivatives).
struct SmoothFunction {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  std::function<Matrix(const Vector&)> hessian;
};

struct ErrorProfile {
  double ef = 0.0;  // max |f - m| / delta^3
  double eg = 0.0;  // max ||grad f - grad m||_2 / delta^2
  double eh = 0.0;  // max ||hess f - hess m||_2 / delta
};

// Empirical scaled error constants of a model against f over a grid in
// B_inf(x0; delta): a lattice for n <= 3, a seeded uniform sample otherwise.
// These are kappa-estimates, not certificates.
ErrorProfile error_profile(const QuadraticModel& model, const SmoothFunction& f,
                           const Vector& x0, double delta, int grid_points = 1000,
                           std::uint64_t seed = 0);

// Grid used by error_profile; exposed for the recovery experiments.
std::vector<Vector> profile_grid(int n, const Vector& x0, double delta, int grid_points,
                                 std::uint64_t seed);

// Spectral norm of a symmetric matrix.
double symmetric_spectral_norm(const Matrix& A);

}  // namespace dfo
