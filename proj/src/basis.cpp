#include "dfo/basis.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>

#include "dfo/rng.hpp"

namespace dfo {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935274463415058724;
constexpr double kSqrt5 = 2.2360679774997896964091736687747634;

// A degree <= 2 polynomial in one or two variables, as a short list of
// monomial terms; enough to integrate products of basis elements exactly.
struct MonomialTerm {
  double coef;
  int var1, pow1;  // var = -1 when unused
  int var2, pow2;
};

using TermList = std::array<MonomialTerm, 2>;

// (term count, terms) for basis element idx of the psi basis
int psi_terms(int n, double delta, int idx, TermList& out) {
  const double d2 = delta * delta;
  if (idx < n) {  // psi_{2,i}
    out[0] = {3.0 * kSqrt5 / (2.0 * d2), idx, 2, -1, 0};
    out[1] = {-kSqrt5 / 2.0, -1, 0, -1, 0};
    return 2;
  }
  const int n_off = n * (n - 1) / 2;
  if (idx < n + n_off) {  // psi_{2,ij}
    int k = idx - n;
    int i = 0;
    while (k >= n - i - 1) {
      k -= n - i - 1;
      ++i;
    }
    const int j = i + 1 + k;
    out[0] = {3.0 / d2, i, 1, j, 1};
    return 1;
  }
  if (idx < n_off + 2 * n) {  // psi_{1,i}
    out[0] = {kSqrt3 / delta, idx - n - n_off, 1, -1, 0};
    return 1;
  }
  out[0] = {1.0, -1, 0, -1, 0};  // psi_0
  return 1;
}

// integral of prod x_v^p over B_inf(0;delta), uniform probability measure
double monomial_moment(const int* vars, const int* pows, int count, double delta) {
  // gather exponents per variable; all odd powers integrate to zero
  int exp_by_var[4] = {0, 0, 0, 0};
  int uniq_vars[4];
  int n_uniq = 0;
  for (int t = 0; t < count; ++t) {
    if (vars[t] < 0 || pows[t] == 0) continue;
    int slot = -1;
    for (int u = 0; u < n_uniq; ++u)
      if (uniq_vars[u] == vars[t]) slot = u;
    if (slot < 0) {
      slot = n_uniq++;
      uniq_vars[slot] = vars[t];
    }
    exp_by_var[slot] += pows[t];
  }
  double m = 1.0;
  for (int u = 0; u < n_uniq; ++u) {
    const int e = exp_by_var[u];
    if (e % 2 == 1) return 0.0;
    if (e == 2)
      m *= delta * delta / 3.0;
    else if (e == 4)
      m *= delta * delta * delta * delta / 5.0;
    // e == 0 contributes 1
  }
  return m;
}

}  // namespace

int QuadraticModel::offdiag_card(double tol) const {
  const int n_off = n * (n - 1) / 2;
  int c = 0;
  for (int k = 0; k < n_off; ++k)
    if (std::abs(alpha[n + k]) > tol) ++c;
  return c;
}

Vector eval_basis(const BasisKind& kind, int n, const Vector& x) {
  const int q = basis_size(n);
  Vector phi(q);
  int idx = 0;
  if (kind.tag == BasisKind::Tag::Canonical) {
    for (int i = 0; i < n; ++i) phi[idx++] = 0.5 * x[i] * x[i];
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) phi[idx++] = x[i] * x[j];
    for (int i = 0; i < n; ++i) phi[idx++] = x[i];
    phi[idx] = 1.0;
  } else {
    const double d = kind.delta;
    const double d2 = d * d;
    for (int i = 0; i < n; ++i)
      phi[idx++] = 3.0 * kSqrt5 / (2.0 * d2) * x[i] * x[i] - kSqrt5 / 2.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) phi[idx++] = 3.0 / d2 * x[i] * x[j];
    for (int i = 0; i < n; ++i) phi[idx++] = kSqrt3 / d * x[i];
    phi[idx] = 1.0;
  }
  return phi;
}

Matrix gram_psi(int n, double delta) {
  if (n < 1 || !(delta > 0.0)) throw std::invalid_argument("gram_psi: need n >= 1, delta > 0");
  const int q = basis_size(n);
  Matrix g(q, q);
  TermList ti, tj;
  for (int a = 0; a < q; ++a) {
    const int ca = psi_terms(n, delta, a, ti);
    for (int b = a; b < q; ++b) {
      const int cb = psi_terms(n, delta, b, tj);
      double acc = 0.0;
      for (int s = 0; s < ca; ++s) {
        for (int t = 0; t < cb; ++t) {
          const int vars[4] = {ti[s].var1, ti[s].var2, tj[t].var1, tj[t].var2};
          const int pows[4] = {ti[s].pow1, ti[s].pow2, tj[t].pow1, tj[t].pow2};
          acc += ti[s].coef * tj[t].coef * monomial_moment(vars, pows, 4, delta);
        }
      }
      g(a, b) = acc;
      g(b, a) = acc;
    }
  }
  return g;
}

QuadraticModel convert_coefficients(const QuadraticModel& model, const BasisKind& target) {
  if (model.basis == target)
    throw std::invalid_argument("convert_coefficients: source and target basis coincide");
  if (model.alpha.size() != model.q())
    throw std::invalid_argument("convert_coefficients: coefficient length mismatch");

  const int n = model.n;
  const int n_off = n * (n - 1) / 2;

  // psi(d1) -> psi(d2) goes through the canonical representation
  if (model.basis.is_psi() && target.is_psi()) {
    QuadraticModel mid = convert_coefficients(model, BasisKind::canonical());
    return convert_coefficients(mid, target);
  }

  QuadraticModel out = model;
  out.basis = target;
  if (target.is_psi()) {
    // 1/2 x_i^2 = d^2/(3 sqrt5) psi_{2,i} + d^2/6 psi_0
    // x_i x_j   = d^2/3 psi_{2,ij};  x_i = d/sqrt3 psi_{1,i};  1 = psi_0
    const double d = target.delta, d2 = d * d;
    double c0 = model.alpha[constant_index(n)];
    for (int i = 0; i < n; ++i) {
      out.alpha[i] = d2 / (3.0 * kSqrt5) * model.alpha[i];
      c0 += d2 / 6.0 * model.alpha[i];
    }
    for (int k = 0; k < n_off; ++k) out.alpha[n + k] = d2 / 3.0 * model.alpha[n + k];
    for (int i = 0; i < n; ++i)
      out.alpha[linear_index(n, i)] = d / kSqrt3 * model.alpha[linear_index(n, i)];
    out.alpha[constant_index(n)] = c0;
  } else {
    // inverse map psi(d) -> canonical
    const double d = model.basis.delta, d2 = d * d;
    double c0 = model.alpha[constant_index(n)];
    for (int i = 0; i < n; ++i) {
      out.alpha[i] = 3.0 * kSqrt5 / d2 * model.alpha[i];
      c0 -= kSqrt5 / 2.0 * model.alpha[i];
    }
    for (int k = 0; k < n_off; ++k) out.alpha[n + k] = 3.0 / d2 * model.alpha[n + k];
    for (int i = 0; i < n; ++i)
      out.alpha[linear_index(n, i)] = kSqrt3 / d * model.alpha[linear_index(n, i)];
    out.alpha[constant_index(n)] = c0;
  }
  return out;
}

ModelDerivatives model_value_grad_hess(const QuadraticModel& model, const Vector& x) {
  const QuadraticModel m =
      model.basis.is_psi() ? convert_coefficients(model, BasisKind::canonical()) : model;
  const int n = m.n;
  Vector z = x;
  if (m.center.size() == n) z -= m.center;

  ModelDerivatives d;
  d.hessian = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) d.hessian(i, i) = m.alpha[i];
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = m.alpha[offdiag_index(n, i, j)];
      d.hessian(i, j) = v;
      d.hessian(j, i) = v;
    }
  const auto g_lin = m.alpha.segment(quad_block_size(n), n);
  d.gradient = d.hessian * z + g_lin;
  d.value = 0.5 * z.dot(d.hessian * z) + g_lin.dot(z) + m.alpha[constant_index(n)];
  return d;
}

std::vector<Vector> profile_grid(int n, const Vector& x0, double delta, int grid_points,
                                 std::uint64_t seed) {
  std::vector<Vector> grid;
  if (n <= 3) {
    int per_axis = 2;
    while (std::pow(per_axis, n) < grid_points) ++per_axis;
    const int total = static_cast<int>(std::pow(per_axis, n));
    grid.reserve(total);
    Vector x(n);
    for (int c = 0; c < total; ++c) {
      int rem = c;
      for (int i = 0; i < n; ++i) {
        const int t = rem % per_axis;
        rem /= per_axis;
        x[i] = x0[i] - delta + 2.0 * delta * t / (per_axis - 1);
      }
      grid.push_back(x);
    }
  } else {
    Rng rng(seed == 0 ? 0x9d5f03a1u : seed);
    grid.reserve(grid_points);
    for (int c = 0; c < grid_points; ++c) {
      Vector x(n);
      for (int i = 0; i < n; ++i) x[i] = x0[i] + rng.uniform(-delta, delta);
      grid.push_back(x);
    }
  }
  return grid;
}

double symmetric_spectral_norm(const Matrix& A) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

ErrorProfile error_profile(const QuadraticModel& model, const SmoothFunction& f,
                           const Vector& x0, double delta, int grid_points,
                           std::uint64_t seed) {
  const int n = model.n;
  const auto grid = profile_grid(n, x0, delta, grid_points < 100 ? 100 : grid_points, seed);

  ErrorProfile e;
  for (const Vector& x : grid) {
    const ModelDerivatives m = model_value_grad_hess(model, x);
    e.ef = std::max(e.ef, std::abs(f.value(x) - m.value));
    e.eg = std::max(e.eg, (f.gradient(x) - m.gradient).norm());
    e.eh = std::max(e.eh, symmetric_spectral_norm(Matrix(f.hessian(x) - m.hessian)));
  }
  e.ef /= delta * delta * delta;
  e.eg /= delta * delta;
  e.eh /= delta;
  return e;
}

}  // namespace dfo
