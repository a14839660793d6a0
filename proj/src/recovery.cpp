#include "dfo/recovery.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dfo/lp.hpp"
#include "dfo/model_fit.hpp"

namespace dfo {

namespace {

constexpr double kSqrt5 = 2.2360679774997896964091736687747634;

double binomial_guarded(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) {
    c *= static_cast<double>(n - k + i) / i;
    if (c > 2e6) return c;  // enough to trip the guard
  }
  return c;
}

}  // namespace

RipReport rip_constant(const Matrix& a, int s) {
  const int ncols = static_cast<int>(a.cols());
  if (s < 1 || s > ncols) throw std::invalid_argument("rip_constant: need 1 <= s <= N");
  if (binomial_guarded(ncols, s) > 1e6)
    throw std::domain_error("rip_constant: C(N,s) exceeds the 1e6 enumeration guard");

  const Matrix gram = a.transpose() * a;

  RipReport rep;
  rep.s = s;
  std::vector<int> idx(s);
  std::iota(idx.begin(), idx.end(), 0);
  Matrix sub(s, s);
  Eigen::SelfAdjointEigenSolver<Matrix> es;
  while (true) {
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) sub(i, j) = gram(idx[i], idx[j]);
    es.compute(sub, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    const double d = std::max(1.0 - lo, hi - 1.0);
    if (d > rep.delta_s) {
      rep.delta_s = d;
      rep.support = idx;
    }
    // next combination in lexicographic order
    int k = s - 1;
    while (k >= 0 && idx[k] == ncols - s + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
  return rep;
}

Matrix partial_projector(const Matrix& a2) {
  const int k = static_cast<int>(a2.rows());
  const int r = static_cast<int>(a2.cols());
  if (r == 0) return Matrix::Identity(k, k);
  Eigen::JacobiSVD<Matrix> svd(a2);
  const auto& sv = svd.singularValues();
  if (r > k || sv(r - 1) <= 1e-10 * sv(0))
    throw std::invalid_argument("partial_projector: A2 is not full column rank");
  const Matrix q = Eigen::HouseholderQR<Matrix>(a2).householderQ() * Matrix::Identity(k, r);
  return Matrix::Identity(k, k) - q * q.transpose();
}

RipReport partial_rip_constant(const Matrix& a1, const Matrix& a2, int order) {
  if (a2.cols() == 0) return rip_constant(a1, order);
  return rip_constant(partial_projector(a2) * a1, order);
}

bool verify_l1_recovery(const Matrix& a, const Vector& zbar) {
  const int ncols = static_cast<int>(a.cols());
  const Vector b = a * zbar;

  LpProblem lp = LpProblem::with_cols(2 * ncols);
  lp.c.setOnes();
  lp.A_eq.resize(a.rows(), 2 * ncols);
  lp.A_eq << a, -a;
  lp.b_eq = b;

  const LpSolution s = solve_lp(lp);
  if (s.status != LpStatus::Optimal)
    throw std::runtime_error(std::string("verify_l1_recovery: LP ") + lp_status_name(s.status));
  const Vector z = s.x.head(ncols) - s.x.tail(ncols);
  return (z - zbar).cwiseAbs().maxCoeff() <= 1e-6 * std::max(1.0, zbar.cwiseAbs().maxCoeff());
}

QuadraticModel draw_sparse_quadratic(int n, int h, Rng& rng) {
  const int n_q = quad_block_size(n);
  if (h < 0 || h > n_q) throw std::invalid_argument("draw_sparse_quadratic: bad h");

  QuadraticModel m;
  m.n = n;
  m.basis = BasisKind::canonical();
  m.alpha = Vector::Zero(basis_size(n));
  m.center = Vector::Zero(n);

  // h distinct quadratic slots, partial Fisher-Yates
  std::vector<int> slots(n_q);
  std::iota(slots.begin(), slots.end(), 0);
  for (int k = 0; k < h; ++k) {
    const int j = static_cast<int>(rng.uniform_int(k, n_q - 1));
    std::swap(slots[k], slots[j]);
    const double mag = rng.uniform(0.1, 1.0);
    m.alpha[slots[k]] = rng.uniform() < 0.5 ? -mag : mag;
  }
  for (int i = 0; i < n; ++i) m.alpha[linear_index(n, i)] = rng.uniform(-1.0, 1.0);
  m.alpha[constant_index(n)] = rng.uniform(-1.0, 1.0);
  return m;
}

RecoveryReport sparse_hessian_recovery_experiment(int n, int h, int p, int trials,
                                                  double delta, std::uint64_t seed) {
  const int q = basis_size(n);
  if (h < 1 || h > quad_block_size(n))
    throw std::invalid_argument("recovery experiment: need 1 <= h <= n(n+1)/2");
  if (p > q) throw std::invalid_argument("recovery experiment: need p <= q");

  RecoveryReport rep;
  rep.n = n;
  rep.h = h;
  rep.p = p;
  rep.delta = delta;
  rep.master_seed = seed;
  rep.trials.resize(trials);

  const BasisKind psi = BasisKind::psi_hypercube(delta);
  int successes = 0;
  for (int t = 0; t < trials; ++t) {
    RecoveryTrial& tr = rep.trials[t];
    tr.trial = t;
    tr.seed = derive_seed(seed, static_cast<std::uint64_t>(t));
    Rng rng(tr.seed);

    const QuadraticModel truth = draw_sparse_quadratic(n, h, rng);
    SampleSet y;
    y.center = Vector::Zero(n);
    y.points.reserve(p);
    y.values.reserve(p);
    for (int i = 0; i < p; ++i) {
      Vector x(n);
      for (int j = 0; j < n; ++j) x[j] = rng.uniform(-delta, delta);
      y.points.push_back(x);
      y.values.push_back(model_value_grad_hess(truth, x).value);
    }

    try {
      const FitOutcome fit = fit_min_l1_psi(y, delta, 0.0);
      const QuadraticModel truth_psi = convert_coefficients(truth, psi);
      tr.coef_err = (fit.model.alpha - truth_psi.alpha).norm();
      tr.success = tr.coef_err <= 1e-6;

      const QuadraticModel fit_canon = convert_coefficients(fit.model, BasisKind::canonical());
      const ModelDerivatives at0 = model_value_grad_hess(truth, Vector::Zero(n));
      const Matrix hm = at0.hessian;
      const Vector g0 = at0.gradient;
      const double c0 = at0.value;
      SmoothFunction f{
          [hm, g0, c0](const Vector& x) { return 0.5 * x.dot(hm * x) + g0.dot(x) + c0; },
          [hm, g0](const Vector& x) { return Vector(hm * x + g0); },
          [hm](const Vector&) { return hm; }};
      const ErrorProfile e =
          error_profile(fit_canon, f, Vector::Zero(n), delta, 200, derive_seed(tr.seed, 1));
      tr.ef = e.ef;
      tr.eg = e.eg;
      tr.eh = e.eh;
    } catch (const FitFailure&) {
      tr.lp_ok = false;
      tr.success = false;
    }
    if (tr.success) ++successes;
  }
  rep.success_rate = trials > 0 ? static_cast<double>(successes) / trials : 0.0;
  return rep;
}

bool lemma_bound_check(const Vector& alpha_psi, int n, double delta,
                       const std::vector<Vector>& grid) {
  if (alpha_psi.size() != basis_size(n))
    throw std::invalid_argument("lemma_bound_check: coefficient length mismatch");

  QuadraticModel m;
  m.n = n;
  m.basis = BasisKind::psi_hypercube(delta);
  m.alpha = alpha_psi;
  m.center = Vector::Zero(n);

  int card = 0;
  for (int i = 0; i < alpha_psi.size(); ++i)
    if (alpha_psi[i] != 0.0) ++card;
  const double norm = alpha_psi.norm();
  const double slack = 1.0 + 1e-12;
  const double bound_f = 3.0 * std::sqrt(card) * norm * slack;
  const double bound_g = 3.0 * kSqrt5 * std::sqrt(card) * norm / delta * slack;
  const double bound_h = 3.0 * kSqrt5 * std::sqrt(card) * norm / (delta * delta) * slack;

  const ModelDerivatives d0 = model_value_grad_hess(m, Vector::Zero(n));
  if (symmetric_spectral_norm(d0.hessian) > bound_h) return false;
  for (const Vector& x : grid) {
    const ModelDerivatives d = model_value_grad_hess(m, x);
    if (std::abs(d.value) > bound_f) return false;
    if (d.gradient.norm() > bound_g) return false;
  }
  return true;
}

}  // namespace dfo
