#include "dfo/model_fit.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "dfo/lp.hpp"

namespace dfo {

namespace {

Vector values_vector(const SampleSet& y) {
  return Eigen::Map<const Vector>(y.values.data(), y.values.size());
}

// residual over the original-coordinate sample points
double interp_residual(const QuadraticModel& m, const SampleSet& y) {
  double r = 0.0;
  for (int i = 0; i < y.size(); ++i)
    r = std::max(r, std::abs(model_value_grad_hess(m, y.points[i]).value - y.values[i]));
  return r;
}

// Map a canonical model fitted on (y - center)/scale back to original
// coordinates: quadratic coefficients divide by scale^2, linear by scale.
QuadraticModel unscale_model(Vector alpha, const SampleSet& y) {
  const int n = y.dim();
  const double s = y.scale;
  alpha.head(quad_block_size(n)) /= s * s;
  alpha.segment(quad_block_size(n), n) /= s;
  QuadraticModel m;
  m.n = n;
  m.basis = BasisKind::canonical();
  m.alpha = std::move(alpha);
  m.center = y.center;
  return m;
}

// Shared LP assembly for the l1 fits: variables [u, v, alpha_L] with
// alpha_Q = u - v.  Equality rows when band < 0, otherwise the two-sided
// inf-norm band |M alpha - f| <= band.
FitOutcome fit_l1_common(const SampleSet& y, const Matrix& m_q, const Matrix& m_l,
                         const Vector& fy, double obj_scale, double band,
                         const BasisKind& model_basis, bool unscale) {
  const int p = static_cast<int>(m_q.rows());
  const int n_q = static_cast<int>(m_q.cols());
  const int n_l = static_cast<int>(m_l.cols());

  LpProblem lp = LpProblem::with_cols(2 * n_q + n_l);
  lp.c.head(n_q).setConstant(obj_scale);
  lp.c.segment(n_q, n_q).setConstant(obj_scale);
  lp.lower.tail(n_l).setConstant(-kInf);

  Matrix m_signed(p, 2 * n_q + n_l);
  m_signed << m_q, -m_q, m_l;
  if (band < 0.0) {
    lp.A_eq = m_signed;
    lp.b_eq = fy;
  } else {
    lp.A_ub.resize(2 * p, 2 * n_q + n_l);
    lp.A_ub << m_signed, -m_signed;
    lp.b_ub.resize(2 * p);
    lp.b_ub << fy.array() + band, band - fy.array();
  }

  const LpSolution s = solve_lp(lp);
  if (s.status != LpStatus::Optimal)
    throw FitFailure(std::string("l1 fit: LP ") + lp_status_name(s.status));

  Vector alpha(n_q + n_l);
  alpha.head(n_q) = s.x.head(n_q) - s.x.segment(n_q, n_q);
  alpha.tail(n_l) = s.x.tail(n_l);

  FitOutcome out;
  if (unscale) {
    out.model = unscale_model(std::move(alpha), y);
  } else {
    out.model.n = y.dim();
    out.model.basis = model_basis;
    out.model.alpha = std::move(alpha);
    out.model.center = y.center;
  }
  out.method = band < 0.0 ? FitMethod::MinL1 : FitMethod::MinL1Noisy;
  out.diagnostics.lp_iterations = s.iterations;
  out.diagnostics.residual_inf = interp_residual(out.model, y);
  return out;
}

}  // namespace

Matrix build_interp_matrix(const BasisKind& kind, const SampleSet& y, bool scaled) {
  if (y.size() == 0) throw FitFailure("build_interp_matrix: empty sample set");
  const int n = y.dim();
  Matrix m(y.size(), basis_size(n));
  for (int i = 0; i < y.size(); ++i)
    m.row(i) = eval_basis(kind, n, scaled ? y.scaled_point(i) : y.points[i]);
  return m;
}

SampleSet scale_sample_set(const SampleSet& y) {
  SampleSet s = y;
  double r = 0.0;
  for (const auto& pt : y.points) r = std::max(r, (pt - y.center).norm());
  if (r == 0.0) throw FitFailure("scale_sample_set: all points coincide with the center");
  s.scale = r;
  return s;
}

FitOutcome fit_mfn(const SampleSet& y_in) {
  const SampleSet y = scale_sample_set(y_in);
  const int n = y.dim();
  const int p = y.size();
  const int n_q = quad_block_size(n);
  const int n_l = n + 1;

  const Matrix m = build_interp_matrix(BasisKind::canonical(), y, true);
  const Matrix m_q = m.leftCols(n_q);
  const Matrix m_l = m.rightCols(n_l);

  Matrix kkt = Matrix::Zero(p + n_l, p + n_l);
  kkt.topLeftCorner(p, p) = m_q * m_q.transpose();
  kkt.topRightCorner(p, n_l) = m_l;
  kkt.bottomLeftCorner(n_l, p) = m_l.transpose();
  Vector rhs = Vector::Zero(p + n_l);
  rhs.head(p) = values_vector(y);

  Eigen::SelfAdjointEigenSolver<Matrix> es(kkt);
  if (es.info() != Eigen::Success) throw FitFailure("fit_mfn: eigendecomposition failed");
  const Vector ev = es.eigenvalues();
  const double sigma_max = ev.cwiseAbs().maxCoeff();
  if (sigma_max < 1e-300) throw FitFailure("fit_mfn: KKT matrix numerically zero");

  const double cutoff = 1e-12 * sigma_max;
  int dropped = 0;
  Vector z = es.eigenvectors().transpose() * rhs;
  for (int i = 0; i < z.size(); ++i) {
    if (std::abs(ev[i]) < cutoff) {
      z[i] = 0.0;
      ++dropped;
    } else {
      z[i] /= ev[i];
    }
  }
  const Vector sol = es.eigenvectors() * z;

  Vector alpha(n_q + n_l);
  alpha.head(n_q) = m_q.transpose() * sol.head(p);
  alpha.tail(n_l) = sol.tail(n_l);

  FitOutcome out;
  out.model = unscale_model(std::move(alpha), y);
  out.method = FitMethod::MFN;
  out.diagnostics.svd_cutoff_count = dropped;
  out.diagnostics.residual_inf = interp_residual(out.model, y);
  return out;
}

FitOutcome fit_min_l1(const SampleSet& y_in) {
  const SampleSet y = scale_sample_set(y_in);
  const int n = y.dim();
  const Matrix m = build_interp_matrix(BasisKind::canonical(), y, true);
  return fit_l1_common(y, m.leftCols(quad_block_size(n)), m.rightCols(n + 1),
                       values_vector(y), 1.0 / y.size(), -1.0, BasisKind::canonical(), true);
}

FitOutcome fit_min_l1_noisy(const SampleSet& y_in, double eta) {
  if (eta < 0.0) throw FitFailure("fit_min_l1_noisy: eta must be nonnegative");
  if (eta == 0.0) return fit_min_l1(y_in);
  const SampleSet y = scale_sample_set(y_in);
  const int n = y.dim();
  const Matrix m = build_interp_matrix(BasisKind::canonical(), y, true);
  FitOutcome out = fit_l1_common(y, m.leftCols(quad_block_size(n)), m.rightCols(n + 1),
                                 values_vector(y), 1.0 / y.size(), eta / std::sqrt(y.size()),
                                 BasisKind::canonical(), true);
  out.eta = eta;
  return out;
}

FitOutcome fit_min_l1_psi(const SampleSet& y_in, double delta, double eta) {
  if (eta < 0.0) throw FitFailure("fit_min_l1_psi: eta must be nonnegative");
  SampleSet y = y_in;
  y.scale = 1.0;  // centered but unscaled coordinates
  const int n = y.dim();
  const BasisKind psi = BasisKind::psi_hypercube(delta);
  const Matrix m = build_interp_matrix(psi, y, true);
  FitOutcome out = fit_l1_common(y, m.leftCols(quad_block_size(n)), m.rightCols(n + 1),
                                 values_vector(y), 1.0,
                                 eta == 0.0 ? -1.0 : eta / std::sqrt(y.size()), psi, false);
  out.eta = eta;
  return out;
}

}  // namespace dfo
