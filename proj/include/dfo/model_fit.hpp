#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dfo/basis.hpp"

namespace dfo {

// Interpolation data: ordered sample points with function values, the
// current center (iterate) and the radius of the enclosing l2-ball after
// shifting, so that (y - center)/scale lies in B_2(0;1) with at least one
// point on the boundary.  Points are always kept in original coordinates;
// scaled coordinates are a view.
struct SampleSet {
  std::vector<Vector> points;
  std::vector<double> values;
  Vector center;
  double scale = 1.0;

  int size() const { return static_cast<int>(points.size()); }
  int dim() const { return static_cast<int>(center.size()); }
  Vector scaled_point(int i) const { return (points[i] - center) / scale; }
  bool contains(const Vector& x) const {
    for (const auto& p : points)
      if (p == x) return true;
    return false;
  }
};

struct FitFailure : std::runtime_error {
  explicit FitFailure(const std::string& what) : std::runtime_error(what) {}
};

enum class FitMethod { MFN, MinL1, MinL1Noisy };

struct FitDiagnostics {
  int svd_cutoff_count = 0;  // MFN: singular values zeroed
  int lp_iterations = 0;     // l1 fits: simplex pivots
  double residual_inf = 0.0; // ||M alpha - f(Y)||_inf at the sample points
};

struct FitOutcome {
  QuadraticModel model;
  FitMethod method = FitMethod::MFN;
  double eta = 0.0;  // MinL1Noisy band parameter
  FitDiagnostics diagnostics;
};

// Interpolation matrix: entry (i,j) = phi_j(y_i), with y_i raw or
// shifted-and-scaled according to `scaled`.  Column order matches the
// QuadraticModel coefficient ordering.
Matrix build_interp_matrix(const BasisKind& kind, const SampleSet& y, bool scaled);

// Recompute the scale so that max_i ||(y_i - center)/scale||_2 = 1.
// Throws FitFailure when every point coincides with the center.
SampleSet scale_sample_set(const SampleSet& y);

// Minimum-Frobenius-norm interpolation: minimize 1/2 ||alpha_Q||_2^2 subject
// to the interpolation conditions, via the KKT system
//   [ M_Q M_Q', M_L ] [lambda ]   [ f(Y) ]
//   [ M_L',     0   ] [alpha_L] = [  0   ],   alpha_Q = M_Q' lambda,
// solved through the spectral decomposition of the (symmetric) KKT matrix
// with singular values below 1e-12 * sigma_max zeroed.  Fitting happens in
// scaled coordinates; the model is mapped back to original coordinates.
FitOutcome fit_mfn(const SampleSet& y);

// Minimum-l1-norm interpolation: minimize (1/p) ||alpha_Q||_1 subject to the
// interpolation conditions, as a linear program (alpha_Q = u - v).
// Throws FitFailure when the LP fails (the driver falls back to fit_mfn).
FitOutcome fit_min_l1(const SampleSet& y);

// Band variant: minimize ||alpha_Q||_1 subject to
// ||M alpha - f(Y)||_inf <= eta / sqrt(p).  eta = 0 reduces to fit_min_l1.
FitOutcome fit_min_l1_noisy(const SampleSet& y, double eta);

// l1 fit in the orthonormal hypercube basis on centered, unscaled
// coordinates (the basis delta carries the domain normalization); used by
// the sparse-recovery experiments.  eta = 0 imposes the interpolation
// conditions exactly.
FitOutcome fit_min_l1_psi(const SampleSet& y, double delta, double eta);

}  // namespace dfo
