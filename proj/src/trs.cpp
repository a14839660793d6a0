#include "dfo/trs.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace dfo {

namespace {

constexpr int kMaxIter = 100;
constexpr double kBoundaryTol = 1e-6;  // relative to delta

// ||s(lambda)||_2 with s_i = -a_i / (ev_i + lambda)
double step_norm(const Vector& a, const Vector& ev, double lambda) {
  double acc = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    const double d = ev[i] + lambda;
    acc += (a[i] * a[i]) / (d * d);
  }
  return std::sqrt(acc);
}

Vector assemble_step(const Matrix& q, const Vector& a, const Vector& ev, double lambda,
                     double zero_tol) {
  Vector sz(a.size());
  for (int i = 0; i < a.size(); ++i) {
    const double d = ev[i] + lambda;
    sz[i] = std::abs(d) > zero_tol ? -a[i] / d : 0.0;
  }
  return q * sz;
}

}  // namespace

TrsSolution solve_trs(const TrsProblem& p) {
  const int n = static_cast<int>(p.g.size());
  if (p.H.rows() != n || p.H.cols() != n) throw std::invalid_argument("solve_trs: size mismatch");
  if (!(p.delta > 0.0)) throw std::invalid_argument("solve_trs: delta must be positive");
  const double hscale = std::max(1.0, p.H.cwiseAbs().maxCoeff());
  if ((p.H - p.H.transpose()).cwiseAbs().maxCoeff() > 1e-12 * hscale)
    throw std::invalid_argument("solve_trs: H not symmetric");

  const Matrix hs = 0.5 * (p.H + p.H.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(hs);
  if (es.info() != Eigen::Success) throw std::runtime_error("solve_trs: eigendecomposition failed");
  const Vector ev = es.eigenvalues();  // ascending
  const Matrix q = es.eigenvectors();
  const Vector a = q.transpose() * p.g;

  TrsSolution out;
  auto finish = [&](Vector s, double lambda, bool hard, int iters) {
    out.s = std::move(s);
    out.lambda = std::max(lambda, 0.0);
    out.model_value = p.g.dot(out.s) + 0.5 * out.s.dot(hs * out.s);
    out.hard_case = hard;
    out.iterations = iters;
    return out;
  };

  const double ev_min = ev[0];
  const double lam_lo = std::max(0.0, -ev_min);
  const double eig_tol = 1e-12 * std::max(1.0, std::abs(ev.cwiseAbs().maxCoeff()));

  // Norm of the (pseudo-inverse) step at the left end of the admissible
  // interval; components in the frozen eigenspace excluded.
  double norm_lo_sq = 0.0;
  bool lo_singular_hit = false;  // g has weight on an eigendirection frozen at lam_lo
  for (int i = 0; i < n; ++i) {
    const double d = ev[i] + lam_lo;
    if (d > eig_tol)
      norm_lo_sq += (a[i] * a[i]) / (d * d);
    else if (std::abs(a[i]) > eig_tol)
      lo_singular_hit = true;
  }
  const double norm_lo = lo_singular_hit ? kInf : std::sqrt(norm_lo_sq);

  if (norm_lo <= p.delta) {
    if (lam_lo == 0.0) {
      // interior Newton step (covers g = 0, H psd: s = 0)
      return finish(assemble_step(q, a, ev, 0.0, eig_tol), 0.0, false, 0);
    }
    // hard case: pseudo-step plus boundary-filling eigenstep
    Vector s = assemble_step(q, a, ev, lam_lo, eig_tol);
    const double tau = std::sqrt(std::max(p.delta * p.delta - s.squaredNorm(), 0.0));
    Vector u = q.col(0);
    int lead = 0;
    while (lead < n && u[lead] == 0.0) ++lead;
    if (lead < n && u[lead] < 0.0) u = -u;  // deterministic sign
    s += tau * u;
    return finish(std::move(s), lam_lo, true, 0);
  }

  // Boundary solution: safeguarded Newton on h(l) = 1/delta - 1/phi(l),
  // which is decreasing with a root in (lam_lo, inf).
  double lo = lam_lo;
  double hi = lam_lo + std::max(1.0, std::abs(ev_min));
  while (step_norm(a, ev, hi) > p.delta) {
    lo = hi;
    hi = 2.0 * hi + 1.0;
  }
  double lambda = 0.5 * (lo + hi);
  int it = 0;
  double phi = step_norm(a, ev, lambda);
  for (; it < kMaxIter; ++it) {
    // boundary tolerance, tightened so that the complementarity residual
    // lambda * |delta - ||s||| also stays below kBoundaryTol * delta
    if (std::abs(phi - p.delta) * std::max(1.0, lambda) <= kBoundaryTol * p.delta) break;
    if (phi > p.delta)
      lo = std::max(lo, lambda);
    else
      hi = std::min(hi, lambda);
    // Newton on w(l) = 1/delta - 1/phi(l):  l+ = l + (phi-delta) phi^2 / (delta sum)
    double dsum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = ev[i] + lambda;
      dsum += (a[i] * a[i]) / (d * d * d);
    }
    double next = lambda + (phi - p.delta) * phi * phi / (p.delta * dsum);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    lambda = next;
    phi = step_norm(a, ev, lambda);
  }
  return finish(assemble_step(q, a, ev, lambda, 0.0), lambda, false, it);
}

}  // namespace dfo
