#include "dfo/driver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dfo/trs.hpp"

namespace dfo {

void DfoConfig::validate() const {
  if (!(0.0 < eta1 && eta1 < eta2)) throw std::invalid_argument("DfoConfig: need 0 < eta1 < eta2");
  if (!(0.0 < gamma1 && gamma1 < 1.0 && 1.0 < gamma2))
    throw std::invalid_argument("DfoConfig: need 0 < gamma1 < 1 < gamma2");
  if (!(eps_g > 0.0 && delta_stop > 0.0 && delta0 > 0.0 && prune_trigger > 0.0))
    throw std::invalid_argument("DfoConfig: tolerances must be positive");
  if (t != 1 && t != 2) throw std::invalid_argument("DfoConfig: t must be 1 or 2");
}

const char* stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::Gradient: return "gradient";
    case StopReason::Radius: return "radius";
    case StopReason::FevalBudget: return "feval-budget";
  }
  return "?";
}

SampleSet update_sample_set(const SampleSet& y, const Vector& x_next, const Vector& trial,
                            double trial_value, bool success, int p_max) {
  SampleSet out = y;
  if (y.size() < p_max) {
    out.points.push_back(trial);
    out.values.push_back(trial_value);
    return out;
  }

  // farthest point from the new iterate, lowest index on ties
  int far = 0;
  double far_d = -1.0;
  for (int i = 0; i < y.size(); ++i) {
    const double d = (y.points[i] - x_next).norm();
    if (d > far_d) {
      far_d = d;
      far = i;
    }
  }

  if (!success) {
    // swap in the rejected trial only when it is no farther from x_k than
    // the outgoing point (x_next == x_k here)
    if ((trial - x_next).norm() > (y.points[far] - x_next).norm()) return out;
  }
  out.points[far] = trial;
  out.values[far] = trial_value;
  return out;
}

SampleSet prune_far_points(const SampleSet& y, const Vector& x, double delta,
                           const DfoConfig& cfg) {
  if (delta >= cfg.prune_trigger) return y;
  if (y.size() < cfg.min_kept_points) return y;

  double r = cfg.prune_radius_base;
  while (true) {
    int inside = 0;
    for (const auto& pt : y.points)
      if ((pt - x).norm() <= r * delta) ++inside;
    if (inside >= cfg.min_kept_points) break;
    r *= 2.0;
  }

  SampleSet out;
  out.center = y.center;
  out.scale = y.scale;
  for (int i = 0; i < y.size(); ++i) {
    if ((y.points[i] - x).norm() <= r * delta) {
      out.points.push_back(y.points[i]);
      out.values.push_back(y.values[i]);
    }
  }
  return out;
}

namespace {

struct ModelState {
  QuadraticModel model;
  Vector g;
  Matrix h;
  double gnorm = 0.0;
  bool lp_fallback = false;
};

ModelState build_model(const SampleSet& y, const Vector& x, int t) {
  ModelState st;
  if (t == 1) {
    try {
      st.model = fit_min_l1(y).model;
    } catch (const FitFailure&) {
      st.lp_fallback = true;
      st.model = fit_mfn(y).model;
    }
  } else {
    st.model = fit_mfn(y).model;
  }
  const ModelDerivatives d = model_value_grad_hess(st.model, x);
  st.g = d.gradient;
  st.h = d.hessian;
  st.gnorm = st.g.norm();
  return st;
}

}  // namespace

DfoTrace run_dfo_tr(const Objective& f, const Vector& x0, const DfoConfig& cfg) {
  cfg.validate();
  const int n = static_cast<int>(x0.size());
  const int p_min = n + 1;
  const int p_max = basis_size(n);

  DfoTrace trace;
  long fevals = 0;
  auto eval = [&](const Vector& x) {
    ++fevals;
    return f(x);
  };

  // Step 0: stencil x0, x0 +- delta0 e_i
  SampleSet y;
  y.center = x0;
  y.points.push_back(x0);
  y.values.push_back(eval(x0));
  for (int i = 0; i < n; ++i) {
    Vector xp = x0, xm = x0;
    xp[i] += cfg.delta0;
    xm[i] -= cfg.delta0;
    y.points.push_back(xp);
    y.values.push_back(eval(xp));
    y.points.push_back(xm);
    y.values.push_back(eval(xm));
  }

  Vector x = x0;
  double fx = y.values[0];
  double delta = cfg.delta0;

  auto finish = [&](StopReason r, double gnorm) {
    trace.reason = r;
    trace.final_x = x;
    trace.final_f = fx;
    trace.final_gnorm = gnorm;
    trace.fevals = fevals;
    return trace;
  };

  for (int k = 0;; ++k) {
    // Step 1
    y.center = x;
    ModelState st;
    try {
      st = build_model(y, x, cfg.t);
    } catch (const FitFailure&) {
      // Degenerate sample set beyond rescue: shrink and rebuild the stencil
      // around the current iterate.  Flagged via lp_fallbacks; in practice
      // unreachable because the MFN solve regularizes rank deficiency.
      ++trace.lp_fallbacks;
      delta *= cfg.gamma1;
      if (delta <= cfg.delta_stop) return finish(StopReason::Radius, 0.0);
      y.points.assign(1, x);
      y.values.assign(1, fx);
      for (int i = 0; i < n; ++i) {
        Vector xp = x, xm = x;
        xp[i] += delta;
        xm[i] -= delta;
        y.points.push_back(xp);
        y.values.push_back(eval(xp));
        y.points.push_back(xm);
        y.values.push_back(eval(xm));
      }
      continue;
    }
    if (st.lp_fallback) ++trace.lp_fallbacks;

    // Step 2
    if (st.gnorm <= cfg.eps_g) return finish(StopReason::Gradient, st.gnorm);
    if (delta <= cfg.delta_stop) return finish(StopReason::Radius, st.gnorm);

    // Step 3
    const TrsSolution trs = solve_trs({st.g, st.h, delta});
    const Vector trial = x + trs.s;
    const double pred = -(st.g.dot(trs.s) + 0.5 * trs.s.dot(st.h * trs.s));

    // Step 4
    if (fevals >= cfg.max_fevals) return finish(StopReason::FevalBudget, st.gnorm);
    const double f_trial = eval(trial);
    const bool duplicate = y.contains(trial);
    double rho;
    if (pred <= 0.0 || duplicate)
      rho = -std::numeric_limits<double>::infinity();
    else
      rho = (fx - f_trial) / pred;

    // Step 5
    const bool success = rho >= cfg.eta1;
    const int y_size_now = y.size();
    const double delta_used = delta;
    if (!success && y_size_now >= p_min) delta *= cfg.gamma1;
    if (rho > cfg.eta2) delta *= cfg.gamma2;

    Vector x_next = success ? trial : x;
    const double fx_next = success ? f_trial : fx;

    // Step 6
    if (!duplicate) y = update_sample_set(y, x_next, trial, f_trial, success, p_max);

    // Step 7
    y = prune_far_points(y, x_next, delta, cfg);

    DfoIter rec;
    rec.k = k;
    rec.x = x;
    rec.f = fx;
    rec.delta = delta_used;
    rec.y_size = y_size_now;
    rec.rho = rho;
    rec.success = success;
    rec.gnorm = st.gnorm;
    rec.fevals = fevals;
    rec.lp_fallback = st.lp_fallback;
    trace.iters.push_back(rec);

    x = std::move(x_next);
    fx = fx_next;
  }
}

}  // namespace dfo
