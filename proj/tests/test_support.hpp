#pragma once

// Shared test oracles.  Everything here is deliberately independent of the
// implementation paths it checks: plain central differences, tensor
// Gauss-Legendre quadrature, a dense tableau simplex, and a BFGS run for
// certifying reachable objective values.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "dfo/basis.hpp"
#include "dfo/rng.hpp"

namespace dfo_test {

using dfo::Matrix;
using dfo::Vector;

inline Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x,
                          double h = 1e-5) {
  Vector g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    Vector xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

inline Matrix fd_hessian(const std::function<double(const Vector&)>& f, const Vector& x,
                         double h = 1e-4) {
  const int n = static_cast<int>(x.size());
  Matrix hess(n, n);
  const double f0 = f(x);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (i == j) {
        Vector xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        hess(i, i) = (f(xp) - 2.0 * f0 + f(xm)) / (h * h);
      } else {
        Vector xpp = x, xpm = x, xmp = x, xmm = x;
        xpp[i] += h; xpp[j] += h;
        xpm[i] += h; xpm[j] -= h;
        xmp[i] -= h; xmp[j] += h;
        xmm[i] -= h; xmm[j] -= h;
        hess(i, j) = hess(j, i) = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * h * h);
      }
    }
  }
  return hess;
}

// 10-point Gauss-Legendre rule on [-1, 1].
inline const std::vector<std::pair<double, double>>& gauss_legendre_10() {
  static const std::vector<std::pair<double, double>> rule = {
      {-0.9739065285171717, 0.0666713443086881}, {-0.8650633666889845, 0.1494513491505806},
      {-0.6794095682990244, 0.2190863625159820}, {-0.4333953941292472, 0.2692667193099963},
      {-0.1488743389816312, 0.2955242247147529}, {0.1488743389816312, 0.2955242247147529},
      {0.4333953941292472, 0.2692667193099963},  {0.6794095682990244, 0.2190863625159820},
      {0.8650633666889845, 0.1494513491505806},  {0.9739065285171717, 0.0666713443086881}};
  return rule;
}

// integral of f over [-delta, delta]^n under the uniform probability measure
inline double quadrature_mean(const std::function<double(const Vector&)>& f, int n,
                              double delta) {
  const auto& rule = gauss_legendre_10();
  const int per = static_cast<int>(rule.size());
  long total = 1;
  for (int i = 0; i < n; ++i) total *= per;
  double acc = 0.0;
  Vector x(n);
  for (long c = 0; c < total; ++c) {
    long rem = c;
    double w = 1.0;
    for (int i = 0; i < n; ++i) {
      const auto& [node, weight] = rule[rem % per];
      rem /= per;
      x[i] = delta * node;
      w *= 0.5 * weight;  // uniform probability normalization per axis
    }
    acc += w * f(x);
  }
  return acc;
}

inline dfo::QuadraticModel random_model(int n, const dfo::BasisKind& basis, dfo::Rng& rng,
                                        bool random_center = false) {
  dfo::QuadraticModel m;
  m.n = n;
  m.basis = basis;
  m.alpha = Vector::Zero(dfo::basis_size(n));
  for (int i = 0; i < m.alpha.size(); ++i) m.alpha[i] = rng.uniform(-2.0, 2.0);
  m.center = Vector::Zero(n);
  if (random_center)
    for (int i = 0; i < n; ++i) m.center[i] = rng.uniform(-1.0, 1.0);
  return m;
}

// BFGS with Armijo backtracking; certifies reachable objective values for
// the registry (independent of the derivative-free path).
inline double bfgs_best_value(const std::function<double(const Vector&)>& f,
                              const std::function<Vector(const Vector&)>& grad, Vector x,
                              int max_iter = 20000, double gtol = 1e-12) {
  const int n = static_cast<int>(x.size());
  Matrix hinv = Matrix::Identity(n, n);
  double fx = f(x);
  Vector g = grad(x);
  for (int it = 0; it < max_iter; ++it) {
    if (g.norm() <= gtol * std::max(1.0, std::abs(fx))) break;
    Vector d = -hinv * g;
    if (d.dot(g) >= 0.0) {
      hinv = Matrix::Identity(n, n);
      d = -g;
    }
    double step = 1.0;
    const double slope = g.dot(d);
    double f_new = fx;
    Vector x_new = x;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      x_new = x + step * d;
      f_new = f(x_new);
      if (f_new <= fx + 1e-4 * step * slope) {
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
    const Vector g_new = grad(x_new);
    const Vector s = x_new - x;
    const Vector yv = g_new - g;
    const double sy = s.dot(yv);
    if (sy > 1e-12 * s.norm() * yv.norm()) {
      const Matrix eye = Matrix::Identity(n, n);
      hinv = (eye - s * yv.transpose() / sy) * hinv * (eye - yv * s.transpose() / sy) +
             s * s.transpose() / sy;
    }
    x = x_new;
    fx = f_new;
    g = g_new;
  }
  return fx;
}

}  // namespace dfo_test
