#include <doctest.h>

#include <cmath>

#include "dfo/basis.hpp"
#include "test_support.hpp"

using namespace dfo;
using dfo_test::quadrature_mean;
using dfo_test::random_model;

namespace {
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt5 = std::sqrt(5.0);

Vector vec1(double a) {
  Vector v(1);
  v << a;
  return v;
}
}  // namespace

TEST_SUITE_BEGIN("basis");

TEST_CASE("eval_basis canonical n=1") {
  const Vector phi = eval_basis(BasisKind::canonical(), 1, vec1(2.0));
  REQUIRE(phi.size() == 3);
  CHECK(phi[0] == doctest::Approx(2.0).epsilon(1e-15));  // 1/2 * 4
  CHECK(phi[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(phi[2] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("eval_basis psi n=1 at the cube corner") {
  const Vector phi = eval_basis(BasisKind::psi_hypercube(1.0), 1, vec1(1.0));
  // sqrt5 is also the sup of |psi_{2,i}| over the cube
  CHECK(phi[0] == doctest::Approx(kSqrt5).epsilon(1e-14));
  CHECK(phi[1] == doctest::Approx(kSqrt3).epsilon(1e-14));
  CHECK(phi[2] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("eval_basis psi n=2 at the origin") {
  for (const double delta : {0.3, 1.0, 7.0}) {
    const Vector phi = eval_basis(BasisKind::psi_hypercube(delta), 2, Vector::Zero(2));
    REQUIRE(phi.size() == 6);
    CHECK(phi[0] == doctest::Approx(-kSqrt5 / 2).epsilon(1e-15));
    CHECK(phi[1] == doctest::Approx(-kSqrt5 / 2).epsilon(1e-15));
    for (int i = 2; i < 5; ++i) CHECK(phi[i] == 0.0);
    CHECK(phi[5] == 1.0);
  }
}

TEST_CASE("gram_psi equals the identity, quadrature cross-check") {
  struct Case {
    int n;
    double delta;
  };
  for (const Case c : {Case{1, 1.0}, Case{3, 0.5}}) {
    const Matrix g = gram_psi(c.n, c.delta);
    const int q = basis_size(c.n);
    REQUIRE(g.rows() == q);
    CHECK((g - Matrix::Identity(q, q)).cwiseAbs().maxCoeff() <= 1e-12);

    // independent Gauss-Legendre oracle reproduces every entry
    const BasisKind psi = BasisKind::psi_hypercube(c.delta);
    for (int a = 0; a < q; ++a) {
      for (int b = a; b < q; ++b) {
        const double entry = quadrature_mean(
            [&](const Vector& x) {
              const Vector p = eval_basis(psi, c.n, x);
              return p[a] * p[b];
            },
            c.n, c.delta);
        CHECK(std::abs(g(a, b) - entry) <= 1e-12);
      }
    }
  }
}

TEST_CASE("gram_psi identity across dimensions and radii") {
  for (int n = 1; n <= 6; ++n) {
    for (const double delta : {0.1, 1.0, 10.0}) {
      const Matrix g = gram_psi(n, delta);
      CHECK((g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("psi class sup-norms on a cube lattice") {
  // class maxima sqrt5, 3, sqrt3, 1, attained at corners; all <= 3
  const int n = 2;
  for (const double delta : {0.1, 1.0, 10.0}) {
    const BasisKind psi = BasisKind::psi_hypercube(delta);
    const int per = 10;
    Vector cls_max = Vector::Zero(4);
    Vector x(n);
    for (int c = 0; c < per * per; ++c) {
      x[0] = -delta + 2.0 * delta * (c % per) / (per - 1);
      x[1] = -delta + 2.0 * delta * (c / per) / (per - 1);
      const Vector p = eval_basis(psi, n, x);
      cls_max[0] = std::max(cls_max[0], std::max(std::abs(p[0]), std::abs(p[1])));
      cls_max[1] = std::max(cls_max[1], std::abs(p[2]));
      cls_max[2] = std::max(cls_max[2], std::max(std::abs(p[3]), std::abs(p[4])));
      cls_max[3] = std::max(cls_max[3], std::abs(p[5]));
    }
    CHECK(std::abs(cls_max[0] - kSqrt5) <= 1e-12);
    CHECK(std::abs(cls_max[1] - 3.0) <= 1e-12);
    CHECK(std::abs(cls_max[2] - kSqrt3) <= 1e-12);
    CHECK(std::abs(cls_max[3] - 1.0) <= 1e-12);
    for (int k = 0; k < 4; ++k) CHECK(cls_max[k] <= 3.0 + 1e-12);
  }
}

TEST_CASE("convert_coefficients canonical half-square") {
  QuadraticModel m;
  m.n = 1;
  m.basis = BasisKind::canonical();
  m.alpha = Vector::Zero(3);
  m.alpha[0] = 1.0;  // m(x) = 1/2 x^2
  m.center = Vector::Zero(1);

  const QuadraticModel p = convert_coefficients(m, BasisKind::psi_hypercube(1.0));
  CHECK(p.alpha[0] == doctest::Approx(1.0 / (3.0 * kSqrt5)).epsilon(1e-14));
  CHECK(p.alpha[1] == doctest::Approx(0.0));
  CHECK(p.alpha[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  dfo::Rng rng(11);
  for (int k = 0; k < 5; ++k) {
    const Vector x = vec1(rng.uniform(-1.0, 1.0));
    const double vm = model_value_grad_hess(m, x).value;
    const double vp = model_value_grad_hess(p, x).value;
    CHECK(std::abs(vm - vp) <= 1e-12);
  }
}

TEST_CASE("convert_coefficients cross term") {
  QuadraticModel m;
  m.n = 2;
  m.basis = BasisKind::canonical();
  m.alpha = Vector::Zero(6);
  m.alpha[offdiag_index(2, 0, 1)] = 1.0;  // m(x) = x1 x2
  m.center = Vector::Zero(2);

  const QuadraticModel p = convert_coefficients(m, BasisKind::psi_hypercube(2.0));
  for (int i = 0; i < 6; ++i) {
    if (i == offdiag_index(2, 0, 1))
      CHECK(p.alpha[i] == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    else
      CHECK(p.alpha[i] == 0.0);
  }
}

TEST_CASE("conversion round trip is the identity") {
  dfo::Rng rng(7);
  for (int n : {1, 2, 4}) {
    for (const double delta : {0.25, 1.0, 5.0}) {
      const QuadraticModel m = random_model(n, BasisKind::canonical(), rng);
      const QuadraticModel p = convert_coefficients(m, BasisKind::psi_hypercube(delta));
      const QuadraticModel back = convert_coefficients(p, BasisKind::canonical());
      CHECK((back.alpha - m.alpha).cwiseAbs().maxCoeff() <= 1e-12 * 2.0);

      // sparsity carryover on the off-diagonal block, both directions
      CHECK(p.offdiag_card() == m.offdiag_card());
    }
  }
}

TEST_CASE("off-diagonal sparsity carries over exactly") {
  dfo::Rng rng(13);
  const int n = 5;
  QuadraticModel m = random_model(n, BasisKind::canonical(), rng);
  m.alpha[offdiag_index(n, 0, 2)] = 0.0;
  m.alpha[offdiag_index(n, 1, 4)] = 0.0;
  m.alpha[offdiag_index(n, 3, 4)] = 0.0;
  const QuadraticModel p = convert_coefficients(m, BasisKind::psi_hypercube(0.7));
  CHECK(p.offdiag_card() == m.offdiag_card());
  CHECK(p.alpha[offdiag_index(n, 0, 2)] == 0.0);
  CHECK(p.alpha[offdiag_index(n, 1, 4)] == 0.0);
  CHECK(p.alpha[offdiag_index(n, 3, 4)] == 0.0);
}

TEST_CASE("model calculus on a simple model") {
  QuadraticModel m;
  m.n = 2;
  m.basis = BasisKind::canonical();
  m.alpha = Vector::Zero(6);
  m.alpha[0] = 1.0;                     // 1/2 x1^2
  m.alpha[linear_index(2, 1)] = 1.0;    // + x2
  m.center = Vector::Zero(2);

  Vector x(2);
  x << 1.0, 1.0;
  const ModelDerivatives d = model_value_grad_hess(m, x);
  CHECK(d.value == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(d.gradient[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.gradient[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.hessian(0, 0) == doctest::Approx(1.0));
  CHECK(d.hessian(0, 1) == doctest::Approx(0.0));
  CHECK(d.hessian(1, 1) == doctest::Approx(0.0));
}

TEST_CASE("model gradient matches central differences") {
  dfo::Rng rng(29);
  for (int k = 0; k < 10; ++k) {
    const int n = 1 + static_cast<int>(rng.uniform_int(1, 4));
    const bool psi = rng.uniform() < 0.5;
    const QuadraticModel m =
        random_model(n, psi ? BasisKind::psi_hypercube(1.5) : BasisKind::canonical(), rng, true);
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = rng.uniform(-1.0, 1.0);

    const ModelDerivatives d = model_value_grad_hess(m, x);
    const Vector fd = dfo_test::fd_gradient(
        [&](const Vector& z) { return model_value_grad_hess(m, z).value; }, x);
    CHECK((d.gradient - fd).norm() <= 1e-6 * std::max(1.0, d.gradient.norm()));

    // quadratic: the Hessian does not depend on x
    Vector x2 = x;
    x2[0] += 3.7;
    const ModelDerivatives d2 = model_value_grad_hess(m, x2);
    CHECK((d.hessian - d2.hessian).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("error_profile of an exact quadratic model") {
  dfo::Rng rng(17);
  const int n = 2;
  const QuadraticModel m = random_model(n, BasisKind::canonical(), rng);
  const ModelDerivatives d0 = model_value_grad_hess(m, Vector::Zero(n));
  const Matrix hm = d0.hessian;
  const Vector g0 = d0.gradient;
  const double c0 = d0.value;
  const SmoothFunction f{
      [&](const Vector& x) { return 0.5 * x.dot(hm * x) + g0.dot(x) + c0; },
      [&](const Vector& x) { return Vector(hm * x + g0); },
      [&](const Vector&) { return hm; }};

  const double delta = 0.5;
  const ErrorProfile e = error_profile(m, f, Vector::Zero(n), delta, 200);
  CHECK(e.ef <= 1e-12);
  CHECK(e.eg <= 1e-12);
  CHECK(e.eh <= 1e-12);

  // shifting the model by delta^3 gives e_f = 1 exactly
  QuadraticModel shifted = m;
  shifted.alpha[constant_index(n)] += delta * delta * delta;
  const ErrorProfile e2 = error_profile(shifted, f, Vector::Zero(n), delta, 200);
  CHECK(e2.ef == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e2.eg <= 1e-12);
  CHECK(e2.eh <= 1e-12);
}

TEST_CASE("error_profile is stable under grid refinement (Rosenbrock Taylor)") {
  const SmoothFunction rosen{
      [](const Vector& x) {
        const double a = x[1] - x[0] * x[0];
        return 100.0 * a * a + (1.0 - x[0]) * (1.0 - x[0]);
      },
      [](const Vector& x) {
        Vector g(2);
        const double a = x[1] - x[0] * x[0];
        g[0] = -400.0 * x[0] * a - 2.0 * (1.0 - x[0]);
        g[1] = 200.0 * a;
        return g;
      },
      [](const Vector& x) {
        Matrix h(2, 2);
        h(0, 0) = -400.0 * (x[1] - x[0] * x[0]) + 800.0 * x[0] * x[0] + 2.0;
        h(0, 1) = h(1, 0) = -400.0 * x[0];
        h(1, 1) = 200.0;
        return h;
      }};

  // second-order Taylor model at the origin
  const Vector x0 = Vector::Zero(2);
  QuadraticModel taylor;
  taylor.n = 2;
  taylor.basis = BasisKind::canonical();
  taylor.center = x0;
  taylor.alpha = Vector::Zero(6);
  const Matrix h0 = rosen.hessian(x0);
  const Vector g0 = rosen.gradient(x0);
  taylor.alpha[0] = h0(0, 0);
  taylor.alpha[1] = h0(1, 1);
  taylor.alpha[offdiag_index(2, 0, 1)] = h0(0, 1);
  taylor.alpha[linear_index(2, 0)] = g0[0];
  taylor.alpha[linear_index(2, 1)] = g0[1];
  taylor.alpha[constant_index(2)] = rosen.value(x0);

  const double delta = 0.1;
  const ErrorProfile coarse = error_profile(taylor, rosen, x0, delta, 100);
  const ErrorProfile fine = error_profile(taylor, rosen, x0, delta, 10000);
  CHECK(std::isfinite(coarse.ef));
  CHECK(fine.ef <= coarse.ef * 1.1 + 1e-12);
  CHECK(coarse.ef <= fine.ef * 1.1 + 1e-12);
  CHECK(coarse.eg <= fine.eg * 1.1 + 1e-9);
  CHECK(fine.eg <= coarse.eg * 1.1 + 1e-9);
  CHECK(std::abs(coarse.eh - fine.eh) <= 0.1 * std::max(coarse.eh, fine.eh) + 1e-9);
}

TEST_SUITE_END();
