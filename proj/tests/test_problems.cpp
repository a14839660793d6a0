#include <doctest.h>

#include <cmath>
#include <map>

#include "dfo/problems.hpp"
#include "dfo/rng.hpp"
#include "test_support.hpp"

using namespace dfo;

TEST_SUITE_BEGIN("problems");

TEST_CASE("value-at-start fixtures pin the formula variants") {
  const std::map<std::string, double> expect = {
      {"ARWHEAD", 42},
      {"BDQRTIC", 1356},
      {"CHNROSNB", 2121.2799999999997},
      {"CRAGGLVY", 3303.5665166998738},
      {"DQDRTIC", 14472},
      {"EXTROSNB", 7604},
      {"GENHUMPS", 102486.15252585578},
      {"HILBERTA", 60.189426285788514},
      {"LIARWHD", 11700},
      {"MOREBV", 0.00078851910126482324},
      {"POWELLSG", 1075},
      {"SCHMVETT", -51.481180098877495},
      {"SROSENBR", 241.99999999999991},
      {"WOODS", 95960},
  };
  for (const auto& [name, value] : expect) {
    const Problem p = get_problem(name);
    CHECK(p.objective(p.start) == doctest::Approx(value).epsilon(1e-14));
  }
}

TEST_CASE("reference derivatives match central differences") {
  Rng rng(321);
  for (const auto& name : problem_names()) {
    const Problem p = get_problem(name);
    CAPTURE(name);
    for (int trial = 0; trial < 10; ++trial) {
      Vector x = p.start;
      for (int i = 0; i < p.n; ++i) x[i] += rng.uniform(-0.1, 0.1);

      const Vector g = p.reference_grad(x);
      const Vector g_fd = dfo_test::fd_gradient(p.objective, x);
      CHECK((g - g_fd).norm() <= 1e-5 * std::max(1.0, g.norm()));

      if (trial == 0) {
        const Matrix h = p.reference_hess(x);
        CHECK((h - h.transpose()).cwiseAbs().maxCoeff() <=
              1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff()));
        // |f| ~ 1e5 at the GENHUMPS start limits second differences to a
        // coarser step than elsewhere
        const double step = p.objective(x) > 1e4 ? 1e-3 : 1e-4;
        const Matrix h_fd = dfo_test::fd_hessian(p.objective, x, step);
        CHECK((h - h_fd).cwiseAbs().maxCoeff() <=
              2e-4 * std::max(1.0, h.cwiseAbs().maxCoeff()));
      }
    }
  }
}

TEST_CASE("anchor definitions") {
  const Problem dq = get_problem("DQDRTIC", 10);
  CHECK(dq.start == Vector::Constant(10, 3.0));
  CHECK(*dq.f_best == 0.0);
  CHECK(dq.objective(Vector::Zero(10)) == 0.0);
  CHECK(hessian_nnz(dq, dq.start) == 10);
  CHECK(hessian_nnz(dq, Vector::Zero(10)) == 10);  // constant Hessian

  const Problem ar = get_problem("ARWHEAD", 20);
  CHECK(ar.start == Vector::Constant(20, 1.0));
  CHECK(*ar.f_best == 0.0);
  const Vector g = ar.reference_grad(ar.start);
  const Vector g_fd = dfo_test::fd_gradient(ar.objective, ar.start);
  CHECK((g - g_fd).norm() <= 1e-6 * std::max(1.0, g.norm()));
}

TEST_CASE("synthetic sparse quadratic") {
  const Problem p = synth_sparse_quad(10, 5, 7);
  CHECK(hessian_nnz(p, p.start) == 5);
  CHECK(hessian_nnz(p, Vector::Zero(10)) == 5);  // constant by construction
  CHECK_FALSE(p.f_best.has_value());

  // magnitudes bounded away from zero
  const Matrix h = p.reference_hess(p.start);
  for (int i = 0; i < 10; ++i)
    for (int j = i; j < 10; ++j)
      if (std::abs(h(i, j)) > 1e-10) CHECK(std::abs(h(i, j)) >= 0.1 - 1e-12);

  // same seed, same problem
  const Problem p2 = synth_sparse_quad(10, 5, 7);
  CHECK((p2.reference_hess(p2.start) - h).cwiseAbs().maxCoeff() == 0.0);

  const Problem z = synth_sparse_quad(10, 1, 3);
  CHECK(hessian_nnz(z, z.start) == 1);
}

TEST_CASE("registry errors") {
  CHECK_THROWS(get_problem("NOSUCH"));
  CHECK_THROWS(get_problem("POWELLSG", 10));  // needs multiples of 4
  CHECK_THROWS(get_problem("WOODS", 6));
  CHECK_THROWS(get_problem("CRAGGLVY", 7));
  CHECK_THROWS(get_problem("CHNROSNB", 60));  // weight table ends at 50

  Problem noref = get_problem("DQDRTIC");
  noref.reference_hess = nullptr;
  CHECK_THROWS(hessian_nnz(noref, noref.start));
}

TEST_CASE("claimed f_best values are reached by an independent BFGS run") {
  for (const auto& name : problem_names()) {
    if (name == "SYNTH_SPARSE_QUAD") continue;
    const Problem p = get_problem(name);
    if (!p.f_best) continue;
    CAPTURE(name);
    const double fb = dfo_test::bfgs_best_value(p.objective, p.reference_grad, p.start);
    CHECK(fb <= *p.f_best + 1e-8);
    CHECK(fb >= *p.f_best - 1e-8 * std::max(1.0, std::abs(*p.f_best)));
  }
}

TEST_SUITE_END();
