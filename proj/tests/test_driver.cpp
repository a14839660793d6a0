#include <doctest.h>

#include <cmath>

#include "dfo/driver.hpp"
#include "dfo/problems.hpp"

using namespace dfo;

namespace {

SampleSet grid_set(std::vector<Vector> pts) {
  SampleSet y;
  y.points = std::move(pts);
  y.values.assign(y.points.size(), 0.0);
  for (size_t i = 0; i < y.points.size(); ++i) y.values[i] = static_cast<double>(i);
  y.center = Vector::Zero(y.points[0].size());
  return y;
}

long fevals_to_reach(const Problem& p, int t, double target, long budget) {
  long count = 0, hit = -1;
  Objective f = [&](const Vector& x) {
    const double v = p.objective(x);
    ++count;
    if (hit < 0 && v <= target) hit = count;
    return v;
  };
  DfoConfig cfg;
  cfg.t = t;
  cfg.max_fevals = budget;
  run_dfo_tr(f, p.start, cfg);
  return hit;
}

void check_trace_contracts(const DfoTrace& tr, int n) {
  const int p_min = n + 1;
  const int p_max = basis_size(n);
  long expected_fevals = 2 * n + 1;
  for (size_t k = 0; k < tr.iters.size(); ++k) {
    const DfoIter& it = tr.iters[k];
    ++expected_fevals;  // exactly one evaluation per iteration
    CHECK(it.fevals == expected_fevals);
    CHECK(it.y_size <= p_max);
    CHECK(it.y_size >= 1);
    if (k + 1 < tr.iters.size()) {
      const DfoIter& next = tr.iters[k + 1];
      if (it.success) {
        CHECK(next.delta >= it.delta);          // no shrink on success
        CHECK(next.f < it.f);                   // accepted descent
      }
      if (it.y_size < p_min) CHECK(next.delta >= it.delta);  // no shrink below p_min
      if (!it.success) CHECK(next.f == it.f);
    }
  }
  CHECK(tr.fevals == expected_fevals);
}

}  // namespace

TEST_SUITE_BEGIN("driver");

TEST_CASE("sphere in five dimensions is solved in a handful of steps") {
  long count = 0;
  long hit = -1;
  Objective f = [&](const Vector& x) {
    ++count;
    const double v = x.squaredNorm();
    if (hit < 0 && v <= 1e-10) hit = count;
    return v;
  };
  DfoConfig cfg;
  cfg.t = 2;
  const DfoTrace tr = run_dfo_tr(f, Vector::Ones(5), cfg);
  CHECK(tr.final_f <= 1e-10);
  REQUIRE(hit > 0);
  CHECK(hit <= 60);
  check_trace_contracts(tr, 5);
}

TEST_CASE("DQDRTIC and HILBERTA anchors") {
  const Problem dq = get_problem("DQDRTIC", 10);
  for (const int t : {1, 2}) {
    const long hit = fevals_to_reach(dq, t, 1e-6, 2000);
    CAPTURE(t);
    REQUIRE(hit > 0);
    CHECK(hit <= 200);
  }
  const Problem hil = get_problem("HILBERTA", 10);
  for (const int t : {1, 2}) {
    const long hit = fevals_to_reach(hil, t, 1e-6, 2000);
    CAPTURE(t);
    REQUIRE(hit > 0);
    CHECK(hit <= 50);
  }
}

TEST_CASE("step 6 case table") {
  const int p_max = 6;  // n = 2
  Vector x0 = Vector::Zero(2);
  std::vector<Vector> pts;
  for (const auto& v : {std::pair{0.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
    Vector p(2);
    p << v.first, v.second;
    pts.push_back(p);
  }
  const SampleSet y5 = grid_set(pts);  // 5 points, below p_max

  Vector trial(2);
  trial << 0.5, 0.5;

  // below p_max: the trial is always added, success or not
  for (const bool success : {true, false}) {
    const SampleSet out = update_sample_set(y5, success ? trial : x0, trial, 9.0, success, p_max);
    CHECK(out.size() == 6);
    CHECK(out.contains(trial));
  }

  // at p_max, success: trial in, farthest-from-new-iterate out, size fixed
  std::vector<Vector> pts6 = pts;
  Vector far(2);
  far << 3.0, 3.0;
  pts6.push_back(far);
  const SampleSet y6 = grid_set(pts6);
  {
    const SampleSet out = update_sample_set(y6, trial, trial, 9.0, true, p_max);
    CHECK(out.size() == p_max);
    CHECK(out.contains(trial));
    CHECK_FALSE(out.contains(far));
  }

  // at p_max, unsuccessful, trial farther from x_k than the farthest: no change
  {
    Vector distant(2);
    distant << 9.0, 9.0;
    const SampleSet out = update_sample_set(y6, x0, distant, 9.0, false, p_max);
    CHECK(out.size() == p_max);
    CHECK_FALSE(out.contains(distant));
    CHECK(out.contains(far));
  }

  // at p_max, unsuccessful, trial no farther: swap with the farthest
  {
    const SampleSet out = update_sample_set(y6, x0, trial, 9.0, false, p_max);
    CHECK(out.size() == p_max);
    CHECK(out.contains(trial));
    CHECK_FALSE(out.contains(far));
  }
}

TEST_CASE("step 7 doubling radius semantics") {
  DfoConfig cfg;
  const Vector x = Vector::Zero(2);
  auto at_distance = [](double d) {
    Vector p(2);
    p << d, 0.0;
    return p;
  };

  // trigger not met
  {
    const SampleSet y = grid_set({at_distance(0.5), at_distance(1.0), at_distance(2.0)});
    const SampleSet out = prune_far_points(y, x, 1e-2, cfg);
    CHECK(out.size() == 3);
  }

  // the worked doubling example: distances 5e-3, 1e-2, 3e-2, 0.5 with
  // delta = 1e-4 requires r = 400 and drops only the far point
  {
    const SampleSet y = grid_set(
        {at_distance(5e-3), at_distance(1e-2), at_distance(3e-2), at_distance(0.5)});
    const SampleSet out = prune_far_points(y, x, 1e-4, cfg);
    CHECK(out.size() == 3);
    for (int i = 0; i < out.size(); ++i) CHECK(out.points[i][0] <= 3e-2 + 1e-15);
  }

  // everything already inside 100 delta
  {
    const SampleSet y = grid_set({at_distance(1e-4), at_distance(2e-4), at_distance(3e-4)});
    const SampleSet out = prune_far_points(y, x, 1e-4, cfg);
    CHECK(out.size() == 3);
  }

  // fewer than three points: keep all
  {
    const SampleSet y = grid_set({at_distance(5.0), at_distance(9.0)});
    const SampleSet out = prune_far_points(y, x, 1e-4, cfg);
    CHECK(out.size() == 2);
  }
}

TEST_CASE("trace contracts on nonquadratic problems") {
  for (const auto& [name, n, t] : {std::tuple<const char*, int, int>{"SROSENBR", 10, 1},
                                   {"ARWHEAD", 15, 2},
                                   {"MOREBV", 10, 1}}) {
    const Problem p = get_problem(name, n);
    CAPTURE(name);
    DfoConfig cfg;
    cfg.t = t;
    cfg.max_fevals = 700;
    const DfoTrace tr = run_dfo_tr(p.objective, p.start, cfg);
    check_trace_contracts(tr, p.n);
    CHECK(tr.final_f < p.objective(p.start));
    if (tr.reason == StopReason::Gradient) CHECK(tr.final_gnorm <= cfg.eps_g);
    if (tr.reason == StopReason::Radius) {
      CHECK(tr.iters.back().delta * cfg.gamma1 <= cfg.delta_stop * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("budget termination") {
  const Problem p = get_problem("CHNROSNB", 15);
  DfoConfig cfg;
  cfg.t = 2;
  cfg.max_fevals = 80;
  const DfoTrace tr = run_dfo_tr(p.objective, p.start, cfg);
  CHECK(tr.reason == StopReason::FevalBudget);
  CHECK(tr.fevals <= 80);
}

TEST_SUITE_END();
