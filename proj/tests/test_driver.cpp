#include "alcp/center.hpp"
#include "alcp/driver.hpp"
#include "alcp/problems.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace alcp;

namespace {

LambdaObjective quadratic_to(const Matrix& target) {
  return LambdaObjective([target](const Matrix& u) { return 0.5 * (u - target).squaredNorm(); },
                         [target](const Matrix& u) -> Matrix { return u - target; });
}

}  // namespace

TEST_CASE("alarming condition") {
  CHECK_FALSE(alarming(SkewParam::zero(5, 2), 1.5));

  Matrix a(2, 2), b = Matrix::Zero(3, 2);
  a << 0.0, 1.0, -1.0, 0.0;  // ||A||_2 = 1
  b(0, 0) = 1.0;             // ||B||_2 = 1
  CHECK(alarming(SkewParam(a, b), 1.5));
  CHECK_FALSE(alarming(SkewParam(a, b), 2.0));

  oracle::Rng rng(4);
  for (int k = 0; k < 50; ++k) {
    const StiefelPoint u(rng.stiefel(20, 4));
    const SkewParam v = forward(choose_center(u), u);
    CHECK_FALSE(alarming(v, 1.0 + 1e-9));
  }
}

TEST_CASE("stationary start terminates immediately") {
  // Identity columns make forward/inverse exact, so the gradient is exactly 0.
  const StiefelPoint u0 = identity_stiefel(30, 3);
  const LambdaObjective f = quadratic_to(u0.matrix());
  const RunResult res = run(f, u0, AlcpConfig{});
  CHECK(res.record.rows.size() == 1);
  CHECK(res.record.summary.itr == 0);
  CHECK((res.reason == Termination::ExactStationary || res.reason == Termination::GradTol));
}

TEST_CASE("ALCP run invariants on the rotated toy target") {
  const Eigen::Index n = 60, p = 6;
  const LambdaObjective f = quadratic_to(toy_target(n, p).matrix());
  for (double threshold : {0.5, 1.5, 3.0}) {
    for (EngineKind engine : {EngineKind::GD, EngineKind::CG_HSplus}) {
      AlcpConfig cfg;
      cfg.alarm_threshold = threshold;
      cfg.engine = engine;
      const StiefelPoint u0 = random_stiefel(n, p, 99);
      const RunResult res = run(f, u0, cfg);
      const auto& rows = res.record.rows;
      REQUIRE_FALSE(rows.empty());
      CHECK(res.reason == Termination::GradTol);
      CHECK(count_ascent_steps(rows) == 0);
      CHECK(count_armijo_violations(rows, cfg.line_search.c) == 0);

      int segments = 1;
      double min_grad = rows.front().grad_norm;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const TraceRow& r = rows[i];
        CHECK(r.n == static_cast<int>(i));
        CHECK(r.v_norm <= std::max(1.0, threshold) + 1e-9);
        CHECK(r.feasibility <= 1e-9);
        if (i > 0) {
          // Segments are consecutive: l grows by one exactly at a switch.
          CHECK(r.l == rows[i - 1].l + (r.center_changed ? 1 : 0));
          CHECK(r.f_value <= rows[i - 1].f_value);
          CHECK(min_grad >= std::min(min_grad, r.grad_norm));
          min_grad = std::min(min_grad, r.grad_norm);
        }
        if (r.center_changed) ++segments;
        // The first step of each segment goes along -gradient with 1/||g||.
        if ((i == 0 || r.center_changed) && r.trials > 0) {
          CHECK(r.g_dot_d == doctest::Approx(-r.grad_norm * r.grad_norm).epsilon(1e-12));
          CHECK(r.initial_stepsize == doctest::Approx(1.0 / r.grad_norm).epsilon(1e-12));
        }
      }
      CHECK(res.record.summary.change == segments - 1);
      CHECK(static_cast<int>(res.record.segment_initial_stepsizes.size()) == segments -
            (rows.back().center_changed ? 1 : 0));
      for (double g : res.record.segment_initial_stepsizes) CHECK(g > 0.0);
      CHECK(rows.back().grad_norm / rows.front().grad_norm < cfg.rel_grad_tol);
      CHECK(res.record.summary.nfe > res.record.summary.itr);
      CHECK((res.point.matrix() - inverse_matrix(res.center, res.param)).norm() == 0.0);
    }
  }
}

TEST_CASE("re-centering preserves the point") {
  const Eigen::Index n = 40, p = 4;
  const LambdaObjective f = quadratic_to(toy_target(n, p).matrix());
  const StiefelPoint u0 = random_stiefel(n, p, 5);
  AlcpConfig cfg;
  cfg.alarm_threshold = 0.3;
  const RunResult full = run(f, u0, cfg);
  int first_switch = -1;
  for (const TraceRow& r : full.record.rows) {
    if (r.center_changed) {
      first_switch = r.n;
      break;
    }
  }
  REQUIRE(first_switch > 0);

  cfg.max_iter = first_switch;
  const RunResult switched = run(f, u0, cfg);
  const RunResult fixed = run_naive_cp(f, u0, choose_center(u0), cfg);
  CHECK(switched.record.summary.change == 1);
  CHECK(fixed.record.summary.change == 0);
  CHECK((switched.point.matrix() - fixed.point.matrix()).norm() <= 1e-9);
  CHECK(switched.record.rows.back().f_value == fixed.record.rows.back().f_value);
  CHECK(spectral_norm(switched.param) <= 1.0 + 1e-9);
  CHECK(spectral_norm(switched.param.a()) <= 1e-9);
}

TEST_CASE("naive parametrization matches ALCP when the alarm never fires") {
  const Eigen::Index n = 30, p = 3;
  const ProblemInstance inst = generate(ProblemKind::Eigenbasis, n, p, 8);
  const StiefelPoint u0 = random_stiefel(n, p, 3);
  AlcpConfig cfg;
  cfg.engine = EngineKind::CG_FR;
  cfg.alarm_threshold = 1e12;
  cfg.max_iter = 200;
  const RunResult a = run(*inst.objective(), u0, cfg);
  const RunResult b = run_naive_cp(*inst.objective(), u0, choose_center(u0), cfg);
  REQUIRE(a.record.summary.change == 0);
  REQUIRE(a.record.rows.size() == b.record.rows.size());
  for (std::size_t i = 0; i < a.record.rows.size(); ++i) {
    CHECK(a.record.rows[i].f_value == b.record.rows[i].f_value);
    CHECK(a.record.rows[i].grad_norm == b.record.rows[i].grad_norm);
    CHECK(a.record.rows[i].stepsize == b.record.rows[i].stepsize);
  }
  CHECK(a.point.matrix() == b.point.matrix());
}

TEST_CASE("naive parametrization converges on a benign target") {
  const Eigen::Index n = 20, p = 3;
  const LambdaObjective f = quadratic_to(identity_stiefel(n, p).matrix());
  const StiefelPoint u0 = random_stiefel(n, p, 12);
  const RunResult res = run_naive_cp(f, u0, CenterPoint::identity(n, p), AlcpConfig{});
  CHECK(res.reason == Termination::GradTol);
  CHECK(res.record.summary.change == 0);
  for (const TraceRow& r : res.record.rows) CHECK(r.l == 0);
}

TEST_CASE("naive parametrization rejects a singular start") {
  Matrix u(2, 1);
  u << -1.0, 0.0;
  const LambdaObjective f = quadratic_to(identity_stiefel(2, 1).matrix());
  CHECK_THROWS_AS(run_naive_cp(f, StiefelPoint(u), CenterPoint::identity(2, 1), AlcpConfig{}),
                  SingularPoint);
}

TEST_CASE("a wrong gradient stalls the line search and keeps the record") {
  // f starts at exactly 0 and is nonnegative, so no trial can pass the Armijo test.
  const Eigen::Index n = 10, p = 2;
  const StiefelPoint u0 = identity_stiefel(n, p);
  const Matrix target = u0.matrix();
  const LambdaObjective f([target](const Matrix& u) { return 0.5 * (u - target).squaredNorm(); },
                          [](const Matrix& u) -> Matrix { return Matrix::Ones(u.rows(), u.cols()); });
  const RunResult res = run(f, u0, AlcpConfig{});
  CHECK(res.reason == Termination::LineSearchStalled);
  CHECK(res.record.rows.size() == 1);
  CHECK(res.record.summary.nfe >= 61);
}

TEST_CASE("iteration cap") {
  const ProblemInstance inst = generate(ProblemKind::Procrustes, 30, 3, 2);
  AlcpConfig cfg;
  cfg.max_iter = 5;
  cfg.rel_grad_tol = 0.0;
  const RunResult res = run(*inst.objective(), random_stiefel(30, 3, 2), cfg);
  CHECK(res.reason == Termination::MaxIter);
  CHECK(res.record.rows.size() == 6);
  CHECK(res.record.rows.back().trials == 0);
}
