#include "alcp/problems.hpp"
#include "alcp/retraction.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace alcp;

TEST_CASE("riemannian gradient vanishes on stationary inputs") {
  oracle::Rng rng(1);
  const StiefelPoint u(rng.stiefel(12, 3));
  CHECK(riemannian_grad(u, u.matrix()).matrix().norm() < 1e-14);

  // Invariant subspace of a symmetric A: A U = U Lambda.
  const Matrix q = rng.orthogonal(12);
  const Vector lambda = Vector::LinSpaced(12, 1.0, 12.0);
  const Matrix a = q * lambda.asDiagonal() * q.transpose();
  const StiefelPoint v(q.leftCols(3));
  CHECK(riemannian_grad(v, -2.0 * a * v.matrix()).matrix().norm() < 1e-12);

  const Matrix g = rng.gaussian(12, 3);
  const Matrix rg = riemannian_grad(u, g).matrix();
  CHECK((u.matrix().transpose() * rg + rg.transpose() * u.matrix()).norm() < 1e-13);
  CHECK((rg - (g - u.matrix() * g.transpose() * u.matrix())).norm() < 1e-14);
  CHECK_THROWS_AS(riemannian_grad(u, Matrix::Zero(12, 2)), ShapeMismatch);
}

TEST_CASE("QR retraction") {
  oracle::Rng rng(2);
  const StiefelPoint u(rng.stiefel(9, 4));
  CHECK((qr_retraction(u, Matrix::Zero(9, 4)).matrix() - u.matrix()).norm() < 1e-14);

  Matrix e1(2, 1);
  e1 << 1.0, 0.0;
  for (double t : {-3.0, 0.25, 1.0, 10.0}) {
    Matrix d(2, 1);
    d << 0.0, t;
    const Matrix r = qr_retraction(StiefelPoint(e1), d).matrix();
    CHECK(r(0, 0) == doctest::Approx(1.0 / std::sqrt(1.0 + t * t)).epsilon(1e-14));
    CHECK(r(1, 0) == doctest::Approx(t / std::sqrt(1.0 + t * t)).epsilon(1e-14));
  }

  // First-order agreement: ||R_U(t D) - (U + t D)|| = O(t^2).
  const Matrix g = rng.gaussian(9, 4);
  const Matrix d = riemannian_grad(u, g).matrix();
  double prev = 0.0;
  for (double t : {1e-1, 1e-2, 1e-3}) {
    const double err = (qr_retraction(u, t * d).matrix() - (u.matrix() + t * d)).norm();
    if (prev > 0.0) CHECK(err < 0.02 * prev);
    prev = err;
  }

  Matrix neg(2, 1);
  neg << -1.0, 0.0;
  CHECK_THROWS_AS(qr_retraction(StiefelPoint(e1), neg), RankDeficient);
}

TEST_CASE("retraction baseline") {
  SUBCASE("stationary start") {
    const StiefelPoint u0 = random_stiefel(15, 2, 4);
    const NearestPointObjective f(u0.matrix());
    const RunResult res = run_rgd(f, u0, AlcpConfig{});
    CHECK(res.record.rows.size() == 1);
    CHECK(res.reason != Termination::MaxIter);
  }
  SUBCASE("eigenbasis against a dense eigensolver") {
    const Eigen::Index n = 100, p = 3;
    oracle::Rng rng(6);
    const Matrix at = rng.gaussian(n, n);
    const Matrix a = at.transpose() * at;
    const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(a).eigenvalues();
    const double top = ev.tail(p).sum();

    AlcpConfig cfg;
    cfg.rel_grad_tol = 1e-7;
    cfg.max_iter = 20000;
    const EigenbasisObjective f(a);
    const RunResult res = run_rgd(f, random_stiefel(n, p, 6), cfg);
    CHECK(res.reason == Termination::GradTol);
    CHECK(std::abs(-res.record.summary.fval - top) <= 1e-6 * top);
    CHECK(count_ascent_steps(res.record.rows) == 0);
    CHECK(count_armijo_violations(res.record.rows, cfg.line_search.c) == 0);
    for (const TraceRow& r : res.record.rows) {
      CHECK(r.l == 0);
      CHECK(std::isnan(r.v_norm));
      CHECK(r.feasibility <= 1e-9);
    }
  }
}
