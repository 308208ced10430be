#include "alcp/types.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace alcp;

TEST_CASE("new_stiefel validates orthonormal columns") {
  CHECK_NOTHROW(new_stiefel(Matrix::Identity(7, 3)));
  CHECK_THROWS_AS(new_stiefel(Matrix::Ones(5, 2)), NotOnManifold);
  CHECK_THROWS_AS(new_stiefel(Matrix::Identity(2, 3)), NotOnManifold);
  CHECK_THROWS_AS(new_stiefel(Matrix(4, 0)), NotOnManifold);

  oracle::Rng rng(11);
  const Matrix q = orthonormalize(rng.gaussian(40, 6));
  CHECK(feasibility(q) < 1e-10);
  CHECK_NOTHROW(new_stiefel(q));
}

TEST_CASE("random_stiefel is deterministic and feasible") {
  const StiefelPoint a = random_stiefel(10, 3, 42);
  const StiefelPoint b = random_stiefel(10, 3, 42);
  CHECK(a.matrix() == b.matrix());
  CHECK(a.feasibility() < 1e-10);
  CHECK_FALSE(random_stiefel(10, 3, 43).matrix() == a.matrix());

  const StiefelPoint one = random_stiefel(1, 1, 5);
  CHECK(std::abs(std::abs(one.matrix()(0, 0)) - 1.0) < 1e-15);
}

TEST_CASE("frobenius_inner follows the block expansion") {
  const SkewParam zero = SkewParam::zero(6, 2);
  CHECK(frobenius_inner(zero, zero) == 0.0);

  // p = 1, A = 0, B1 = B2 = e1.
  Matrix e1 = Matrix::Zero(3, 1);
  e1(0, 0) = 1.0;
  const SkewParam v(Matrix::Zero(1, 1), e1);
  CHECK(frobenius_inner(v, v) == doctest::Approx(2.0));

  oracle::Rng rng(3);
  for (Eigen::Index n : {5, 50, 200}) {
    for (Eigen::Index p : {1, 4, 5}) {
      if (p > n) continue;
      const SkewParam x(rng.gaussian(p, p), rng.gaussian(n - p, p));
      const SkewParam y(rng.gaussian(p, p), rng.gaussian(n - p, p));
      const double dense = (x.dense().transpose() * y.dense()).trace();
      CHECK(std::abs(frobenius_inner(x, y) - dense) <= 1e-12 * (1.0 + std::abs(dense)));
      CHECK(frobenius_inner(x, x) ==
            doctest::Approx(x.a().squaredNorm() + 2.0 * x.b().squaredNorm()).epsilon(1e-14));
    }
  }
}

TEST_CASE("SkewParam is exactly skew and handles p = N") {
  oracle::Rng rng(5);
  const SkewParam v(rng.gaussian(4, 4), rng.gaussian(9, 4));
  const Matrix d = v.dense();
  CHECK(d.transpose() == -d);
  CHECK(v.a().transpose() == -v.a());

  const SkewParam w = v + 0.3 * v;
  CHECK(w.a().transpose() == -w.a());

  const SkewParam square(rng.gaussian(3, 3), Matrix(0, 3));
  CHECK(square.n() == 3);
  CHECK(square.b().rows() == 0);
  CHECK(frobenius_inner(square, square) == doctest::Approx(square.a().squaredNorm()));
  CHECK_NOTHROW(SkewParam::zero(3, 3));

  CHECK_THROWS_AS(SkewParam(Matrix::Zero(2, 3), Matrix::Zero(1, 3)), ShapeMismatch);
  CHECK_THROWS_AS(SkewParam(Matrix::Zero(2, 2), Matrix::Zero(4, 3)), ShapeMismatch);
  CHECK_THROWS_AS(frobenius_inner(v, SkewParam::zero(13, 3)), ShapeMismatch);
}

TEST_CASE("spectral norm of the structured parameter") {
  oracle::Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index p = 1 + trial % 5;
    const Eigen::Index n = p + (trial % 3 == 0 ? 1 : 3 + trial);
    const SkewParam v(rng.gaussian(p, p), rng.gaussian(n - p, p));
    const double exact = oracle::spectral(v.dense());
    CHECK(spectral_norm(v) == doctest::Approx(exact).epsilon(1e-12));
    CHECK(exact <= oracle::spectral(v.a()) + oracle::spectral(v.b()) + 1e-12);

    // With A = 0 the spectral norm is exactly ||B||_2.
    const SkewParam off(Matrix::Zero(p, p), v.b());
    CHECK(oracle::spectral(off.dense()) == doctest::Approx(oracle::spectral(v.b())).epsilon(1e-12));
  }
  const SkewParam square(rng.gaussian(4, 4), Matrix(0, 4));
  CHECK(spectral_norm(square) == doctest::Approx(oracle::spectral(square.dense())));
}

TEST_CASE("CenterPoint and TangentVector validation") {
  oracle::Rng rng(2);
  const Matrix t = rng.orthogonal(3);
  const CenterPoint s(t, 8);
  CHECK(s.left_block().matrix().topRows(3) == t);
  CHECK(s.left_block().matrix().bottomRows(5).isZero());
  CHECK(feasibility(s.dense()) < 1e-10);
  CHECK_THROWS_AS(CenterPoint(2.0 * t, 8), NotOnManifold);
  CHECK_THROWS_AS(CenterPoint(t, 2), ShapeMismatch);

  const StiefelPoint u(rng.stiefel(8, 3));
  const Matrix omega = rng.gaussian(3, 3);
  const Matrix tangent = u.matrix() * (omega - omega.transpose());
  CHECK_NOTHROW(TangentVector(u, tangent));
  CHECK_THROWS_AS(TangentVector(u, u.matrix()), NotOnManifold);
}
