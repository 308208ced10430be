#pragma once

// Test-only reference implementations. They use dense N x N matrices and the
// unstructured formulas, so they share no code path with the library's
// block-structured routines.

#include "alcp/types.hpp"

#include <functional>
#include <random>

namespace oracle {

using alcp::Matrix;

struct Rng {
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  Matrix gaussian(Eigen::Index r, Eigen::Index c) {
    Matrix x(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) x(i, j) = normal(gen);
    return x;
  }
  /// Orthonormal columns via Gram-Schmidt (modified, twice).
  Matrix stiefel(Eigen::Index n, Eigen::Index p) {
    Matrix x = gaussian(n, p);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < p; ++j) {
        for (Eigen::Index k = 0; k < j; ++k) x.col(j) -= x.col(k).dot(x.col(j)) * x.col(k);
        x.col(j).normalize();
      }
    }
    return x;
  }
  Matrix orthogonal(Eigen::Index p) { return stiefel(p, p); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }

  std::mt19937_64 gen;
  std::normal_distribution<double> normal{0.0, 1.0};
};

/// Dense S = diag(T, I).
inline Matrix dense_center(const Matrix& t, Eigen::Index n) {
  Matrix s = Matrix::Identity(n, n);
  s.topLeftCorner(t.rows(), t.cols()) = t;
  return s;
}

/// S (I - V)(I + V)^{-1} I_{N x p} with a full N x N solve.
inline Matrix cayley_inverse(const Matrix& s, const Matrix& v, Eigen::Index p) {
  const Eigen::Index n = s.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix x = (id + v).transpose().fullPivLu().solve((id - v).transpose()).transpose();
  return (s * x).leftCols(p);
}

/// Unstructured Cayley transform for a general S in O(N); returns dense V.
inline Matrix cayley_forward(const Matrix& s, const Matrix& u) {
  const Eigen::Index n = s.rows(), p = u.cols();
  const Matrix s_le = s.leftCols(p);
  const Matrix s_ri = s.rightCols(n - p);
  const Matrix core = Matrix::Identity(p, p) + s_le.transpose() * u;
  const Matrix core_inv = core.fullPivLu().inverse();
  const Matrix w = u.transpose() * s_le;
  const Matrix a = core_inv.transpose() * (w - w.transpose()) * core_inv;
  const Matrix b = -s_ri.transpose() * u * core_inv;
  Matrix v = Matrix::Zero(n, n);
  v.topLeftCorner(p, p) = a;
  v.bottomLeftCorner(n - p, p) = b;
  v.topRightCorner(p, n - p) = -b.transpose();
  return v;
}

/// Central difference (f(x + h d) - f(x - h d)) / 2h.
template <typename X, typename F>
double central_difference(F&& f, const X& x, const X& d, double h) {
  const X plus = x + h * d;
  const X minus = x + (-h) * d;
  return (f(plus) - f(minus)) / (2.0 * h);
}

/// Largest singular value by a dense SVD.
inline double spectral(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  return Eigen::BDCSVD<Matrix>(x).singularValues()(0);
}

}  // namespace oracle
