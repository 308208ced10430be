#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace alcp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Default tolerance for ||I - U^T U||_F when validating manifold points.
inline constexpr double kFeasibilityTol = 1e-10;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotOnManifold : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// U lies (numerically) in the singular-point set of the chosen center.
class SingularPoint : public Error {
 public:
  using Error::Error;
};

class LinearSolveFailure : public Error {
 public:
  using Error::Error;
};

class EmptyBlock : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

/// ||I_p - X^T X||_F.
double feasibility(const Matrix& x);

/// Largest singular value; 0 for empty matrices.
double spectral_norm(const Matrix& x);

/// Smallest of the min(rows, cols) singular values, or 0 when the matrix has
/// fewer rows than columns (rank deficient by shape).
double smallest_singular_value(const Matrix& x);

// ---------------------------------------------------------------------------
// StiefelPoint
// ---------------------------------------------------------------------------

/// An N x p matrix with orthonormal columns. Immutable after construction.
class StiefelPoint {
 public:
  /// Throws NotOnManifold unless 1 <= p <= N and ||I - U^T U||_F <= tol.
  explicit StiefelPoint(Matrix data, double tol = kFeasibilityTol);

  const Matrix& matrix() const { return data_; }
  Eigen::Index n() const { return data_.rows(); }
  Eigen::Index p() const { return data_.cols(); }

  auto upper() const { return data_.topRows(p()); }
  auto lower() const { return data_.bottomRows(n() - p()); }

  double feasibility() const { return alcp::feasibility(data_); }

 private:
  Matrix data_;
};

inline StiefelPoint new_stiefel(Matrix data) {
  return StiefelPoint(std::move(data));
}

/// Identity columns I_{N x p}.
StiefelPoint identity_stiefel(Eigen::Index n, Eigen::Index p);

/// Q-factor (thin Householder QR, diag(R) >= 0) of an N x p matrix whose
/// entries are drawn uniformly from [0, 1). Deterministic for a fixed seed.
StiefelPoint random_stiefel(Eigen::Index n, Eigen::Index p, std::uint64_t seed);

/// Orthonormalizes the columns of x (thin QR with positive diag(R)).
Matrix orthonormalize(const Matrix& x);

// ---------------------------------------------------------------------------
// SkewParam
// ---------------------------------------------------------------------------

/// The structured skew-symmetric matrix
///
///     V = [ A  -B^T ]
///         [ B    0  ]
///
/// stored as the pair (A, B) with A (p x p) skew and B ((N-p) x p). The dense
/// N x N form is only materialized by `dense()` for testing.
class SkewParam {
 public:
  SkewParam() = default;

  /// `a` is projected to (a - a^T)/2, which leaves an exactly skew input
  /// unchanged and makes any other input exactly skew.
  SkewParam(const Matrix& a, Matrix b);

  static SkewParam zero(Eigen::Index n, Eigen::Index p);

  const Matrix& a() const { return a_; }
  const Matrix& b() const { return b_; }
  Eigen::Index n() const { return a_.rows() + b_.rows(); }
  Eigen::Index p() const { return a_.rows(); }

  Matrix dense() const;

  SkewParam& operator+=(const SkewParam& o);
  SkewParam& operator-=(const SkewParam& o);
  SkewParam& operator*=(double s);

  friend SkewParam operator+(SkewParam x, const SkewParam& y) { return x += y; }
  friend SkewParam operator-(SkewParam x, const SkewParam& y) { return x -= y; }
  friend SkewParam operator*(double s, SkewParam x) { return x *= s; }
  friend SkewParam operator-(SkewParam x) { return x *= -1.0; }

  bool operator==(const SkewParam& o) const;

 private:
  Matrix a_;
  Matrix b_;
};

/// trace(V1^T V2) = trace(A1^T A2) + 2 trace(B1^T B2).
double frobenius_inner(const SkewParam& x, const SkewParam& y);

/// ||V||_F under frobenius_inner.
double frobenius_norm(const SkewParam& x);

/// Exact spectral norm of the dense V, computed from a 2p x 2p compression
/// [A -R^T; R 0] where B = QR is a thin QR of the lower block.
double spectral_norm(const SkewParam& x);

// ---------------------------------------------------------------------------
// CenterPoint
// ---------------------------------------------------------------------------

/// S = diag(T, I_{N-p}) with T in O(p). S_le = [T; 0] and S_ri = [0; I].
class CenterPoint {
 public:
  CenterPoint(Matrix t, Eigen::Index n, double tol = kFeasibilityTol);

  static CenterPoint identity(Eigen::Index n, Eigen::Index p);

  const Matrix& t() const { return t_; }
  Eigen::Index n() const { return n_; }
  Eigen::Index p() const { return t_.rows(); }

  /// S_le = [T; 0] as an N x p point.
  StiefelPoint left_block() const;
  Matrix dense() const;

 private:
  Matrix t_;
  Eigen::Index n_;
};

// ---------------------------------------------------------------------------
// TangentVector
// ---------------------------------------------------------------------------

/// D in T_U St(p, N), i.e. U^T D + D^T U = 0.
class TangentVector {
 public:
  TangentVector(const StiefelPoint& base, Matrix data,
                double tol = 1e-9);

  const Matrix& matrix() const { return data_; }

 private:
  Matrix data_;
};

}  // namespace alcp
