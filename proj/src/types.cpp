#include "alcp/types.hpp"

#include <random>
#include <sstream>

namespace alcp {

double feasibility(const Matrix& x) {
  const Eigen::Index p = x.cols();
  return (Matrix::Identity(p, p) - x.transpose() * x).norm();
}

double spectral_norm(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  if (x.cols() == 1) return x.col(0).norm();
  if (x.rows() == 1) return x.row(0).norm();
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues()(0);
}

double smallest_singular_value(const Matrix& x) {
  if (x.size() == 0 || x.rows() < x.cols()) return 0.0;
  if (x.cols() == 1) return x.col(0).norm();
  Eigen::JacobiSVD<Matrix> svd(x);
  const auto& s = svd.singularValues();
  return s(s.size() - 1);
}

StiefelPoint::StiefelPoint(Matrix data, double tol) : data_(std::move(data)) {
  if (data_.cols() < 1 || data_.rows() < data_.cols()) {
    std::ostringstream msg;
    msg << "Stiefel point needs N >= p >= 1, got " << data_.rows() << "x"
        << data_.cols();
    throw NotOnManifold(msg.str());
  }
  const double err = alcp::feasibility(data_);
  if (!(err <= tol)) {
    std::ostringstream msg;
    msg << "columns are not orthonormal: ||I - U^T U||_F = " << err;
    throw NotOnManifold(msg.str());
  }
}

StiefelPoint identity_stiefel(Eigen::Index n, Eigen::Index p) {
  return StiefelPoint(Matrix::Identity(n, p));
}

Matrix orthonormalize(const Matrix& x) {
  Eigen::HouseholderQR<Matrix> qr(x);
  Matrix q = qr.householderQ() * Matrix::Identity(x.rows(), x.cols());
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

StiefelPoint random_stiefel(Eigen::Index n, Eigen::Index p, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix x(n, p);
  // Row-major fill so the sequence does not depend on Eigen's storage order.
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j) x(i, j) = unif(gen);
  return StiefelPoint(orthonormalize(x));
}

// ---------------------------------------------------------------------------

SkewParam::SkewParam(const Matrix& a, Matrix b) : b_(std::move(b)) {
  if (a.rows() != a.cols())
    throw ShapeMismatch("SkewParam: A must be square");
  if (b_.rows() == 0)
    b_.resize(0, a.cols());
  else if (b_.cols() != a.cols())
    throw ShapeMismatch("SkewParam: B must have p columns");
  a_ = 0.5 * (a - a.transpose());
}

SkewParam SkewParam::zero(Eigen::Index n, Eigen::Index p) {
  return SkewParam(Matrix::Zero(p, p), Matrix::Zero(n - p, p));
}

Matrix SkewParam::dense() const {
  const Eigen::Index p = this->p(), n = this->n();
  Matrix v = Matrix::Zero(n, n);
  v.topLeftCorner(p, p) = a_;
  v.bottomLeftCorner(n - p, p) = b_;
  v.topRightCorner(p, n - p) = -b_.transpose();
  return v;
}

static void check_same_shape(const SkewParam& x, const SkewParam& y) {
  if (x.p() != y.p() || x.n() != y.n())
    throw ShapeMismatch("SkewParam shapes differ");
}

SkewParam& SkewParam::operator+=(const SkewParam& o) {
  check_same_shape(*this, o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

SkewParam& SkewParam::operator-=(const SkewParam& o) {
  check_same_shape(*this, o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

SkewParam& SkewParam::operator*=(double s) {
  a_ *= s;
  b_ *= s;
  return *this;
}

bool SkewParam::operator==(const SkewParam& o) const {
  return a_.rows() == o.a_.rows() && b_.rows() == o.b_.rows() &&
         a_ == o.a_ && b_ == o.b_;
}

double frobenius_inner(const SkewParam& x, const SkewParam& y) {
  check_same_shape(x, y);
  return (x.a().array() * y.a().array()).sum() +
         2.0 * (x.b().array() * y.b().array()).sum();
}

double frobenius_norm(const SkewParam& x) {
  return std::sqrt(frobenius_inner(x, x));
}

double spectral_norm(const SkewParam& x) {
  const Eigen::Index p = x.p();
  if (x.b().rows() == 0) return spectral_norm(x.a());
  // V = W [A -R^T; R 0] W^T with W = diag(I_p, Q) orthonormal, B = Q R.
  const Eigen::Index k = std::min(x.b().rows(), p);
  Eigen::HouseholderQR<Matrix> qr(x.b());
  Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  Matrix c = Matrix::Zero(p + k, p + k);
  c.topLeftCorner(p, p) = x.a();
  c.bottomLeftCorner(k, p) = r;
  c.topRightCorner(p, k) = -r.transpose();
  return spectral_norm(c);
}

// ---------------------------------------------------------------------------

CenterPoint::CenterPoint(Matrix t, Eigen::Index n, double tol)
    : t_(std::move(t)), n_(n) {
  if (t_.rows() != t_.cols() || t_.rows() < 1 || n_ < t_.rows())
    throw ShapeMismatch("center block T must be p x p with 1 <= p <= N");
  const double err = alcp::feasibility(t_);
  if (!(err <= tol)) {
    std::ostringstream msg;
    msg << "center block is not orthogonal: ||I - T^T T||_F = " << err;
    throw NotOnManifold(msg.str());
  }
}

CenterPoint CenterPoint::identity(Eigen::Index n, Eigen::Index p) {
  return CenterPoint(Matrix::Identity(p, p), n);
}

StiefelPoint CenterPoint::left_block() const {
  Matrix le = Matrix::Zero(n_, p());
  le.topRows(p()) = t_;
  return StiefelPoint(std::move(le));
}

Matrix CenterPoint::dense() const {
  Matrix s = Matrix::Identity(n_, n_);
  s.topLeftCorner(p(), p()) = t_;
  return s;
}

// ---------------------------------------------------------------------------

TangentVector::TangentVector(const StiefelPoint& base, Matrix data, double tol)
    : data_(std::move(data)) {
  if (data_.rows() != base.n() || data_.cols() != base.p())
    throw ShapeMismatch("tangent vector shape differs from its base point");
  const Matrix sym = base.matrix().transpose() * data_ +
                     data_.transpose() * base.matrix();
  if (!(sym.norm() <= tol * (1.0 + data_.norm())))
    throw NotOnManifold("matrix is not tangent at the base point");
}

}  // namespace alcp
