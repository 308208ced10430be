#include "alcp/cayley.hpp"

#include <sstream>

namespace alcp {

namespace {

void check_point_shape(const CenterPoint& s, const Matrix& u) {
  if (u.rows() != s.n() || u.cols() != s.p())
    throw ShapeMismatch("point shape does not match the center");
}

void check_param_shape(const CenterPoint& s, const SkewParam& v) {
  if (v.n() != s.n() || v.p() != s.p())
    throw ShapeMismatch("parameter shape does not match the center");
}

// Inverse of the Schur complement M = I + A + B^T B. Its symmetric part is
// I + B^T B >= I, so a failure here is an internal error.
Matrix schur_inverse(const SkewParam& v) {
  const Eigen::Index p = v.p();
  Matrix m = Matrix::Identity(p, p) + v.a() + v.b().transpose() * v.b();
  Eigen::PartialPivLU<Matrix> lu(m);
  if (!(lu.rcond() > 1e-300))
    throw LinearSolveFailure("Schur complement I + A + B^T B is singular");
  return lu.inverse();
}

}  // namespace

double singularity_det(const CenterPoint& s, const Matrix& u) {
  check_point_shape(s, u);
  const Eigen::Index p = s.p();
  return (Matrix::Identity(p, p) + s.t().transpose() * u.topRows(p))
      .determinant();
}

SkewParam forward(const CenterPoint& s, const Matrix& u) {
  check_point_shape(s, u);
  const Eigen::Index p = s.p();
  const auto u_up = u.topRows(p);
  const auto u_lo = u.bottomRows(u.rows() - p);

  Matrix core = Matrix::Identity(p, p) + s.t().transpose() * u_up;
  Eigen::PartialPivLU<Matrix> lu(core);
  const double rcond = lu.rcond();
  if (!(rcond >= kSingularRcond)) {
    std::ostringstream msg;
    msg << "point is singular for this center (rcond of I + T^T U_up = "
        << rcond << ")";
    throw SingularPoint(msg.str());
  }
  const Matrix core_inv = lu.inverse();

  // U^T S_le = U_up^T T; 2 Skew(X) = X - X^T.
  const Matrix x = u_up.transpose() * s.t();
  Matrix a = core_inv.transpose() * (x - x.transpose()) * core_inv;
  Matrix b = -u_lo * core_inv;
  return SkewParam(a, std::move(b));
}

SkewParam forward(const CenterPoint& s, const StiefelPoint& u) {
  return forward(s, u.matrix());
}

Matrix inverse_matrix(const CenterPoint& s, const SkewParam& v) {
  check_param_shape(s, v);
  const Eigen::Index p = s.p(), n = s.n();
  const Matrix m_inv = schur_inverse(v);
  Matrix u(n, p);
  u.topRows(p) = s.t() * (2.0 * m_inv - Matrix::Identity(p, p));
  u.bottomRows(n - p) = -2.0 * v.b() * m_inv;
  return u;
}

StiefelPoint inverse(const CenterPoint& s, const SkewParam& v) {
  return StiefelPoint(inverse_matrix(s, v), 1e-9);
}

SkewParam pullback_gradient(const CenterPoint& s, const SkewParam& v,
                            const Matrix& euclid_grad) {
  check_param_shape(s, v);
  check_point_shape(s, euclid_grad);
  const Eigen::Index p = s.p();
  const auto g_up = euclid_grad.topRows(p);
  const auto g_lo = euclid_grad.bottomRows(euclid_grad.rows() - p);
  const Matrix& b = v.b();

  const Matrix m_inv = schur_inverse(v);
  const Matrix k = (g_up.transpose() * s.t() - g_lo.transpose() * b) * m_inv;
  const Matrix w11 = m_inv * k;
  // W12^T = (K B^T + G_lo^T)^T M^{-T} = (B K^T + G_lo) M^{-T}
  const Matrix w12_t = (b * k.transpose() + g_lo) * m_inv.transpose();
  Matrix b_grad = -b * w11 - w12_t;
  return SkewParam(w11 - w11.transpose(), std::move(b_grad));
}

double mobility(const SkewParam& v) {
  if (v.b().rows() == 0)
    throw EmptyBlock("mobility is undefined for p = N (empty B block)");
  const double big = spectral_norm(v.b());
  const double small = smallest_singular_value(v.b());
  return 2.0 * std::sqrt(1.0 + big * big) / (1.0 + small * small);
}

// ---------------------------------------------------------------------------

ParametrizedObjective::ParametrizedObjective(CenterPoint center,
                                             CountingObjective objective)
    : center_(std::move(center)), objective_(objective) {}

ParametrizedObjective::Entry& ParametrizedObjective::lookup(
    const SkewParam& v) {
  if (!cache_ || !(cache_->v == v)) {
    cache_.emplace(Entry{v, inverse_matrix(center_, v), std::nullopt,
                         std::nullopt});
  }
  return *cache_;
}

double ParametrizedObjective::value(const SkewParam& v) {
  Entry& e = lookup(v);
  if (!e.f) e.f = objective_.value(e.u);
  return *e.f;
}

SkewParam ParametrizedObjective::gradient(const SkewParam& v) {
  Entry& e = lookup(v);
  if (!e.g) e.g = objective_.gradient(e.u);
  return pullback_gradient(center_, v, *e.g);
}

const Matrix& ParametrizedObjective::point(const SkewParam& v) {
  return lookup(v).u;
}

}  // namespace alcp
