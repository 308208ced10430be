#include "alcp/center.hpp"

#include "alcp/cayley.hpp"

namespace alcp {

CenterPoint choose_center(const Matrix& u) {
  const Eigen::Index p = u.cols();
  Eigen::JacobiSVD<Matrix> svd(u.topRows(p),
                               Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix t = svd.matrixU() * svd.matrixV().transpose();
  return CenterPoint(std::move(t), u.rows());
}

CenterPoint choose_center(const StiefelPoint& u) {
  return choose_center(u.matrix());
}

CenterDiagnostics verify_center(const CenterPoint& s, const StiefelPoint& u) {
  const SkewParam v = forward(s, u);
  CenterDiagnostics d;
  d.det = singularity_det(s, u.matrix());
  d.det_lower_ok = d.det >= 1.0 - 1e-9;
  d.a_block_norm = v.a().norm();
  d.b_block_norm = spectral_norm(v.b());
  return d;
}

}  // namespace alcp
