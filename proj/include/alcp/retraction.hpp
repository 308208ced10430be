#pragma once

#include "alcp/driver.hpp"

namespace alcp {

/// Riemannian gradient under the canonical metric: G - U G^T U.
TangentVector riemannian_grad(const StiefelPoint& u, const Matrix& euclid_grad);

/// Q-factor of the thin QR of U + D, with diag(R) > 0. Throws RankDeficient
/// if some |R_jj| < 1e-14.
StiefelPoint qr_retraction(const StiefelPoint& u, const Matrix& d);
inline StiefelPoint qr_retraction(const StiefelPoint& u, const TangentVector& d) {
  return qr_retraction(u, d.matrix());
}

/// Riemannian gradient descent with the QR retraction, Armijo backtracking
/// on gamma -> f(R_U(gamma D)) and the same initial-stepsize and stopping
/// rules as `run`. Only cfg.rel_grad_tol, max_iter and line_search are used.
RunResult run_rgd(const Objective& obj, const StiefelPoint& u0,
                  const AlcpConfig& cfg);

}  // namespace alcp
