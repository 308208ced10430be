#pragma once

#include "alcp/objective.hpp"
#include "alcp/types.hpp"

#include <optional>

namespace alcp {

/// Reciprocal-condition threshold below which I_p + T^T U_up is treated as
/// singular by `forward`.
inline constexpr double kSingularRcond = 1e-14;

/// Generalized Cayley transform Phi_S for a structured center
/// S = diag(T, I). Throws SingularPoint when U is numerically in the
/// singular-point set det(I_p + T^T U_up) = 0.
SkewParam forward(const CenterPoint& s, const StiefelPoint& u);
SkewParam forward(const CenterPoint& s, const Matrix& u);

/// Phi_S^{-1}(V) = 2 (S_le - S_ri B) M^{-1} - S_le with M = I + A + B^T B.
/// Unchecked; the result is orthonormal up to rounding.
Matrix inverse_matrix(const CenterPoint& s, const SkewParam& v);

/// Same as inverse_matrix but validated as a StiefelPoint (tolerance 1e-9).
StiefelPoint inverse(const CenterPoint& s, const SkewParam& v);

/// Gradient of f o Phi_S^{-1} at V under the inner product trace(V1^T V2),
/// given the Euclidean gradient G = grad f(U) at U = Phi_S^{-1}(V).
///
/// With M = I + A + B^T B and K = (G_up^T T - G_lo^T B) M^{-1}:
///   W11 = M^{-1} K,  W12 = M^{-1} (K B^T + G_lo^T),  W21 = -B W11,
///   grad = [W11 - W11^T, W21 - W12^T] in (A, B) blocks.
SkewParam pullback_gradient(const CenterPoint& s, const SkewParam& v,
                            const Matrix& euclid_grad);

/// Mobility r(V) = 2 sqrt(1 + ||B||_2^2) / (1 + sigma_min(B)^2): a first
/// order bound on how far Phi_S^{-1} moves per unit parameter change.
/// Throws EmptyBlock when p = N.
double mobility(const SkewParam& v);

/// det(I_p + T^T U_up); zero on the singular-point set.
double singularity_det(const CenterPoint& s, const Matrix& u);

/// f_S = f o Phi_S^{-1} together with its gradient. Keeps exactly one
/// (V, U, f(U), grad f(U)) tuple so that a value call followed by a gradient
/// call at the same V (bitwise) solves for U once and evaluates f once.
///
/// Single consumer: the cache makes concurrent use of one instance unsafe.
class ParametrizedObjective {
 public:
  ParametrizedObjective(CenterPoint center, CountingObjective objective);

  double value(const SkewParam& v);
  SkewParam gradient(const SkewParam& v);
  /// U = Phi_S^{-1}(V), shared with value/gradient through the cache.
  const Matrix& point(const SkewParam& v);

  const CenterPoint& center() const { return center_; }
  const CountingObjective& objective() const { return objective_; }

 private:
  struct Entry {
    SkewParam v;
    Matrix u;
    std::optional<double> f;
    std::optional<Matrix> g;
  };

  Entry& lookup(const SkewParam& v);

  CenterPoint center_;
  CountingObjective objective_;
  std::optional<Entry> cache_;
};

inline ParametrizedObjective parametrize(const CenterPoint& s,
                                         CountingObjective obj) {
  return ParametrizedObjective(s, obj);
}

}  // namespace alcp
