#pragma once

#include "alcp/types.hpp"

namespace alcp {

/// Center point choice: with U_up = Q1 Sigma Q2^T, returns T = Q1 Q2^T (the
/// orthogonal polar factor of U_up). Then det(I + T^T U_up) >= 1 and
/// forward(S, U) has A = 0 and ||B||_2 <= 1.
///
/// When U_up is rank deficient the polar factor is not unique; the result is
/// whatever the SVD routine's null-space basis yields. Every such choice
/// satisfies the guarantees above.
CenterPoint choose_center(const StiefelPoint& u);
CenterPoint choose_center(const Matrix& u);

struct CenterDiagnostics {
  double det = 0.0;
  bool det_lower_ok = false;  // det(I + T^T U_up) >= 1 - 1e-9
  double a_block_norm = 0.0;  // ||A||_F of forward(S, U)
  double b_block_norm = 0.0;  // ||B||_2 of forward(S, U)
};

/// Throws SingularPoint if U is singular for S.
CenterDiagnostics verify_center(const CenterPoint& s, const StiefelPoint& u);

}  // namespace alcp
