#pragma once

#include "alcp/cayley.hpp"
#include "alcp/objective.hpp"
#include "alcp/optimizers.hpp"
#include "alcp/record.hpp"

namespace alcp {

enum class AlarmMode {
  Standard,  // re-center when ||A||_2 + ||B||_2 > T
  Never,     // fixed center: the naive Cayley parametrization
};

struct AlcpConfig {
  double alarm_threshold = 1.5;
  double rel_grad_tol = 1e-5;
  int max_iter = 2000;
  EngineKind engine = EngineKind::GD;
  LineSearchConfig line_search;
  AlarmMode alarm_mode = AlarmMode::Standard;
};

/// Stand-in for "gradient is exactly zero".
inline constexpr double kExactStationaryNorm = 1e-300;

struct RunResult {
  StiefelPoint point;
  SkewParam param;
  CenterPoint center;
  Termination reason;
  RunRecord record;
};

/// ||A||_2 + ||B||_2 > T, an upper bound test on ||V||_2 > T.
bool alarming(const SkewParam& v, double threshold);

/// Adaptive localized Cayley parametrization: runs the configured engine on
/// f o Phi_S^{-1}, and whenever the tentative parameter raises the alarm,
/// re-centers at the new point (choose_center), re-parametrizes it, and
/// restarts the engine's memory.
///
/// The relative stopping test always divides by the gradient norm at the
/// first iterate under the first center.
RunResult run(const Objective& obj, const StiefelPoint& u0,
              const AlcpConfig& cfg);

/// As above but starting from `first_center` instead of choose_center(u0).
RunResult run(const Objective& obj, const StiefelPoint& u0,
              const CenterPoint& first_center, const AlcpConfig& cfg);

/// Fixed-center variant: starts at `center` instead of choose_center(u0) and
/// never re-centers. Throws SingularPoint if u0 is singular for `center`.
RunResult run_naive_cp(const Objective& obj, const StiefelPoint& u0,
                       const CenterPoint& center, AlcpConfig cfg);

}  // namespace alcp
