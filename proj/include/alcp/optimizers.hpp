#pragma once

// Euclidean line-search engines (gradient descent and nonlinear conjugate
// gradient with Armijo backtracking). The engines only add, scale and take
// inner products of vectors, so the same code runs on R^n and on the
// structured skew-symmetric parameter spaces of every center point.

#include "alcp/types.hpp"

#include <algorithm>
#include <cmath>
#include <concepts>
#include <optional>
#include <string>
#include <string_view>

namespace alcp {

class NotDescent : public Error {
 public:
  using Error::Error;
};

class LineSearchStalled : public Error {
 public:
  using Error::Error;
};

/// Inner product customization point.
template <typename T>
struct InnerProductSpace;

template <>
struct InnerProductSpace<SkewParam> {
  static double inner(const SkewParam& x, const SkewParam& y) {
    return frobenius_inner(x, y);
  }
};

template <>
struct InnerProductSpace<Vector> {
  static double inner(const Vector& x, const Vector& y) { return x.dot(y); }
};

/// Dense matrices under the trace (Frobenius) inner product.
template <>
struct InnerProductSpace<Matrix> {
  static double inner(const Matrix& x, const Matrix& y) {
    return (x.array() * y.array()).sum();
  }
};

template <typename T>
concept VectorSpace = std::copyable<T> && requires(const T& x, double s) {
  { T(x + x) };
  { T(s * x) };
  { InnerProductSpace<T>::inner(x, x) } -> std::convertible_to<double>;
};

template <VectorSpace T>
double inner(const T& x, const T& y) {
  return InnerProductSpace<T>::inner(x, y);
}

template <VectorSpace T>
double norm(const T& x) {
  return std::sqrt(inner(x, x));
}

template <typename J, typename T>
concept ValueFunction = requires(J& f, const T& x) {
  { f.value(x) } -> std::convertible_to<double>;
};

// ---------------------------------------------------------------------------

enum class EngineKind { GD, CG_FR, CG_HSplus, CG_HZ };

std::string_view to_string(EngineKind kind);
/// Accepts gd, cg-fr, cg-hs+, cg-hz.
std::optional<EngineKind> parse_engine(std::string_view name);

struct LineSearchConfig {
  double c = 1.0 / 8192.0;  // 2^-13
  double rho = 0.5;
  int max_halvings = 60;
};

inline constexpr double kMinInitialStep = 1e-20;
inline constexpr double kMaxInitialStep = 1e20;
inline constexpr double kDivisionGuard = 1e-300;

/// Optimizer memory carried between iterations of one segment.
template <VectorSpace T>
struct StrategicInfo {
  T prev_direction{};
  T prev_gradient{};
  double prev_value = 0.0;
  double prev_stepsize = 0.0;
  bool fresh = true;
};

struct BacktrackResult {
  double gamma = 0.0;
  int trial_count = 0;
  double value = 0.0;  // J(x + gamma d)
};

/// Largest gamma = gamma_init * rho^k (k >= 0) such that
///   J(x + gamma d) <= J(x) + c gamma <grad J(x), d>.
template <VectorSpace T, ValueFunction<T> J>
BacktrackResult backtracking(J& fn, double f_x, double g_dot_d, const T& x,
                             const T& d, double gamma_init,
                             const LineSearchConfig& cfg = {}) {
  if (!(g_dot_d < 0.0))
    throw NotDescent("search direction is not a descent direction");
  double gamma = gamma_init;
  for (int k = 0; k <= cfg.max_halvings; ++k) {
    const T trial = x + gamma * d;
    const double f_trial = fn.value(trial);
    if (f_trial <= f_x + cfg.c * gamma * g_dot_d)
      return {gamma, k + 1, f_trial};
    gamma *= cfg.rho;
  }
  throw LineSearchStalled("Armijo backtracking exceeded " +
                          std::to_string(cfg.max_halvings) + " halvings");
}

/// 1/||g|| on a fresh segment, otherwise 4 (J(x_n) - J(x_{n-1})) / <g_n, d_n>,
/// clamped to [1e-20, 1e20].
template <VectorSpace T>
double initial_stepsize(const StrategicInfo<T>& info, double current_value,
                        double g_dot_d, double g_norm) {
  double gamma = info.fresh
                     ? 1.0 / g_norm
                     : 4.0 * (current_value - info.prev_value) / g_dot_d;
  if (!(gamma >= kMinInitialStep)) gamma = kMinInitialStep;  // also NaN
  if (gamma > kMaxInitialStep) gamma = kMaxInitialStep;
  return gamma;
}

template <VectorSpace T>
struct Direction {
  T d;
  bool restarted = false;
  double beta = 0.0;
};

/// Conjugate direction d = -g_new + beta d_prev. Falls back to -g_new on a
/// fresh segment, for GD, on a vanishing denominator, or when the candidate
/// is not a descent direction (restarted = true for the last two).
template <VectorSpace T>
Direction<T> next_direction(EngineKind kind, const T& g_new,
                            const StrategicInfo<T>& info) {
  const T steepest = -1.0 * g_new;
  if (info.fresh || kind == EngineKind::GD) return {steepest, false, 0.0};

  const T& g = info.prev_gradient;
  const T& d = info.prev_direction;
  const T y = g_new + (-1.0) * g;
  const auto tiny = [](double x) { return !(std::abs(x) >= kDivisionGuard); };

  double beta = 0.0;
  switch (kind) {
    case EngineKind::CG_FR: {
      const double den = inner(g, g);
      if (tiny(den)) return {steepest, true, 0.0};
      beta = inner(g_new, g_new) / den;
      break;
    }
    case EngineKind::CG_HSplus: {
      const double den = inner(d, y);
      if (tiny(den)) return {steepest, true, 0.0};
      beta = std::max(inner(g_new, y) / den, 0.0);
      break;
    }
    case EngineKind::CG_HZ: {
      const double dy = inner(d, y);
      const double zeta_den = norm(d) * std::min(0.01, norm(g));
      if (tiny(dy) || tiny(dy * dy) || tiny(zeta_den))
        return {steepest, true, 0.0};
      const double hs = inner(g_new, y) / dy;
      const double hz = hs - 2.0 * inner(y, y) * inner(d, g_new) / (dy * dy);
      beta = std::max(hz, -1.0 / zeta_den);
      break;
    }
    case EngineKind::GD:
      break;
  }
  T cand = steepest + beta * d;
  if (!(inner(g_new, cand) < 0.0)) return {steepest, true, 0.0};
  return {std::move(cand), false, beta};
}

template <VectorSpace T>
struct StepResult {
  T x_next;
  double f_next = 0.0;
  StrategicInfo<T> info_next;
  double stepsize = 0.0;
  double initial_stepsize = 0.0;
  double g_dot_d = 0.0;
  int fevals = 0;
  bool restarted = false;
};

/// One Armijo-type update x_{n+1} = x_n + gamma_n d_n, given f_x = J(x) and
/// g_x = grad J(x) != 0.
template <VectorSpace T, ValueFunction<T> J>
StepResult<T> step(EngineKind kind, J& fn, const T& x, double f_x,
                   const T& g_x, const StrategicInfo<T>& info,
                   const LineSearchConfig& cfg = {}) {
  Direction<T> dir = next_direction(kind, g_x, info);
  const double g_dot_d = inner(g_x, dir.d);
  const double gamma0 = initial_stepsize(info, f_x, g_dot_d, norm(g_x));
  const BacktrackResult ls = backtracking(fn, f_x, g_dot_d, x, dir.d, gamma0, cfg);

  StepResult<T> out;
  out.x_next = x + ls.gamma * dir.d;
  out.f_next = ls.value;
  out.stepsize = ls.gamma;
  out.initial_stepsize = gamma0;
  out.g_dot_d = g_dot_d;
  out.fevals = ls.trial_count;
  out.restarted = dir.restarted;
  out.info_next.prev_direction = std::move(dir.d);
  out.info_next.prev_gradient = g_x;
  out.info_next.prev_value = f_x;
  out.info_next.prev_stepsize = ls.gamma;
  out.info_next.fresh = false;
  return out;
}

}  // namespace alcp
