#include "alcp/retraction.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace alcp {

TangentVector riemannian_grad(const StiefelPoint& u, const Matrix& euclid_grad) {
  const Matrix& x = u.matrix();
  if (euclid_grad.rows() != x.rows() || euclid_grad.cols() != x.cols())
    throw ShapeMismatch("gradient shape differs from the point");
  return TangentVector(u, euclid_grad - x * (euclid_grad.transpose() * x));
}

StiefelPoint qr_retraction(const StiefelPoint& u, const Matrix& d) {
  if (d.rows() != u.n() || d.cols() != u.p())
    throw ShapeMismatch("direction shape differs from the point");
  const Matrix y = u.matrix() + d;
  Eigen::HouseholderQR<Matrix> qr(y);
  Matrix q = qr.householderQ() * Matrix::Identity(y.rows(), y.cols());
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    if (!(std::abs(r(j, j)) >= 1e-14))
      throw RankDeficient("U + D is numerically rank deficient");
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return StiefelPoint(std::move(q), 1e-9);
}

namespace {

// gamma d -> f(R_U(gamma d)); x is always the zero tangent vector.
struct RetractedObjective {
  const CountingObjective& f;
  const StiefelPoint& base;
  std::optional<StiefelPoint> last;

  double value(const Matrix& x) {
    last.emplace(qr_retraction(base, x));
    return f.value(last->matrix());
  }
};

}  // namespace

RunResult run_rgd(const Objective& obj, const StiefelPoint& u0,
                  const AlcpConfig& cfg) {
  EvalCounter counter;
  const CountingObjective counted(obj, counter);
  RunRecord record;
  Stopwatch clock;

  StiefelPoint u = u0;
  double f = counted.value(u.matrix());
  StrategicInfo<Matrix> info;
  int n = 0;
  double g0_norm = 0.0;
  Termination reason = Termination::MaxIter;

  for (;;) {
    const Matrix euclid = counted.gradient(u.matrix());
    const Matrix grad = riemannian_grad(u, euclid).matrix();
    const double g_norm = grad.norm();
    if (n == 0) g0_norm = g_norm;

    clock.pause();
    TraceRow row;
    row.n = n;
    row.f_value = f;
    row.grad_norm = g_norm;
    row.feasibility = u.feasibility();
    row.v_norm = std::numeric_limits<double>::quiet_NaN();
    row.elapsed = clock.seconds();
    clock.resume();

    if (g_norm < kExactStationaryNorm) {
      reason = Termination::ExactStationary;
    } else if (g_norm / g0_norm < cfg.rel_grad_tol) {
      reason = Termination::GradTol;
    } else if (n >= cfg.max_iter) {
      reason = Termination::MaxIter;
    } else {
      const Matrix d = -grad;
      // Directional derivative Df(U)[D] = tr(G^T D).
      const double g_dot_d = inner(euclid, d);
      const double gamma0 = initial_stepsize(info, f, g_dot_d, g_norm);
      RetractedObjective j{counted, u, std::nullopt};
      const Matrix zero = Matrix::Zero(u.n(), u.p());
      std::optional<BacktrackResult> ls;
      try {
        ls = backtracking(j, f, g_dot_d, zero, d, gamma0, cfg.line_search);
      } catch (const LineSearchStalled&) {
        reason = Termination::LineSearchStalled;
      }
      if (ls) {
        if (info.fresh) record.segment_initial_stepsizes.push_back(gamma0);
        row.stepsize = ls->gamma;
        row.initial_stepsize = gamma0;
        row.trials = ls->trial_count;
        row.g_dot_d = g_dot_d;
        record.rows.push_back(row);

        info.prev_value = f;
        info.prev_stepsize = ls->gamma;
        info.fresh = false;
        u = std::move(*j.last);
        f = ls->value;
        ++n;
        continue;
      }
    }
    record.rows.push_back(row);
    break;
  }

  record.summary.time = clock.seconds();
  const TraceRow& last = record.rows.back();
  record.summary.fval = last.f_value;
  record.summary.feasi = last.feasibility;
  record.summary.nrmg = last.grad_norm;
  record.summary.itr = last.n;
  record.summary.nfe = counter.total();
  record.summary.change = 0;

  const Eigen::Index p = u.p();
  CenterPoint center = CenterPoint::identity(u.n(), p);
  SkewParam param = SkewParam::zero(u.n(), p);
  return RunResult{std::move(u), std::move(param), std::move(center), reason,
                   std::move(record)};
}

}  // namespace alcp
