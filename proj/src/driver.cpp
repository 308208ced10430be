#include "alcp/driver.hpp"

#include "alcp/center.hpp"

#include <optional>

namespace alcp {

bool alarming(const SkewParam& v, double threshold) {
  return spectral_norm(v.a()) + spectral_norm(v.b()) > threshold;
}

namespace {

RunResult run_from(const Objective& obj, const StiefelPoint& u0,
                   const CenterPoint& first_center, const AlcpConfig& cfg) {
  EvalCounter counter;
  const CountingObjective counted(obj, counter);
  RunRecord record;
  Stopwatch clock;

  std::optional<ParametrizedObjective> fs;
  fs.emplace(first_center, counted);
  SkewParam v = forward(first_center, u0);
  double f = fs->value(v);
  StrategicInfo<SkewParam> info;

  int n = 0;
  int l = 0;
  bool changed = false;
  double g0_norm = 0.0;
  Termination reason = Termination::MaxIter;

  for (;;) {
    const SkewParam g = fs->gradient(v);
    const double g_norm = frobenius_norm(g);
    if (n == 0) g0_norm = g_norm;

    clock.pause();
    TraceRow row;
    row.n = n;
    row.l = l;
    row.f_value = f;
    row.grad_norm = g_norm;
    row.feasibility = feasibility(fs->point(v));
    row.v_norm = spectral_norm(v);
    row.center_changed = changed;
    row.elapsed = clock.seconds();
    clock.resume();

    if (g_norm < kExactStationaryNorm) {
      reason = Termination::ExactStationary;
    } else if (g_norm / g0_norm < cfg.rel_grad_tol) {
      reason = Termination::GradTol;
    } else if (n >= cfg.max_iter) {
      reason = Termination::MaxIter;
    } else {
      std::optional<StepResult<SkewParam>> st;
      try {
        st = step(cfg.engine, *fs, v, f, g, info, cfg.line_search);
      } catch (const LineSearchStalled&) {
        reason = Termination::LineSearchStalled;
      }
      if (st) {
        if (info.fresh) record.segment_initial_stepsizes.push_back(st->initial_stepsize);
        row.stepsize = st->stepsize;
        row.initial_stepsize = st->initial_stepsize;
        row.trials = st->fevals;
        row.g_dot_d = st->g_dot_d;
        row.restart = st->restarted;
        record.rows.push_back(row);

        f = st->f_next;
        if (cfg.alarm_mode == AlarmMode::Standard &&
            alarming(st->x_next, cfg.alarm_threshold)) {
          const Matrix u_next = fs->point(st->x_next);
          CenterPoint s_next = choose_center(u_next);
          v = forward(s_next, u_next);
          fs.emplace(std::move(s_next), counted);
          info = StrategicInfo<SkewParam>{};
          ++l;
          changed = true;
        } else {
          v = std::move(st->x_next);
          info = std::move(st->info_next);
          changed = false;
        }
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
  record.summary.change = l;

  StiefelPoint point(fs->point(v), 1e-8);
  CenterPoint center = fs->center();
  return RunResult{std::move(point), std::move(v), std::move(center), reason,
                   std::move(record)};
}

}  // namespace

RunResult run(const Objective& obj, const StiefelPoint& u0,
              const AlcpConfig& cfg) {
  return run_from(obj, u0, choose_center(u0), cfg);
}

RunResult run(const Objective& obj, const StiefelPoint& u0,
              const CenterPoint& first_center, const AlcpConfig& cfg) {
  return run_from(obj, u0, first_center, cfg);
}

RunResult run_naive_cp(const Objective& obj, const StiefelPoint& u0,
                       const CenterPoint& center, AlcpConfig cfg) {
  cfg.alarm_mode = AlarmMode::Never;
  return run_from(obj, u0, center, cfg);
}

}  // namespace alcp
