#pragma once

#include "alcp/types.hpp"

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace alcp {

enum class Termination { GradTol, MaxIter, ExactStationary, LineSearchStalled };

std::string_view to_string(Termination t);

/// One iterate of a run. The step fields (stepsize, initial_stepsize, trials,
/// g_dot_d, restart) describe the update taken *from* this iterate and are
/// zero on the final row.
struct TraceRow {
  int n = 0;
  int l = 0;  // center index; always 0 for the retraction baseline
  double f_value = 0.0;
  double grad_norm = 0.0;
  double stepsize = 0.0;
  double initial_stepsize = 0.0;
  int trials = 0;
  double g_dot_d = 0.0;
  double feasibility = 0.0;
  double v_norm = 0.0;  // ||V_n||_2; NaN for the retraction baseline
  bool center_changed = false;
  bool restart = false;
  double elapsed = 0.0;
};

struct RunSummary {
  double fval = 0.0;   // final f (the CLI subtracts the known optimum)
  double feasi = 0.0;  // ||I - U^T U||_F at the final iterate
  double nrmg = 0.0;   // final gradient norm
  int itr = 0;
  double time = 0.0;
  std::int64_t nfe = 0;
  int change = 0;
};

struct RunRecord {
  std::vector<TraceRow> rows;
  RunSummary summary;
  /// Initial stepsize at the first step of each segment, for auditing the
  /// positive lower bound on segment-initial stepsizes.
  std::vector<double> segment_initial_stepsizes;
};

/// Monotonic wall clock that can be paused around bookkeeping.
class Stopwatch {
 public:
  Stopwatch() : start_(Clock::now()) {}

  double seconds() const {
    const auto now = paused_ ? pause_start_ : Clock::now();
    return std::chrono::duration<double>(now - start_ - excluded_).count();
  }
  void pause() {
    if (!paused_) {
      paused_ = true;
      pause_start_ = Clock::now();
    }
  }
  void resume() {
    if (paused_) {
      excluded_ += Clock::now() - pause_start_;
      paused_ = false;
    }
  }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_;
  Clock::time_point pause_start_{};
  Clock::duration excluded_{};
  bool paused_ = false;
};

// ---------------------------------------------------------------------------
// Trace CSV: header line, one row per iteration, 17 significant digits.

inline constexpr std::string_view kTraceHeader =
    "n,l,f_value,grad_norm,stepsize,initial_stepsize,trials,g_dot_d,"
    "feasibility,v_norm,center_changed,restart,elapsed";

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows);
/// Throws Error on a malformed header or row.
std::vector<TraceRow> read_trace_csv(std::istream& is);

/// Number of accepted steps that violate f_{n+1} <= f_n + c gamma_n <g_n, d_n>.
int count_armijo_violations(const std::vector<TraceRow>& rows, double c);

/// Number of n with f_{n+1} > f_n.
int count_ascent_steps(const std::vector<TraceRow>& rows);

}  // namespace alcp
