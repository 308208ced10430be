#pragma once

#include "alcp/driver.hpp"
#include "alcp/problems.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace alcp::bench {

enum class Strategy { ALCP, CP, QR };
enum class CenterChoice { Auto, Identity };

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

struct BenchConfig {
  ProblemKind problem = ProblemKind::NearestPoint;
  Eigen::Index n = 1000;
  Eigen::Index p = 10;
  EngineKind engine = EngineKind::GD;
  Strategy strategy = Strategy::ALCP;
  CenterChoice center = CenterChoice::Auto;
  double alarm_threshold = 1.5;
  double tol = 1e-5;
  int max_iter = 2000;
  int trials = 1;
  std::uint64_t seed = 0;
  int jobs = 1;
  /// Instance file replacing seeded generation (shared by all trials).
  std::optional<std::string> instance_path;
};

struct TrialResult {
  int trial = 0;
  Termination reason = Termination::MaxIter;
  RunSummary summary;  // fval is f(U_m) - f(U*)
  double f_final = 0.0;
  double f_initial = 0.0;
  double f_optimal = 0.0;
  RunRecord record;
  /// Set when the trial threw; the other fields are then meaningless.
  std::optional<std::string> error;
};

/// Instance and initial point of one trial: trial k draws its instance from
/// derive_seed(seed, 2k) and U0 = orth(uniform) from derive_seed(seed, 2k+1).
ProblemInstance trial_instance(const BenchConfig& cfg, int trial);
StiefelPoint trial_start(const BenchConfig& cfg, int trial);

TrialResult run_trial(const BenchConfig& cfg, int trial);

/// Runs cfg.trials trials on up to cfg.jobs threads; results in trial order.
/// A trial that throws is reported through TrialResult::error.
std::vector<TrialResult> run_benchmark(const BenchConfig& cfg);

/// Header "algo,strategy,N,p,fval,feasi,nrmg,itr,time,nfe,change" and one row
/// of means over the successful trials. With `timing` false the time column
/// is written as 0.
void write_summary_csv(std::ostream& os, const BenchConfig& cfg,
                       const std::vector<TrialResult>& trials,
                       bool timing = true);

/// Per-trial rows: "trial,termination,algo,strategy,N,p,fval,...,change".
void write_trials_csv(std::ostream& os, const BenchConfig& cfg,
                      const std::vector<TrialResult>& trials,
                      bool timing = true);

/// Per-iteration history of every trial: "trial,<trace columns>".
void write_history_csv(std::ostream& os, const std::vector<TrialResult>& trials);

// ---------------------------------------------------------------------------

struct SelftestConfig {
  Eigen::Index n = 60;
  Eigen::Index p = 5;
  int samples = 100;
  std::uint64_t seed = 1;
  /// Adds 1e-3 to every Euclidean gradient entry so the gradient checks fail.
  bool force_failure = false;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckResult> selftest(const SelftestConfig& cfg);

}  // namespace alcp::bench
