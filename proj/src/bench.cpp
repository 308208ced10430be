#include "alcp/bench.hpp"

#include "alcp/center.hpp"
#include "alcp/retraction.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

namespace alcp::bench {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::ALCP: return "alcp";
    case Strategy::CP: return "cp";
    case Strategy::QR: return "qr";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  if (name == "alcp") return Strategy::ALCP;
  if (name == "cp") return Strategy::CP;
  if (name == "qr") return Strategy::QR;
  return std::nullopt;
}

ProblemInstance trial_instance(const BenchConfig& cfg, int trial) {
  if (cfg.instance_path) {
    std::ifstream in(*cfg.instance_path);
    if (!in) throw Error("cannot open instance file " + *cfg.instance_path);
    ProblemInstance inst = load_instance(in);
    if (inst.n != cfg.n || inst.p != cfg.p || inst.kind != cfg.problem)
      throw Error("instance file does not match --problem/--N/--p");
    return inst;
  }
  return generate(cfg.problem, cfg.n, cfg.p, derive_seed(cfg.seed, 2 * trial));
}

StiefelPoint trial_start(const BenchConfig& cfg, int trial) {
  return random_stiefel(cfg.n, cfg.p, derive_seed(cfg.seed, 2 * trial + 1));
}

TrialResult run_trial(const BenchConfig& cfg, int trial) {
  const ProblemInstance inst = trial_instance(cfg, trial);
  const ObjectivePtr obj = inst.objective();
  const StiefelPoint u0 = trial_start(cfg, trial);

  AlcpConfig run_cfg;
  run_cfg.alarm_threshold = cfg.alarm_threshold;
  run_cfg.rel_grad_tol = cfg.tol;
  run_cfg.max_iter = cfg.max_iter;
  run_cfg.engine = cfg.engine;

  const auto fixed_center = [&] {
    return cfg.center == CenterChoice::Identity
               ? CenterPoint::identity(cfg.n, cfg.p)
               : choose_center(u0);
  };

  std::optional<RunResult> res;
  switch (cfg.strategy) {
    case Strategy::ALCP:
      res.emplace(cfg.center == CenterChoice::Identity
                      ? run(*obj, u0, fixed_center(), run_cfg)
                      : run(*obj, u0, run_cfg));
      break;
    case Strategy::CP:
      res.emplace(run_naive_cp(*obj, u0, fixed_center(), run_cfg));
      break;
    case Strategy::QR:
      res.emplace(run_rgd(*obj, u0, run_cfg));
      break;
  }

  TrialResult out;
  out.trial = trial;
  out.reason = res->reason;
  out.record = std::move(res->record);
  out.summary = out.record.summary;
  out.f_final = out.summary.fval;
  out.f_initial = out.record.rows.front().f_value;
  out.f_optimal = inst.optimal_value();
  out.summary.fval = out.f_final - out.f_optimal;
  return out;
}

std::vector<TrialResult> run_benchmark(const BenchConfig& cfg) {
  if (cfg.trials < 1) return {};
  std::vector<TrialResult> results(static_cast<std::size_t>(cfg.trials));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k; (k = next.fetch_add(1)) < cfg.trials;) {
      try {
        results[k] = run_trial(cfg, k);
      } catch (const std::exception& e) {
        results[k].trial = k;
        results[k].error = e.what();
      }
    }
  };
  const int jobs = std::clamp(cfg.jobs, 1, cfg.trials);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  return results;
}

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string f6(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

void write_prefix(std::ostream& os, const BenchConfig& cfg) {
  const std::string_view algo =
      cfg.strategy == Strategy::QR ? "gd" : alcp::to_string(cfg.engine);
  os << algo << ',' << to_string(cfg.strategy) << ',' << cfg.n << ',' << cfg.p;
}

}  // namespace

void write_summary_csv(std::ostream& os, const BenchConfig& cfg,
                       const std::vector<TrialResult>& trials, bool timing) {
  os << "algo,strategy,N,p,fval,feasi,nrmg,itr,time,nfe,change\n";
  double fval = 0, feasi = 0, nrmg = 0, itr = 0, time = 0, nfe = 0, change = 0;
  double k = 0;
  for (const TrialResult& t : trials) {
    if (t.error) continue;
    k += 1;
    fval += t.summary.fval;
    feasi += t.summary.feasi;
    nrmg += t.summary.nrmg;
    itr += t.summary.itr;
    time += t.summary.time;
    nfe += static_cast<double>(t.summary.nfe);
    change += t.summary.change;
  }
  if (k == 0) k = 1;
  write_prefix(os, cfg);
  os << ',' << g17(fval / k) << ',' << g17(feasi / k) << ',' << g17(nrmg / k)
     << ',' << g17(itr / k) << ',' << f6(timing ? time / k : 0.0) << ','
     << g17(nfe / k) << ',' << g17(change / k) << '\n';
}

void write_trials_csv(std::ostream& os, const BenchConfig& cfg,
                      const std::vector<TrialResult>& trials, bool timing) {
  os << "trial,termination,algo,strategy,N,p,fval,feasi,nrmg,itr,time,nfe,change\n";
  for (const TrialResult& t : trials) {
    if (t.error) continue;
    os << t.trial << ',' << alcp::to_string(t.reason) << ',';
    write_prefix(os, cfg);
    const RunSummary& s = t.summary;
    os << ',' << g17(s.fval) << ',' << g17(s.feasi) << ',' << g17(s.nrmg)
       << ',' << s.itr << ',' << f6(timing ? s.time : 0.0) << ',' << s.nfe
       << ',' << s.change << '\n';
  }
}

void write_history_csv(std::ostream& os, const std::vector<TrialResult>& trials) {
  os << "trial," << kTraceHeader << '\n';
  for (const TrialResult& t : trials) {
    if (t.error) continue;
    std::ostringstream body;
    write_trace_csv(body, t.record.rows);
    std::istringstream lines(body.str());
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) os << t.trial << ',' << line << '\n';
  }
}

}  // namespace alcp::bench
