#include "alcp/bench.hpp"
#include "alcp/center.hpp"
#include "alcp/retraction.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace alcp::bench {

namespace {

class PerturbedObjective final : public Objective {
 public:
  PerturbedObjective(ObjectivePtr inner, double shift)
      : inner_(std::move(inner)), shift_(shift) {}

  double value(const Matrix& u) const override { return inner_->value(u); }
  Matrix gradient(const Matrix& u) const override {
    return inner_->gradient(u).array() + shift_;
  }

 private:
  ObjectivePtr inner_;
  double shift_;
};

struct Sampler {
  std::mt19937_64 gen;
  std::normal_distribution<double> normal{0.0, 1.0};

  Matrix gaussian(Eigen::Index r, Eigen::Index c) {
    Matrix x(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) x(i, j) = normal(gen);
    return x;
  }
  StiefelPoint point(Eigen::Index n, Eigen::Index p) {
    return StiefelPoint(orthonormalize(gaussian(n, p)));
  }
  CenterPoint center(Eigen::Index n, Eigen::Index p) {
    return CenterPoint(orthonormalize(gaussian(p, p)), n);
  }
  SkewParam param(Eigen::Index n, Eigen::Index p, double scale) {
    return SkewParam(scale * gaussian(p, p), scale * gaussian(n - p, p));
  }
  SkewParam unit_param(Eigen::Index n, Eigen::Index p) {
    SkewParam e = param(n, p, 1.0);
    return (1.0 / frobenius_norm(e)) * e;
  }
};

std::string describe(const char* what, double worst, double bound) {
  std::ostringstream os;
  os << what << " worst " << worst << " (bound " << bound << ")";
  return os.str();
}

}  // namespace

std::vector<CheckResult> selftest(const SelftestConfig& cfg) {
  const Eigen::Index n = cfg.n, p = cfg.p;
  Sampler rng{std::mt19937_64(cfg.seed)};
  std::vector<CheckResult> out;

  {
    double worst = 0.0;
    for (int k = 0; k < cfg.samples; ++k) {
      const CenterPoint s = rng.center(n, p);
      const SkewParam v = rng.param(n, p, 1.0);
      const SkewParam back = forward(s, inverse_matrix(s, v));
      worst = std::max(worst, frobenius_norm(back - v) / (1.0 + frobenius_norm(v)));
    }
    out.push_back({"round-trip forward(inverse(V))", worst <= 1e-9,
                   describe("relative error", worst, 1e-9)});
  }
  {
    double worst = 0.0, feas = 0.0;
    for (int k = 0; k < cfg.samples; ++k) {
      const CenterPoint s = rng.center(n, p);
      const StiefelPoint u = rng.point(n, p);
      const Matrix back = inverse_matrix(s, forward(s, u));
      worst = std::max(worst, (back - u.matrix()).norm());
      feas = std::max(feas, feasibility(back));
    }
    out.push_back({"round-trip inverse(forward(U))", worst <= 1e-9 && feas <= 1e-9,
                   describe("error", worst, 1e-9)});
  }

  const ProblemKind kinds[] = {ProblemKind::NearestPoint, ProblemKind::Eigenbasis,
                               ProblemKind::Procrustes};
  for (ProblemKind kind : kinds) {
    ProblemInstance inst = generate(kind, n, p, rng.gen());
    if (kind == ProblemKind::NearestPoint) inst.target = rng.point(n, p).matrix();
    ObjectivePtr obj = inst.objective();
    if (cfg.force_failure) obj = std::make_shared<PerturbedObjective>(obj, 1e-3);

    double worst = 0.0;
    const int directions = 20;
    const double h = 1e-6;
    const CenterPoint s = rng.center(n, p);
    const SkewParam v = rng.param(n, p, 0.5);
    EvalCounter counter;
    ParametrizedObjective fs(s, CountingObjective(*obj, counter));
    const SkewParam g = fs.gradient(v);
    for (int k = 0; k < directions; ++k) {
      const SkewParam e = rng.unit_param(n, p);
      const double fd = (fs.value(v + h * e) - fs.value(v + (-h) * e)) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - frobenius_inner(g, e)) / frobenius_norm(g));
    }
    out.push_back({"pullback gradient vs finite differences (" +
                       std::string(to_string(kind)) + ")",
                   worst < 1e-6, describe("relative error", worst, 1e-6)});

    double worst_euclid = 0.0;
    const StiefelPoint u = rng.point(n, p);
    const Matrix ge = obj->gradient(u.matrix());
    for (int k = 0; k < directions; ++k) {
      Matrix d = rng.gaussian(n, p);
      d /= d.norm();
      const double fd = (obj->value(u.matrix() + h * d) -
                         obj->value(u.matrix() - h * d)) / (2.0 * h);
      worst_euclid = std::max(
          worst_euclid, std::abs(fd - (ge.array() * d.array()).sum()) / ge.norm());
    }
    out.push_back({"euclidean gradient vs finite differences (" +
                       std::string(to_string(kind)) + ")",
                   worst_euclid < 1e-7,
                   describe("relative error", worst_euclid, 1e-7)});
  }

  {
    bool ok = true;
    double worst_a = 0.0, worst_b = 0.0, min_det = 1e300;
    for (int k = 0; k < cfg.samples; ++k) {
      const StiefelPoint u = rng.point(n, p);
      const CenterDiagnostics d = verify_center(choose_center(u), u);
      ok = ok && d.det_lower_ok && d.a_block_norm <= 1e-9 &&
           d.b_block_norm <= 1.0 + 1e-9;
      worst_a = std::max(worst_a, d.a_block_norm);
      worst_b = std::max(worst_b, d.b_block_norm);
      min_det = std::min(min_det, d.det);
    }
    std::ostringstream os;
    os << "min det " << min_det << ", max ||A||_F " << worst_a
       << ", max ||B||_2 " << worst_b;
    out.push_back({"center choice guarantees", ok, os.str()});
  }

  {
    double worst_ratio = 0.0;
    bool lower_ok = true;
    const double tau = 1e-4;
    for (int k = 0; k < cfg.samples; ++k) {
      const CenterPoint s = rng.center(n, p);
      const SkewParam v = rng.param(n, p, 2.0);
      const SkewParam e = rng.unit_param(n, p);
      const double r = mobility(v);
      const double b2 = spectral_norm(v.b());
      lower_ok = lower_ok && r >= 2.0 / std::sqrt(1.0 + b2 * b2) * (1.0 - 1e-12);
      const double moved =
          (inverse_matrix(s, v + tau * e) - inverse_matrix(s, v)).norm();
      worst_ratio = std::max(worst_ratio, moved / (tau * r));
    }
    out.push_back({"mobility bound", worst_ratio <= 1.01 && lower_ok,
                   describe("||dU|| / (tau r(V))", worst_ratio, 1.01)});
  }

  {
    AlcpConfig run_cfg;
    run_cfg.engine = EngineKind::CG_HSplus;
    run_cfg.max_iter = 300;
    const ProblemInstance inst = generate(ProblemKind::Eigenbasis, n, p, rng.gen());
    const RunResult res = run(*inst.objective(), rng.point(n, p), run_cfg);
    double worst = 0.0;
    for (const TraceRow& row : res.record.rows) worst = std::max(worst, row.v_norm);
    const int ascents = count_ascent_steps(res.record.rows);
    const int armijo = count_armijo_violations(res.record.rows, run_cfg.line_search.c);
    std::ostringstream os;
    os << "max ||V_n||_2 " << worst << ", ascents " << ascents
       << ", Armijo violations " << armijo;
    out.push_back({"boundedness, descent and Armijo along an ALCP run",
                   worst <= std::max(1.0, run_cfg.alarm_threshold) + 1e-9 &&
                       ascents == 0 && armijo == 0,
                   os.str()});
  }

  {
    double tangency = 0.0, feas = 0.0;
    for (int k = 0; k < cfg.samples; ++k) {
      const StiefelPoint u = rng.point(n, p);
      const Matrix g = riemannian_grad(u, rng.gaussian(n, p)).matrix();
      tangency = std::max(tangency, (u.matrix().transpose() * g +
                                     g.transpose() * u.matrix()).norm());
      feas = std::max(feas, qr_retraction(u, 0.1 * g).feasibility());
    }
    out.push_back({"retraction baseline tangency and feasibility",
                   tangency <= 1e-9 && feas <= 1e-9,
                   describe("tangency", tangency, 1e-9)});
  }

  return out;
}

}  // namespace alcp::bench
