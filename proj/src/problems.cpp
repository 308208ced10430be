#include "alcp/problems.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

namespace alcp {

double NearestPointObjective::value(const Matrix& u) const {
  return 0.5 * (u - target_).squaredNorm();
}

Matrix NearestPointObjective::gradient(const Matrix& u) const {
  return u - target_;
}

EigenbasisObjective::EigenbasisObjective(const Matrix& a)
    : a_(0.5 * (a + a.transpose())) {}

double EigenbasisObjective::value(const Matrix& u) const {
  return -(u.array() * (a_ * u).array()).sum();
}

Matrix EigenbasisObjective::gradient(const Matrix& u) const {
  return -2.0 * (a_ * u);
}

ProcrustesObjective::ProcrustesObjective(Matrix b, Matrix c)
    : b_(std::move(b)), c_(std::move(c)) {
  if (b_.rows() != c_.rows())
    throw ShapeMismatch("Procrustes: B and C must have the same row count");
}

double ProcrustesObjective::value(const Matrix& u) const {
  return (b_ * u - c_).squaredNorm();
}

Matrix ProcrustesObjective::gradient(const Matrix& u) const {
  return 2.0 * (b_.transpose() * (b_ * u - c_));
}

StiefelPoint toy_target(Eigen::Index n, Eigen::Index p) {
  if (n < 2 || p < 1 || p > n) throw ShapeMismatch("toy target needs N >= 2, 1 <= p <= N");
  const double theta = 127.0 * std::numbers::pi / 128.0;
  Matrix rot = Matrix::Identity(n, n);
  rot(0, 0) = std::cos(theta);
  rot(0, 1) = -std::sin(theta);
  rot(1, 0) = std::sin(theta);
  rot(1, 1) = std::cos(theta);
  return StiefelPoint(rot.leftCols(p));
}

// ---------------------------------------------------------------------------

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::NearestPoint: return "toy";
    case ProblemKind::Eigenbasis: return "eig";
    case ProblemKind::Procrustes: return "proc";
  }
  return "unknown";
}

std::optional<ProblemKind> parse_problem(std::string_view name) {
  if (name == "toy") return ProblemKind::NearestPoint;
  if (name == "eig") return ProblemKind::Eigenbasis;
  if (name == "proc") return ProblemKind::Procrustes;
  return std::nullopt;
}

ObjectivePtr ProblemInstance::objective() const {
  switch (kind) {
    case ProblemKind::NearestPoint:
      return std::make_shared<NearestPointObjective>(target);
    case ProblemKind::Eigenbasis:
      return std::make_shared<EigenbasisObjective>(a);
    case ProblemKind::Procrustes:
      return std::make_shared<ProcrustesObjective>(b, c);
  }
  throw Error("unknown problem kind");
}

double ProblemInstance::optimal_value() const {
  if (kind != ProblemKind::Eigenbasis) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a, Eigen::EigenvaluesOnly);
  const Vector& ev = eig.eigenvalues();  // ascending
  return -ev.tail(p).sum();
}

double ProblemInstance::gradient_lipschitz() const {
  switch (kind) {
    case ProblemKind::NearestPoint: return 1.0;
    case ProblemKind::Eigenbasis: return 2.0 * spectral_norm(a);
    case ProblemKind::Procrustes: {
      const double s = spectral_norm(b);
      return 2.0 * s * s;
    }
  }
  return 0.0;
}

double ProblemInstance::gradient_bound() const {
  switch (kind) {
    case ProblemKind::NearestPoint: return 2.0;
    case ProblemKind::Eigenbasis: return 2.0 * spectral_norm(a);
    case ProblemKind::Procrustes: {
      const double s = spectral_norm(b);
      return 2.0 * s * (s + spectral_norm(c));
    }
  }
  return 0.0;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(seed ^ mix(stream));
}

namespace {

Matrix gaussian(std::mt19937_64& gen, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix x(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) x(i, j) = normal(gen);
  return x;
}

}  // namespace

ProblemInstance generate(ProblemKind kind, Eigen::Index n, Eigen::Index p,
                         std::uint64_t seed) {
  if (p < 1 || n < p) throw ShapeMismatch("problem needs N >= p >= 1");
  ProblemInstance inst;
  inst.kind = kind;
  inst.n = n;
  inst.p = p;
  inst.seed = seed;
  std::mt19937_64 gen(seed);
  switch (kind) {
    case ProblemKind::NearestPoint:
      inst.target = toy_target(n, p).matrix();
      break;
    case ProblemKind::Eigenbasis: {
      const Matrix at = gaussian(gen, n, n);
      inst.a = at.transpose() * at;
      break;
    }
    case ProblemKind::Procrustes:
      inst.b = gaussian(gen, n, n);
      inst.target = random_stiefel(n, p, gen()).matrix();
      inst.c = inst.b * inst.target;
      break;
  }
  return inst;
}

// ---------------------------------------------------------------------------

namespace {

void write_matrix(std::ostream& os, const char* name, const Matrix& m) {
  os << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  char buf[40];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j) os << ' ';
      os << buf;
    }
    os << '\n';
  }
}

}  // namespace

void save_instance(std::ostream& os, const ProblemInstance& inst) {
  os << "alcp-instance 1\n";
  os << "kind " << to_string(inst.kind) << '\n';
  os << "N " << inst.n << '\n';
  os << "p " << inst.p << '\n';
  os << "seed " << inst.seed << '\n';
  if (inst.target.size()) write_matrix(os, "target", inst.target);
  if (inst.a.size()) write_matrix(os, "a", inst.a);
  if (inst.b.size()) write_matrix(os, "b", inst.b);
  if (inst.c.size()) write_matrix(os, "c", inst.c);
}

ProblemInstance load_instance(std::istream& is) {
  auto expect = [&](const std::string& key) {
    std::string k;
    if (!(is >> k) || k != key)
      throw Error("instance file: expected '" + key + "'");
  };
  expect("alcp-instance");
  int version = 0;
  if (!(is >> version) || version != 1)
    throw Error("instance file: unsupported version");

  ProblemInstance inst;
  std::string kind;
  expect("kind");
  is >> kind;
  const auto parsed = parse_problem(kind);
  if (!parsed) throw Error("instance file: unknown kind '" + kind + "'");
  inst.kind = *parsed;
  expect("N");
  is >> inst.n;
  expect("p");
  is >> inst.p;
  expect("seed");
  is >> inst.seed;
  if (!is) throw Error("instance file: malformed header");

  std::string tag;
  while (is >> tag) {
    if (tag != "matrix") throw Error("instance file: expected 'matrix'");
    std::string name;
    Eigen::Index rows = 0, cols = 0;
    if (!(is >> name >> rows >> cols) || rows < 0 || cols < 0)
      throw Error("instance file: malformed matrix header");
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j)
        if (!(is >> m(i, j))) throw Error("instance file: truncated matrix " + name);
    if (name == "target") inst.target = std::move(m);
    else if (name == "a") inst.a = std::move(m);
    else if (name == "b") inst.b = std::move(m);
    else if (name == "c") inst.c = std::move(m);
    else throw Error("instance file: unknown matrix '" + name + "'");
  }
  return inst;
}

}  // namespace alcp
