#pragma once

#include "alcp/objective.hpp"
#include "alcp/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>

namespace alcp {

/// f(U) = 1/2 ||U - U*||_F^2, grad = U - U*.
class NearestPointObjective final : public Objective {
 public:
  explicit NearestPointObjective(Matrix target) : target_(std::move(target)) {}

  double value(const Matrix& u) const override;
  Matrix gradient(const Matrix& u) const override;
  std::string name() const override { return "nearest-point"; }

 private:
  Matrix target_;
};

/// f(U) = -trace(U^T A U), grad = -2 A U, for symmetric A.
class EigenbasisObjective final : public Objective {
 public:
  /// A is symmetrized on ingest.
  explicit EigenbasisObjective(const Matrix& a);

  double value(const Matrix& u) const override;
  Matrix gradient(const Matrix& u) const override;
  std::string name() const override { return "eigenbasis"; }

 private:
  Matrix a_;
};

/// f(U) = ||B U - C||_F^2, grad = 2 B^T (B U - C).
class ProcrustesObjective final : public Objective {
 public:
  ProcrustesObjective(Matrix b, Matrix c);

  double value(const Matrix& u) const override;
  Matrix gradient(const Matrix& u) const override;
  std::string name() const override { return "procrustes"; }

 private:
  Matrix b_;
  Matrix c_;
};

inline NearestPointObjective nearest_point(const StiefelPoint& target) {
  return NearestPointObjective(target.matrix());
}
inline EigenbasisObjective eigenbasis(const Matrix& a) {
  return EigenbasisObjective(a);
}
inline ProcrustesObjective procrustes(Matrix b, Matrix c) {
  return ProcrustesObjective(std::move(b), std::move(c));
}

/// U* = diag(R(127 pi / 128), I_{N-2}) I_{N x p}; for p = 1 the first column.
StiefelPoint toy_target(Eigen::Index n, Eigen::Index p);

// ---------------------------------------------------------------------------

enum class ProblemKind { NearestPoint, Eigenbasis, Procrustes };

std::string_view to_string(ProblemKind kind);
/// Accepts toy, eig, proc.
std::optional<ProblemKind> parse_problem(std::string_view name);

/// Seeded problem data. NearestPoint uses `target` (the toy target);
/// Eigenbasis uses `a` = At^T At with Gaussian At; Procrustes uses Gaussian
/// `b`, `target` = orth of a uniform matrix and `c` = b * target.
struct ProblemInstance {
  ProblemKind kind = ProblemKind::NearestPoint;
  Eigen::Index n = 0;
  Eigen::Index p = 0;
  std::uint64_t seed = 0;
  Matrix target;
  Matrix a;
  Matrix b;
  Matrix c;

  ObjectivePtr objective() const;
  /// Minimum of f over St(p, N): 0 for NearestPoint and Procrustes, minus the
  /// sum of the p largest eigenvalues of A for Eigenbasis.
  double optimal_value() const;
  /// Lipschitz constant of grad f on St(p, N) (1, 2||A||_2, 2||B||_2^2).
  double gradient_lipschitz() const;
  /// Upper bound on max ||grad f(U)||_2 over St(p, N).
  double gradient_bound() const;
};

ProblemInstance generate(ProblemKind kind, Eigen::Index n, Eigen::Index p,
                         std::uint64_t seed);

/// SplitMix64-based stream splitting: the seed for sub-stream `stream` of
/// `seed`. Trials use derive_seed(seed, trial).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Text container: a header line "alcp-instance 1", the fields kind/N/p/seed,
/// then each matrix as "matrix <name> <rows> <cols>" followed by its entries
/// row-major, one row per line, 17 significant digits.
void save_instance(std::ostream& os, const ProblemInstance& inst);
ProblemInstance load_instance(std::istream& is);

}  // namespace alcp
