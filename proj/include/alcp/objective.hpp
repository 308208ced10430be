#pragma once

#include "alcp/types.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

namespace alcp {

/// A differentiable f : R^{N x p} -> R with its Euclidean gradient.
/// Implementations are immutable and may be shared between runs.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual double value(const Matrix& u) const = 0;
  virtual Matrix gradient(const Matrix& u) const = 0;
  virtual std::string name() const { return "objective"; }
};

using ObjectivePtr = std::shared_ptr<const Objective>;

/// Objective built from two callables; handy for tests and small problems.
class LambdaObjective final : public Objective {
 public:
  using ValueFn = std::function<double(const Matrix&)>;
  using GradFn = std::function<Matrix(const Matrix&)>;

  LambdaObjective(ValueFn f, GradFn g, std::string name = "lambda")
      : f_(std::move(f)), g_(std::move(g)), name_(std::move(name)) {}

  double value(const Matrix& u) const override { return f_(u); }
  Matrix gradient(const Matrix& u) const override { return g_(u); }
  std::string name() const override { return name_; }

 private:
  ValueFn f_;
  GradFn g_;
  std::string name_;
};

/// Per-run tally of objective evaluations.
struct EvalCounter {
  std::int64_t values = 0;
  std::int64_t gradients = 0;

  std::int64_t total() const { return values + gradients; }
};

/// Wraps an objective and counts calls into a run-local EvalCounter.
class CountingObjective {
 public:
  CountingObjective(const Objective& inner, EvalCounter& counter)
      : inner_(&inner), counter_(&counter) {}

  double value(const Matrix& u) const {
    ++counter_->values;
    return inner_->value(u);
  }
  Matrix gradient(const Matrix& u) const {
    ++counter_->gradients;
    return inner_->gradient(u);
  }

  const Objective& inner() const { return *inner_; }
  EvalCounter& counter() const { return *counter_; }

 private:
  const Objective* inner_;
  EvalCounter* counter_;
};

}  // namespace alcp
