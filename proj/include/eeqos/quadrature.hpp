#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "eeqos/params.hpp"

namespace eeqos {

/// Generalized Gauss-Laguerre rule for integral y^alpha e^-y f(y) dy on
/// [0, inf). Weights are normalized so they sum to 1 (the Gamma(alpha+1)
/// mass is divided out), which makes accumulate() a probability-weighted
/// average of f.
class GaussLaguerreRule {
 public:
  GaussLaguerreRule(std::size_t n, double alpha);

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }

  template <typename F>
  double accumulate(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * f(nodes_[i]);
    return acc;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Cached lookup; rules are immutable and shared across threads.
std::shared_ptr<const GaussLaguerreRule> laguerre_rule(std::size_t n, double alpha);

/// E[f(gamma)] for gamma ~ Gamma(shape m, scale gamma_bar/m), the Nakagami-m
/// SNR law. Node counts double from 64 until two successive estimates agree
/// to 1e-10 relative or 512 nodes are reached; the finest estimate is
/// returned. Non-finite results raise NumericalError.
double nakagami_expectation(const SystemParams& params,
                            const std::function<double(double)>& f);

}  // namespace eeqos
