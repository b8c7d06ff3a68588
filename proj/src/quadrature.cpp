#include "eeqos/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <sstream>

#include "eeqos/errors.hpp"

namespace eeqos {

GaussLaguerreRule::GaussLaguerreRule(std::size_t n, double alpha) {
  static const auto* previous_handler = gsl_set_error_handler_off();
  (void)previous_handler;
  gsl_integration_fixed_workspace* ws = gsl_integration_fixed_alloc(
      gsl_integration_fixed_laguerre, n, 0.0, 1.0, alpha, 0.0);
  if (!ws) throw NumericalError("gauss-laguerre: rule allocation failed");
  const double* x = gsl_integration_fixed_nodes(ws);
  const double* w = gsl_integration_fixed_weights(ws);
  nodes_.assign(x, x + n);
  weights_.assign(w, w + n);
  gsl_integration_fixed_free(ws);
  // Normalize: Gauss weights for y^alpha e^-y sum to Gamma(alpha+1) exactly.
  double total = 0.0;
  for (double wi : weights_) total += wi;
  for (double& wi : weights_) wi /= total;
}

namespace {

std::uint64_t bits_of(double x) {
  std::uint64_t b;
  std::memcpy(&b, &x, sizeof b);
  return b;
}

}  // namespace

std::shared_ptr<const GaussLaguerreRule> laguerre_rule(std::size_t n, double alpha) {
  using Key = std::pair<std::size_t, std::uint64_t>;
  static std::map<Key, std::shared_ptr<const GaussLaguerreRule>> cache;
  static std::mutex mu;
  const Key key{n, bits_of(alpha)};
  std::lock_guard lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto rule = std::make_shared<const GaussLaguerreRule>(n, alpha);
  cache.emplace(key, rule);
  return rule;
}

double nakagami_expectation(const SystemParams& params,
                            const std::function<double(double)>& f) {
  // gamma = (gamma_bar/m) * y maps the Gamma(m, gamma_bar/m) density onto
  // the y^(m-1) e^-y Laguerre weight.
  const double scale = params.gamma_bar / params.m;
  const double alpha = params.m - 1.0;
  double prev = 0.0;
  bool have_prev = false;
  for (std::size_t n = 64; n <= 512; n *= 2) {
    const auto rule = laguerre_rule(n, alpha);
    const double est = rule->accumulate([&](double y) { return f(scale * y); });
    if (!std::isfinite(est)) {
      std::ostringstream msg;
      msg << "nakagami_expectation: non-finite estimate at n=" << n
          << " (m=" << params.m << ", gamma_bar=" << params.gamma_bar << ")";
      throw NumericalError(msg.str());
    }
    if (have_prev && std::abs(est - prev) <= 1e-10 * std::abs(est)) return est;
    prev = est;
    have_prev = true;
  }
  return prev;  // finest estimate; agreement stop not reached by 512 nodes
}

}  // namespace eeqos
