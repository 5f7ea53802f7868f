// Copyright 2026 The locprob Authors.
// SPDX-License-Identifier: Apache-2.0

#include "locprob/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "locprob/error.hpp"

namespace locprob {

using detail::require;

void Deployment::validate() const {
  require(std::isfinite(rho_l) && rho_l > 0.0, "rho_l must be finite and > 0");
  require(std::isfinite(rho_nl) && rho_nl > 0.0, "rho_nl must be finite and > 0");
  require(std::isfinite(radius) && radius > 0.0, "radius must be finite and > 0");
  require(std::isfinite(mean_l_count()) && std::isfinite(mean_nl_count()),
          "mean node counts overflow");
}

double Deployment::area() const { return std::numbers::pi * radius * radius; }

namespace analytic {
namespace {

void check_density(double rho_l) {
  require(std::isfinite(rho_l) && rho_l > 0.0, "rho_l must be finite and > 0, got " + std::to_string(rho_l));
}

void check_radius(double radius) {
  require(std::isfinite(radius) && radius > 0.0,
          "radius must be finite and > 0, got " + std::to_string(radius));
}

void check_lambda(double lambda) {
  require(lambda >= 0.0 && !std::isnan(lambda), "lambda must be >= 0, got " + std::to_string(lambda));
}

}  // namespace

double expected_neighbors_bounded(const ChannelModel& model, double rho_l, double radius) {
  check_density(rho_l);
  check_radius(radius);
  const double d = model.d_max();
  if (model.shadowing().is_hard_disk()) {
    const double r = std::min(radius, d);
    return rho_l * std::numbers::pi * r * r;
  }
  // 1 - erf(y) and 1 + erf(y - eta/alpha) as erfc to keep both tails exact.
  const double ratio = model.eta() / kAlpha;
  const double y = std::log(radius / d) / ratio;
  const double inner = 0.5 * radius * radius * std::erfc(y);
  const double outer = 0.5 * d * d * model.shadowing().coverage_gain() * std::erfc(ratio - y);
  return std::numbers::pi * rho_l * (inner + outer);
}

double expected_neighbors_unbounded(const ChannelModel& model, double rho_l) {
  check_density(rho_l);
  const double d = model.d_max();
  return rho_l * std::numbers::pi * d * d * model.shadowing().coverage_gain();
}

double unbounded_tail_fraction(const ChannelModel& model, double radius) {
  check_radius(radius);
  const double d = model.d_max();
  if (model.shadowing().is_hard_disk()) {
    if (radius >= d) return 0.0;
    return 1.0 - (radius / d) * (radius / d);
  }
  const double ratio = model.eta() / kAlpha;
  const double y = std::log(radius / d) / ratio;
  const double scaled_area = (radius / d) * (radius / d) / model.shadowing().coverage_gain();
  const double tail = 0.5 * std::erfc(y - ratio) - scaled_area * 0.5 * std::erfc(y);
  return std::max(tail, 0.0);
}

quadrature::Result integrate_neighbors(const ChannelModel& model, double rho_l, double radius,
                                       double rel_tol) {
  check_density(rho_l);
  check_radius(radius);
  const auto integrand = [&](double r) { return r * model.link_probability(r); };
  // The hard-disk integrand jumps at d_max. The shadowed one falls over a
  // band of log-width eta/alpha around it, which can be far narrower than R.
  std::vector<double> breaks{model.d_max()};
  if (!model.shadowing().is_hard_disk()) {
    const double width = model.eta() / model.alpha();
    for (int k = 1; k <= 8; ++k) {
      breaks.push_back(model.d_max() * std::exp(-k * width));
      breaks.push_back(model.d_max() * std::exp(k * width));
    }
  }
  quadrature::Options options;
  options.rel_tol = rel_tol;
  auto result = quadrature::integrate(integrand, 0.0, radius, breaks, options);
  const double scale = 2.0 * std::numbers::pi * rho_l;
  result.value *= scale;
  result.abs_error *= scale;
  return result;
}

double quadrature_oracle(const ChannelModel& model, double rho_l, double radius) {
  return integrate_neighbors(model, rho_l, radius).value;
}

PoissonTail poisson_tail(double lambda, int k) {
  check_lambda(lambda);
  require(k >= 0, "anchor requirement k must be >= 0");
  PoissonTail tail;
  if (k == 0) {
    tail.success = 1.0;
    tail.failure = 0.0;
    return tail;
  }
  if (std::isinf(lambda) || lambda > kSaturationLambda) {
    tail.success = 1.0;
    tail.failure = 0.0;
    tail.saturated = true;
    return tail;
  }
  if (lambda == 0.0) return tail;

  const double weight = std::exp(-lambda);
  double term = 1.0;
  double head = 1.0;
  for (int j = 1; j < k; ++j) {
    term *= lambda / j;
    head += term;
  }
  tail.failure = weight * head;

  if (lambda >= k) {
    tail.success = 1.0 - tail.failure;
    return tail;
  }
  // Below the mode the upper tail is small: sum it directly.
  double sum = 0.0;
  term *= lambda / k;
  for (int j = k + 1; term > 0.0 && (sum == 0.0 || term > 1e-18 * sum); ++j) {
    sum += term;
    term *= lambda / j;
  }
  tail.success = weight * sum;
  return tail;
}

double single_node_localization_probability(double lambda) { return poisson_tail(lambda).success; }

double failure_probability(double lambda) { return poisson_tail(lambda).failure; }

double network_localization_probability(double lambda, double n_nl) {
  check_lambda(lambda);
  require(n_nl >= 0.0 && std::isfinite(n_nl), "n_nl must be finite and >= 0, got " + std::to_string(n_nl));
  if (n_nl == 0.0) return 1.0;
  const auto tail = poisson_tail(lambda);
  if (tail.failure == 0.0) return 1.0;
  if (tail.success == 0.0) return 0.0;
  const double log_success = tail.success < 0.5 ? std::log(tail.success) : std::log1p(-tail.failure);
  return std::exp(n_nl * log_success);
}

double network_localization_probability(const ChannelModel& model, const Deployment& deployment) {
  deployment.validate();
  return network_localization_probability(expected_neighbors_unbounded(model, deployment.rho_l),
                                          deployment.mean_nl_count());
}

double minimum_density(const ChannelModel& model) {
  const double d = model.d_max();
  return 3.0 / (std::numbers::pi * d * d) / model.shadowing().coverage_gain();
}

}  // namespace analytic
}  // namespace locprob
