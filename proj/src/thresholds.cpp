// Copyright 2026 The locprob Authors.
// SPDX-License-Identifier: Apache-2.0

#include "locprob/thresholds.hpp"

#include <cmath>
#include <numbers>
#include <functional>
#include <sstream>

#include "locprob/analytic.hpp"
#include "locprob/error.hpp"

namespace locprob {

using detail::require;

void GrowthSpec::validate() const {
  require(xi >= 0.0 && xi <= 1.0, "xi must lie in [0, 1]");
  require(std::isfinite(p) && p > 0.0, "p must be finite and > 0");
  require(std::isfinite(q) && q > 0.0, "q must be finite and > 0");
  require(std::isfinite(t) && t > 0.0, "t must be finite and > 0");
}

double GrowthSpec::targets(double n) const {
  if (regime == GrowthRegime::kLinearAnchors) return q * std::pow(n, t);
  return q * std::pow(n, 1.0 - xi);
}

double GrowthSpec::anchors(double n) const {
  switch (regime) {
    case GrowthRegime::kLogAnchors:
      return p * std::log(n);
    case GrowthRegime::kLogOfTargets:
      return p * std::log(targets(n));
    case GrowthRegime::kLinearAnchors:
      return p * n;
  }
  return 0.0;
}

namespace thresholds {
namespace {

void check_count(double n_nl) {
  require(std::isfinite(n_nl) && n_nl >= 1.0, "n_nl must be finite and >= 1");
}

// lambda^3 e^{-lambda} / Q(lambda), tending to 6 as lambda -> 0.
double cubic_over_tail(double lambda) {
  const auto tail = analytic::poisson_tail(lambda);
  if (tail.saturated) return 0.0;
  if (tail.success == 0.0) return 6.0;
  return std::exp(-lambda + 3.0 * std::log(lambda) - std::log(tail.success));
}

// Q^{N-1}, Q = P(E_L).
double success_power(double lambda, double n_nl) {
  return analytic::network_localization_probability(lambda, n_nl - 1.0);
}

ThresholdResult solve_largest(const std::function<double(double)>& f, double lo, double hi,
                              const char* what) {
  const auto grid = roots::geometric_grid(lo, hi, 600);
  ThresholdResult result;
  result.sign_changes = roots::sign_changes(f, grid);
  if (result.sign_changes.empty()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": no sign change over [" << lo << ", " << hi << "] (600-point geometric scan); f(lo) = "
        << f(lo) << ", f(hi) = " << f(hi);
    throw BracketingError(msg.str());
  }
  result.bracket = result.sign_changes.back();
  const auto root = roots::solve_bracketed(f, result.bracket);
  result.value = root.x;
  result.iterations = root.iterations;
  result.residual = std::abs(root.fx);
  if (!(result.residual < kResidualTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": residual " << result.residual << " at " << root.x << " exceeds "
        << kResidualTolerance << " after " << root.iterations << " iterations";
    throw NumericalError(msg.str());
  }
  return result;
}

}  // namespace

double density_gain(const ChannelModel& model) {
  const double d = model.d_max();
  return std::numbers::pi * d * d * model.shadowing().coverage_gain();
}

double range_gain(const Shadowing& shadowing, double rho_l) {
  require(std::isfinite(rho_l) && rho_l > 0.0, "rho_l must be finite and > 0");
  return rho_l * std::numbers::pi * shadowing.coverage_gain();
}

double single_node_density_threshold(const ChannelModel& model) { return 2.0 / density_gain(model); }

double single_node_range_threshold(const Shadowing& shadowing, double rho_l) {
  return std::sqrt(2.5 / range_gain(shadowing, rho_l));
}

double range_for_density_threshold(const Shadowing& shadowing, double rho_l) {
  return std::sqrt(2.0 / range_gain(shadowing, rho_l));
}

double density_curvature(const ChannelModel& model, double n_nl, double rho_l) {
  check_count(n_nl);
  require(rho_l >= 0.0, "rho_l must be >= 0");
  const double gain = density_gain(model);
  const double lambda = gain * rho_l;
  const double decay = std::exp(-lambda);
  const double second = decay * lambda * (1.0 - 0.5 * lambda);
  double cross = 0.0;
  if (n_nl > 1.0) {
    const double q = analytic::single_node_localization_probability(lambda);
    const double first = 0.5 * decay * lambda * lambda;
    cross = q > 0.0 ? (n_nl - 1.0) * first * first / q : 0.0;
  }
  return gain * gain * n_nl * success_power(lambda, n_nl) * (second + cross);
}

double range_curvature(const Shadowing& shadowing, double rho_l, double n_nl, double d_max) {
  check_count(n_nl);
  require(d_max >= 0.0, "d_max must be >= 0");
  const double gain = range_gain(shadowing, rho_l);
  const double lambda = gain * d_max * d_max;
  const double decay = std::exp(-lambda);
  double bracket = decay * lambda * lambda * (2.5 - lambda);
  if (n_nl > 1.0) {
    const double q = analytic::single_node_localization_probability(lambda);
    if (q > 0.0) bracket += (n_nl - 1.0) * decay * decay * std::pow(lambda, 5) / (2.0 * q);
  }
  return n_nl * success_power(lambda, n_nl) * 2.0 * gain * bracket;
}

double density_equation(const ChannelModel& model, double n_nl, double rho_l) {
  check_count(n_nl);
  const double lambda = density_gain(model) * rho_l;
  const double coupling = n_nl > 1.0 ? 0.5 * (n_nl - 1.0) * cubic_over_tail(lambda) : 0.0;
  return 2.0 - lambda + coupling;
}

double range_equation(const Shadowing& shadowing, double rho_l, double n_nl, double d_max) {
  check_count(n_nl);
  const double lambda = range_gain(shadowing, rho_l) * d_max * d_max;
  const double coupling = n_nl > 1.0 ? (n_nl - 1.0) * cubic_over_tail(lambda) : 0.0;
  return 5.0 - 2.0 * lambda + coupling;
}

ThresholdResult network_density_threshold(const ChannelModel& model, double n_nl) {
  check_count(n_nl);
  const double seed = single_node_density_threshold(model);
  return solve_largest([&](double rho) { return density_equation(model, n_nl, rho); }, seed / 10.0,
                       seed * 1e3, "network density threshold");
}

ThresholdResult network_range_threshold(const Shadowing& shadowing, double rho_l, double n_nl) {
  check_count(n_nl);
  const double seed = single_node_range_threshold(shadowing, rho_l);
  return solve_largest([&](double d) { return range_equation(shadowing, rho_l, n_nl, d); }, seed / 10.0,
                       seed * 1e3, "network range threshold");
}

double asymptotic_gamma(const ChannelModel& model, double radius) {
  require(std::isfinite(radius) && radius > 0.0, "radius must be finite and > 0");
  const double ratio = model.d_max() / radius;
  return ratio * ratio * model.shadowing().coverage_gain();
}

double dense_network_p0(const ChannelModel& model, double radius, double xi) {
  require(xi >= 0.0 && xi <= 1.0, "xi must lie in [0, 1]");
  if (xi == 1.0) return 0.0;
  return (1.0 - xi) / asymptotic_gamma(model, radius);
}

std::vector<TrajectoryPoint> dense_network_localization_limit(const GrowthSpec& spec, double gamma,
                                                              const std::vector<double>& n_grid) {
  spec.validate();
  require(std::isfinite(gamma) && gamma > 0.0, "gamma must be finite and > 0");
  std::vector<TrajectoryPoint> out;
  out.reserve(n_grid.size());
  double prev = 1.0;
  for (double n : n_grid) {
    require(std::isfinite(n) && n > prev, "n grid must be increasing and > 1");
    prev = n;
    TrajectoryPoint pt;
    pt.n = n;
    pt.n_l = spec.anchors(n);
    pt.n_nl = spec.targets(n);
    require(pt.n_l >= 0.0, "anchor count must be >= 0 (ln of targets below 1?)");
    pt.lambda = gamma * pt.n_l;
    pt.p_network = analytic::network_localization_probability(pt.lambda, pt.n_nl);
    pt.expected_failures = analytic::failure_probability(pt.lambda) * pt.n_nl;
    out.push_back(pt);
  }
  return out;
}

double theorem2_required_range(const Shadowing& shadowing, double rho_l, double omega) {
  require(std::isfinite(omega) && omega > 0.0, "omega must be finite and > 0");
  return std::sqrt(omega / range_gain(shadowing, rho_l));
}

}  // namespace thresholds
}  // namespace locprob
