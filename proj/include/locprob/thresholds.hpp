// Copyright 2026 The locprob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "locprob/channel.hpp"
#include "locprob/root_finding.hpp"

namespace locprob {

/// A threshold located by root finding, with solver diagnostics.
struct ThresholdResult {
  double value = 0.0;
  double residual = 0.0;  ///< |defining equation| at `value`
  int iterations = 0;
  roots::Bracket bracket;  ///< scan cell containing `value`
  std::vector<roots::Bracket> sign_changes;  ///< every scan cell with a sign change
};

enum class GrowthRegime {
  kLogAnchors,     ///< N_L = p ln n, N_NL = q n^(1-xi); xi = 1 gives bounded N_NL
  kLogOfTargets,   ///< N_NL = q n^(1-xi), N_L = p ln N_NL
  kLinearAnchors,  ///< N_L = p n, N_NL = q n^t
};

/// Orders of growth of the node counts with the asymptotic parameter n.
struct GrowthSpec {
  double xi = 0.0;
  double p = 1.0;
  double q = 1.0;
  double t = 1.0;
  GrowthRegime regime = GrowthRegime::kLogAnchors;

  void validate() const;
  double anchors(double n) const;
  double targets(double n) const;
};

struct TrajectoryPoint {
  double n = 0.0;
  double n_l = 0.0;
  double n_nl = 0.0;
  double lambda = 0.0;
  double p_network = 0.0;
  double expected_failures = 0.0;  ///< X(lambda) * N_NL, the quantity driven to zero
};

namespace thresholds {

/// Bound on |defining equation| at every solved threshold.
inline constexpr double kResidualTolerance = 1e-10;

/// pi d_max^2 e^{eta^2/alpha^2}: lambda_NL per unit L-node density.
double density_gain(const ChannelModel& model);
/// rho_l pi e^{eta^2/alpha^2}: lambda_NL per unit d_max^2.
double range_gain(const Shadowing& shadowing, double rho_l);

/// Inflection of P(E_L) in rho_l, where lambda_NL = 2.
double single_node_density_threshold(const ChannelModel& model);

/// Inflection of P(E_L) in d_max, where lambda_NL = 5/2.
double single_node_range_threshold(const Shadowing& shadowing, double rho_l);

/// The d_max at which `rho_l` is the density threshold (lambda_NL = 2).
double range_for_density_threshold(const Shadowing& shadowing, double rho_l);

/// d^2 P_N / d rho_l^2 (P(E_L) for n_nl = 1).
double density_curvature(const ChannelModel& model, double n_nl, double rho_l);
/// d^2 P_N / d d_max^2 at fixed rho_l.
double range_curvature(const Shadowing& shadowing, double rho_l, double n_nl, double d_max);

/// 2 - lambda + lambda^3 e^{-lambda} (N-1) / (2 Q), lambda = gamma_1 rho_l.
/// Shares its zeros with density_curvature.
double density_equation(const ChannelModel& model, double n_nl, double rho_l);
/// 5 - 2 lambda + lambda^3 e^{-lambda} (N-1) / Q, lambda = gamma_2 d^2.
double range_equation(const Shadowing& shadowing, double rho_l, double n_nl, double d_max);

/// Largest inflection of P_N(E_L) in rho_l. Throws BracketingError if the
/// scan over [rho_t/10, 1e3 rho_t] finds no sign change.
ThresholdResult network_density_threshold(const ChannelModel& model, double n_nl);

/// Largest inflection of P_N(E_L) in d_max, scanning [d_t/10, 1e3 d_t].
ThresholdResult network_range_threshold(const Shadowing& shadowing, double rho_l, double n_nl);

/// (d_max/R)^2 e^{eta^2/alpha^2}.
double asymptotic_gamma(const ChannelModel& model, double radius);

/// Critical p for N_L = p ln n: (R/d_max)^2 (1 - xi) e^{-eta^2/alpha^2}.
/// xi = 1 (bounded N_NL) returns 0: any diverging N_L suffices.
double dense_network_p0(const ChannelModel& model, double radius, double xi);

/// P_N along n for counts growing per `spec`, with lambda = gamma N_L.
std::vector<TrajectoryPoint> dense_network_localization_limit(const GrowthSpec& spec, double gamma,
                                                              const std::vector<double>& n_grid);

/// d_max that makes lambda_NL = omega at density rho_l.
double theorem2_required_range(const Shadowing& shadowing, double rho_l, double omega);

}  // namespace thresholds
}  // namespace locprob
