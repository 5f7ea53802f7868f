// Copyright 2026 The locprob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "locprob/channel.hpp"
#include "locprob/quadrature.hpp"

namespace locprob {

/// Two independent homogeneous Poisson processes observed on a disk.
struct Deployment {
  double rho_l = 0.0;   ///< L-node density, nodes/m^2
  double rho_nl = 0.0;  ///< NL-node density, nodes/m^2
  double radius = 0.0;  ///< disk radius R, m

  /// Throws ParameterError unless all fields are finite and positive.
  void validate() const;
  double area() const;
  double mean_l_count() const { return rho_l * area(); }
  double mean_nl_count() const { return rho_nl * area(); }
};

namespace analytic {

/// Largest neighbor mean for which e^{-lambda} is a normal double.
inline constexpr double kSaturationLambda = 745.0;

/// Mean number of L-node links of an NL-node counting only L-nodes within `radius`.
double expected_neighbors_bounded(const ChannelModel& model, double rho_l, double radius);

/// Mean number of L-node links over the whole plane: rho_l pi d_max^2 e^{eta^2/alpha^2}.
double expected_neighbors_unbounded(const ChannelModel& model, double rho_l);

/// (lambda_NL - lambda_NL,R) / lambda_NL, evaluated without cancellation.
double unbounded_tail_fraction(const ChannelModel& model, double radius);

/// Direct adaptive integration of 2 pi rho_l * int_0^R P(link | r) r dr.
///
/// Independent of the closed form; used to cross-check it. Throws
/// NumericalError if the integrator cannot reach `rel_tol`.
quadrature::Result integrate_neighbors(const ChannelModel& model, double rho_l, double radius,
                                       double rel_tol = 1e-10);
double quadrature_oracle(const ChannelModel& model, double rho_l, double radius);

/// P(d_v >= k) and its complement for d_v ~ Poisson(lambda).
struct PoissonTail {
  double success = 0.0;  ///< P(d_v >= k)
  double failure = 1.0;  ///< P(d_v < k), the X(lambda) of the network formula
  bool saturated = false;  ///< lambda > kSaturationLambda: success forced to 1, failure to 0
};

/// Both tails, each accurate to relative precision (no 1 - x cancellation).
PoissonTail poisson_tail(double lambda, int k = 3);

/// P(E_L) = 1 - e^{-lambda}(1 + lambda + lambda^2/2).
double single_node_localization_probability(double lambda);

/// X(lambda) = 1 - P(E_L).
double failure_probability(double lambda);

/// [1 - X(lambda)]^{n_nl}, evaluated in log space. `n_nl` may be non-integer.
double network_localization_probability(double lambda, double n_nl);

/// P_N(E_L) for a deployment, using lambda_NL and the mean NL count rho_nl pi R^2.
double network_localization_probability(const ChannelModel& model, const Deployment& deployment);

/// L-node density at which lambda_NL = 3.
double minimum_density(const ChannelModel& model);

}  // namespace analytic
}  // namespace locprob
