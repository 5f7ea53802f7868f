// Copyright 2026 The locprob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <numbers>

namespace locprob {

class Rng;

/// 10 / (sqrt(2) ln 10): converts a dB-scaled Gaussian into an erf argument.
inline constexpr double kAlpha = 10.0 / (std::numbers::sqrt2 * std::numbers::ln10);

/// Log-normal shadowing statistics without a link budget.
///
/// Everything that depends only on sigma_s and n_p lives here; range
/// thresholds are solved for d_max with these held fixed.
class Shadowing {
 public:
  /// sigma_s in dB (>= 0), n_p > 0. Throws ParameterError otherwise.
  Shadowing(double sigma_s, double n_p);

  double sigma_s() const { return sigma_s_; }
  double n_p() const { return n_p_; }
  /// sigma_s / n_p.
  double eta() const { return eta_; }
  /// e^{eta^2/alpha^2}: area gain of the average coverage disk due to shadowing.
  double coverage_gain() const { return coverage_gain_; }
  bool is_hard_disk() const { return sigma_s_ == 0.0; }

 private:
  double sigma_s_;
  double n_p_;
  double eta_;
  double coverage_gain_;
};

/// Shadowing plus link budget. Immutable; safe to share across threads.
class ChannelModel {
 public:
  /// sigma_s >= 0 dB, n_p > 0, beta_th > 0 dB.
  ChannelModel(double sigma_s, double n_p, double beta_th);

  /// Builds the model whose average range is `d_max` (> 1 m, i.e. beta_th > 0).
  static ChannelModel from_d_max(double sigma_s, double n_p, double d_max);

  const Shadowing& shadowing() const { return shadowing_; }
  double sigma_s() const { return shadowing_.sigma_s(); }
  double n_p() const { return shadowing_.n_p(); }
  double beta_th() const { return beta_th_; }
  double alpha() const { return kAlpha; }
  double eta() const { return shadowing_.eta(); }
  double d_max() const { return d_max_; }

  /// Probability that an NL-node and an L-node at distance `d` share a link.
  ///
  /// 0.5 erfc((alpha/eta) ln(d/d_max)) for sigma_s > 0. The hard-disk model
  /// (sigma_s = 0) returns 1 inside d_max, 0 outside and 1/2 exactly at d_max.
  /// d = 0 yields 1. Throws ParameterError for negative or NaN `d`.
  double link_probability(double d) const;

 private:
  Shadowing shadowing_;
  double beta_th_;
  double d_max_;
};

/// One Bernoulli link draw at distance `d`. Consumes exactly one uniform.
bool sample_link(const ChannelModel& model, double d, Rng& rng);

}  // namespace locprob
