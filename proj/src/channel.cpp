// Copyright 2026 The locprob Authors.
// SPDX-License-Identifier: Apache-2.0

#include "locprob/channel.hpp"

#include <cmath>
#include <string>

#include "locprob/error.hpp"
#include "locprob/random.hpp"

namespace locprob {

using detail::require;

Shadowing::Shadowing(double sigma_s, double n_p) : sigma_s_(sigma_s), n_p_(n_p) {
  require(std::isfinite(sigma_s) && sigma_s >= 0.0,
          "sigma_s must be finite and >= 0, got " + std::to_string(sigma_s));
  require(std::isfinite(n_p) && n_p > 0.0, "n_p must be finite and > 0, got " + std::to_string(n_p));
  eta_ = sigma_s_ / n_p_;
  const double ratio = eta_ / kAlpha;
  coverage_gain_ = std::exp(ratio * ratio);
  require(std::isfinite(coverage_gain_), "sigma_s / n_p too large: coverage gain overflows");
}

ChannelModel::ChannelModel(double sigma_s, double n_p, double beta_th)
    : shadowing_(sigma_s, n_p), beta_th_(beta_th) {
  require(std::isfinite(beta_th) && beta_th > 0.0,
          "beta_th must be finite and > 0 dB, got " + std::to_string(beta_th));
  d_max_ = std::pow(10.0, beta_th_ / (10.0 * n_p));
  require(std::isfinite(d_max_), "d_max overflows for beta_th = " + std::to_string(beta_th));
}

ChannelModel ChannelModel::from_d_max(double sigma_s, double n_p, double d_max) {
  require(std::isfinite(d_max) && d_max > 1.0,
          "d_max must be finite and > 1 m (beta_th > 0), got " + std::to_string(d_max));
  require(std::isfinite(n_p) && n_p > 0.0, "n_p must be finite and > 0");
  ChannelModel model(sigma_s, n_p, 10.0 * n_p * std::log10(d_max));
  // Keep the caller's d_max bit-exact rather than the pow/log10 round trip.
  model.d_max_ = d_max;
  return model;
}

double ChannelModel::link_probability(double d) const {
  require(d >= 0.0, "distance must be >= 0, got " + std::to_string(d));
  if (d == 0.0) return 1.0;
  if (shadowing_.is_hard_disk()) {
    if (d < d_max_) return 1.0;
    if (d > d_max_) return 0.0;
    return 0.5;
  }
  return 0.5 * std::erfc(kAlpha / shadowing_.eta() * std::log(d / d_max_));
}

bool sample_link(const ChannelModel& model, double d, Rng& rng) {
  const double p = model.link_probability(d);
  return rng.uniform() < p;
}

}  // namespace locprob
