// Copyright 2026 The locprob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "locprob/analytic.hpp"
#include "locprob/channel.hpp"

namespace locprob {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// One Monte Carlo experiment.
///
/// L-nodes are generated on the square [-h, h]^2 with h = R * margin_factor;
/// NL-nodes only inside the disk of radius R. When margin_factor is unset,
/// h = R + m with m the smallest radius whose neighbor-mean tail beyond it is
/// below truncation_tolerance * lambda_NL, so border NL-nodes see every
/// anchor that matters. Pairs farther apart than m are never linked.
struct SimConfig {
  Deployment deployment;
  ChannelModel channel;
  std::int64_t trials = 1;
  std::uint64_t master_seed = 0;
  std::optional<double> margin_factor;
  int anchor_requirement = 3;
  double truncation_tolerance = 1e-3;
  /// Worker threads; 0 uses std::thread::hardware_concurrency(). Never affects results.
  unsigned threads = 0;

  void validate() const;
  /// Link cutoff distance m.
  double cutoff_radius() const;
  /// Half-width h of the generation square.
  double half_width() const;
};

struct PointProcessRealization {
  std::vector<Point> l_points;   ///< in [-h, h]^2
  std::vector<Point> nl_points;  ///< in the disk of radius R
  std::uint64_t trial_seed = 0;
  double half_width = 0.0;
};

struct MonteCarloEstimate {
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::int64_t trials = 0;
  std::int64_t events = 0;   ///< localized nodes (node level) or localized networks
  std::int64_t samples = 0;  ///< pooled NL-nodes (node level) or trials (network level)
  std::int64_t vacuous_trials = 0;  ///< trials with no NL-node
  std::uint64_t master_seed = 0;
};

/// 95% Wilson score interval for `events` successes out of `samples`.
struct Interval {
  double low = 0.0;
  double high = 1.0;
};
Interval wilson_interval(std::int64_t events, std::int64_t samples, double z = 1.959963984540054);

namespace mc {

/// Smallest r with lambda_NL - lambda_NL,r <= tolerance * lambda_NL.
double truncation_radius(const ChannelModel& model, double tolerance);

/// Draws trial `trial_index`; a pure function of (config, trial_index).
PointProcessRealization sample_realization(const SimConfig& config, std::int64_t trial_index);

/// Number of linked L-nodes for each NL-node of `realization`. Link draws use
/// a stream derived from the realization's trial seed.
std::vector<int> count_anchors(const PointProcessRealization& realization, const SimConfig& config);

/// Fraction of pooled NL-nodes with at least k links. Throws
/// DegenerateSampleError when no trial produced an NL-node.
MonteCarloEstimate estimate_node_localization(const SimConfig& config);

/// Fraction of trials in which every NL-node has at least k links. A trial
/// without NL-nodes counts as localized and is tallied in vacuous_trials.
MonteCarloEstimate estimate_network_localization(const SimConfig& config);

}  // namespace mc
}  // namespace locprob
