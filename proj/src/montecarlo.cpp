// Copyright 2026 The locprob Authors.
// SPDX-License-Identifier: Apache-2.0

#include "locprob/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "locprob/error.hpp"
#include "locprob/random.hpp"

namespace locprob {

using detail::require;

namespace {

// Upper bound on the mean number of generated L-nodes per trial.
constexpr double kMaxMeanPoints = 5e7;
// Bins of the squared-distance table bounding the link probability.
constexpr std::size_t kBoundBins = 4096;
constexpr std::uint64_t kLinkStream = 0x6c696e6b73ULL;

}  // namespace

Interval wilson_interval(std::int64_t events, std::int64_t samples, double z) {
  require(samples > 0 && events >= 0 && events <= samples, "invalid Wilson interval counts");
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(events) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::clamp(std::min(center - half, p), 0.0, 1.0), std::clamp(std::max(center + half, p), 0.0, 1.0)};
}

void SimConfig::validate() const {
  deployment.validate();
  require(trials >= 1, "trials must be >= 1");
  require(anchor_requirement >= 0, "anchor requirement must be >= 0");
  require(truncation_tolerance > 0.0 && truncation_tolerance < 1.0, "truncation tolerance must lie in (0, 1)");
  if (margin_factor) {
    require(std::isfinite(*margin_factor) && *margin_factor >= 1.0, "margin factor must be finite and >= 1");
    const double margin = deployment.radius * (*margin_factor - 1.0);
    require(margin >= cutoff_radius(),
            "margin factor " + std::to_string(*margin_factor) + " leaves a border margin of " + std::to_string(margin) +
                " m, below the " + std::to_string(cutoff_radius()) + " m needed for truncation tolerance " +
                std::to_string(truncation_tolerance));
  }
  const double h = half_width();
  require(deployment.rho_l * 4.0 * h * h <= kMaxMeanPoints,
          "generation square would hold " + std::to_string(deployment.rho_l * 4.0 * h * h) + " L-nodes on average");
  require(deployment.mean_nl_count() <= kMaxMeanPoints, "too many NL-nodes per trial");
}

double SimConfig::cutoff_radius() const { return mc::truncation_radius(channel, truncation_tolerance); }

double SimConfig::half_width() const {
  if (margin_factor) return deployment.radius * *margin_factor;
  return deployment.radius + cutoff_radius();
}

namespace mc {
namespace {

// Counts links of NL-nodes to L-nodes within the cutoff using a uniform grid.
//
// Cells are visited in order of increasing lower-bound distance so a
// saturating count can stop early. Each candidate pair consumes one uniform;
// the exact link probability is only evaluated when the uniform falls below a
// tabulated upper bound for the pair's squared distance.
class AnchorCounter {
 public:
  explicit AnchorCounter(const SimConfig& config)
      : model_(config.channel), cutoff_(config.cutoff_radius()), cutoff2_(cutoff_ * cutoff_) {
    bin_width_ = cutoff2_ / kBoundBins;
    bound_.resize(kBoundBins + 1);
    for (std::size_t i = 0; i <= kBoundBins; ++i) bound_[i] = model_.link_probability(std::sqrt(i * bin_width_));
  }

  std::vector<int> count(const PointProcessRealization& real, int stop_at) const {
    std::vector<int> counts(real.nl_points.size(), 0);
    if (stop_at <= 0 || real.nl_points.empty()) return counts;

    const double h = real.half_width;
    // Cells of about a quarter cutoff, but never many more than L-nodes.
    const int by_points = static_cast<int>(std::ceil(std::sqrt(2.0 * static_cast<double>(real.l_points.size()))));
    int side = static_cast<int>(std::ceil(2.0 * h / (0.25 * cutoff_)));
    side = std::clamp(side, 1, std::clamp(by_points, 4, 1024));
    const double cell = 2.0 * h / side;
    const auto cell_of = [&](double v) { return std::clamp(static_cast<int>((v + h) / cell), 0, side - 1); };

    // Counting sort of L-nodes into cells, stable in generation order.
    const std::size_t cells = static_cast<std::size_t>(side) * side;
    std::vector<std::uint32_t> start(cells + 1, 0);
    std::vector<std::uint32_t> cell_index(real.l_points.size());
    for (std::size_t i = 0; i < real.l_points.size(); ++i) {
      const auto& p = real.l_points[i];
      cell_index[i] = static_cast<std::uint32_t>(cell_of(p.y) * side + cell_of(p.x));
      ++start[cell_index[i] + 1];
    }
    for (std::size_t c = 0; c < cells; ++c) start[c + 1] += start[c];
    std::vector<double> xs(real.l_points.size()), ys(real.l_points.size());
    {
      auto fill = start;
      for (std::size_t i = 0; i < real.l_points.size(); ++i) {
        const auto slot = fill[cell_index[i]]++;
        xs[slot] = real.l_points[i].x;
        ys[slot] = real.l_points[i].y;
      }
    }

    struct Offset {
      int dx, dy;
      double lower2;
    };
    std::vector<Offset> offsets;
    const int reach = static_cast<int>(std::ceil(cutoff_ / cell)) + 1;
    for (int dy = -reach; dy <= reach; ++dy) {
      for (int dx = -reach; dx <= reach; ++dx) {
        const double gx = std::max(std::abs(dx) - 1, 0) * cell;
        const double gy = std::max(std::abs(dy) - 1, 0) * cell;
        const double lower2 = gx * gx + gy * gy;
        if (lower2 <= cutoff2_) offsets.push_back({dx, dy, lower2});
      }
    }
    std::stable_sort(offsets.begin(), offsets.end(),
                     [](const Offset& a, const Offset& b) { return a.lower2 < b.lower2; });

    Rng rng(mix64(real.trial_seed ^ kLinkStream));
    const double inv_bin = 1.0 / bin_width_;
    for (std::size_t j = 0; j < real.nl_points.size(); ++j) {
      const Point node = real.nl_points[j];
      const int cx = cell_of(node.x);
      const int cy = cell_of(node.y);
      int links = 0;
      for (const auto& off : offsets) {
        const int gx = cx + off.dx;
        const int gy = cy + off.dy;
        if (gx < 0 || gy < 0 || gx >= side || gy >= side) continue;
        const std::size_t c = static_cast<std::size_t>(gy) * side + gx;
        for (std::uint32_t i = start[c]; i < start[c + 1]; ++i) {
          const double ddx = xs[i] - node.x;
          const double ddy = ys[i] - node.y;
          const double d2 = ddx * ddx + ddy * ddy;
          if (d2 > cutoff2_) continue;
          const double u = rng.uniform();
          const auto bin = std::min(kBoundBins, static_cast<std::size_t>(d2 * inv_bin));
          if (u < bound_[bin] && u < model_.link_probability(std::sqrt(d2))) ++links;
        }
        if (links >= stop_at) break;
      }
      counts[j] = links;
    }
    return counts;
  }

 private:
  ChannelModel model_;
  double cutoff_;
  double cutoff2_;
  double bin_width_;
  std::vector<double> bound_;
};

struct TrialOutcome {
  std::int64_t nodes = 0;
  std::int64_t localized = 0;
};

std::vector<TrialOutcome> run_trials(const SimConfig& config) {
  config.validate();
  const AnchorCounter counter(config);
  const int k = config.anchor_requirement;
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(config.trials));
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t t = next++; t < config.trials; t = next++) {
      const auto real = sample_realization(config, t);
      const auto counts = counter.count(real, k);
      TrialOutcome out;
      out.nodes = static_cast<std::int64_t>(counts.size());
      out.localized = std::count_if(counts.begin(), counts.end(), [k](int c) { return c >= k; });
      outcomes[static_cast<std::size_t>(t)] = out;
    }
  };
  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::int64_t>(threads, config.trials));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return outcomes;
}

}  // namespace

double truncation_radius(const ChannelModel& model, double tolerance) {
  require(tolerance > 0.0 && tolerance < 1.0, "truncation tolerance must lie in (0, 1)");
  if (model.shadowing().is_hard_disk()) return model.d_max();
  double lo = 0.0;
  double hi = model.d_max();
  while (analytic::unbounded_tail_fraction(model, hi) > tolerance) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (analytic::unbounded_tail_fraction(model, mid) > tolerance) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

PointProcessRealization sample_realization(const SimConfig& config, std::int64_t trial_index) {
  require(trial_index >= 0, "trial index must be >= 0");
  PointProcessRealization real;
  real.trial_seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(trial_index));
  real.half_width = config.half_width();
  Rng rng(real.trial_seed);

  const double h = real.half_width;
  const auto n_l = rng.poisson(config.deployment.rho_l * 4.0 * h * h);
  real.l_points.resize(static_cast<std::size_t>(n_l));
  for (auto& p : real.l_points) {
    p.x = (2.0 * rng.uniform() - 1.0) * h;
    p.y = (2.0 * rng.uniform() - 1.0) * h;
  }

  const double radius = config.deployment.radius;
  const auto n_nl = rng.poisson(config.deployment.mean_nl_count());
  real.nl_points.resize(static_cast<std::size_t>(n_nl));
  for (auto& p : real.nl_points) {
    const double r = radius * std::sqrt(rng.uniform());
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    p.x = r * std::cos(theta);
    p.y = r * std::sin(theta);
  }
  return real;
}

std::vector<int> count_anchors(const PointProcessRealization& realization, const SimConfig& config) {
  config.validate();
  return AnchorCounter(config).count(realization, std::numeric_limits<int>::max());
}

MonteCarloEstimate estimate_node_localization(const SimConfig& config) {
  const auto outcomes = run_trials(config);
  MonteCarloEstimate est;
  est.trials = config.trials;
  est.master_seed = config.master_seed;
  for (const auto& o : outcomes) {
    est.samples += o.nodes;
    est.events += o.localized;
    if (o.nodes == 0) ++est.vacuous_trials;
  }
  if (est.samples == 0) {
    throw DegenerateSampleError("no NL-node was generated in " + std::to_string(config.trials) +
                                " trials (mean per trial " + std::to_string(config.deployment.mean_nl_count()) +
                                ")");
  }
  est.estimate = static_cast<double>(est.events) / static_cast<double>(est.samples);
  const auto ci = wilson_interval(est.events, est.samples);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  return est;
}

MonteCarloEstimate estimate_network_localization(const SimConfig& config) {
  const auto outcomes = run_trials(config);
  MonteCarloEstimate est;
  est.trials = config.trials;
  est.samples = config.trials;
  est.master_seed = config.master_seed;
  for (const auto& o : outcomes) {
    if (o.localized == o.nodes) ++est.events;
    if (o.nodes == 0) ++est.vacuous_trials;
  }
  est.estimate = static_cast<double>(est.events) / static_cast<double>(est.samples);
  const auto ci = wilson_interval(est.events, est.samples);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  return est;
}

}  // namespace mc
}  // namespace locprob
