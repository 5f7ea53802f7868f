// Copyright 2026 The locprob Authors.
// SPDX-License-Identifier: Apache-2.0

// Acceptance checks, one per criterion. `acceptance N` runs criterion N and
// exits non-zero on failure; without arguments every criterion runs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "locprob/analytic.hpp"
#include "locprob/cli.hpp"
#include "locprob/montecarlo.hpp"
#include "locprob/thresholds.hpp"
#include "oracles.hpp"

using namespace locprob;
namespace th = locprob::thresholds;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

struct GridCase {
  double sigma, np, beta, ratio;
};

std::vector<GridCase> neighbor_grid() {
  std::vector<GridCase> grid;
  for (double sigma : {0.0, 0.5, 2.0, 4.0, 6.0, 9.0, 12.0}) {
    for (double np : {2.0, 3.0, 4.0}) {
      for (double beta : {20.0, 35.0, 50.0}) {
        for (double ratio : {0.5, 1.0, 2.0, 5.0, 50.0}) grid.push_back({sigma, np, beta, ratio});
      }
    }
  }
  return grid;
}

constexpr double kRho = 0.01;

Verdict criterion1() {
  const auto start = std::chrono::steady_clock::now();
  const auto grid = neighbor_grid();
  double worst = 0.0;
  for (const auto& c : grid) {
    const ChannelModel model(c.sigma, c.np, c.beta);
    const double radius = c.ratio * model.d_max();
    const double closed = analytic::expected_neighbors_bounded(model, kRho, radius);
    const double quad = analytic::quadrature_oracle(model, kRho, radius);
    worst = std::max(worst, std::abs(closed - quad) / quad);
  }
  const double elapsed = seconds_since(start);
  return {worst < 1e-8 && elapsed < 10.0 && grid.size() >= 100,
          fmt("%zu combinations, max relative error %.3g (tol 1e-8), %.2f s (limit 10 s)", grid.size(), worst,
              elapsed)};
}

Verdict criterion2() {
  // Largest eta that passes and smallest eta that fails, per sub-claim.
  struct Split {
    double pass_max = 0.0;
    double fail_min = std::numeric_limits<double>::infinity();
    int failures = 0;
    int cases = 0;
    double worst = 0.0;
    void add(double eta, double gap, double tol, bool binding) {
      ++cases;
      worst = std::max(worst, gap);
      if (gap >= tol) ++failures;
      if (!binding) return;
      if (gap < tol) {
        pass_max = std::max(pass_max, eta);
      } else {
        fail_min = std::min(fail_min, eta);
      }
    }
  } near, far;
  double needed_1e2 = 0.0, needed_1e10 = 0.0;
  for (const auto& c : neighbor_grid()) {
    const ChannelModel model(c.sigma, c.np, c.beta);
    const double lim = analytic::expected_neighbors_unbounded(model, kRho);
    auto gap_at = [&](double multiple) {
      return std::abs(analytic::expected_neighbors_bounded(model, kRho, multiple * model.d_max()) - lim) / lim;
    };
    // The gap falls with R, so R = 5 d_max decides the eta split.
    if (c.ratio >= 5.0) near.add(model.eta(), gap_at(c.ratio), 1e-2, c.ratio == 5.0);
    if (c.ratio == 5.0) far.add(model.eta(), gap_at(100.0), 1e-10, true);
    needed_1e2 = std::max(needed_1e2, mc::truncation_radius(model, 1e-2) / model.d_max());
    needed_1e10 = std::max(needed_1e10, mc::truncation_radius(model, 1e-10) / model.d_max());
  }
  return {near.failures == 0 && far.failures == 0,
          fmt("R >= 5 d_max: %d of %d cases have gap >= 1e-2 (worst %.3g); R = 5 d_max passes for eta <= %.3g and "
              "fails from eta = %.3g. R = 100 d_max: %d of %d channels have gap >= 1e-10 (worst %.3g); passes for "
              "eta <= %.3g, fails from eta = %.3g. This grid needs R = %.1f d_max for 1e-2 and %.0f d_max for 1e-10",
              near.failures, near.cases, near.worst, near.pass_max, near.fail_min, far.failures, far.cases, far.worst,
              far.pass_max, far.fail_min, needed_1e2, needed_1e10)};
}

Verdict criterion3() {
  double worst = 0.0;
  for (double lambda : {0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0, 20.0}) {
    worst = std::max(worst, std::abs(analytic::single_node_localization_probability(lambda) -
                                     oracles::poisson_upper_tail(lambda, 3)));
  }
  return {worst < 1e-12, fmt("max absolute error %.3g over 8 lambda values (tol 1e-12)", worst)};
}

Verdict criterion4() {
  const auto start = std::chrono::steady_clock::now();
  struct Curve {
    double sigma, np, beta;
  };
  const Curve curves[] = {{4.0, 2.0, 20.0}, {9.0, 2.0, 30.0}, {4.0, 4.0, 30.0}, {9.0, 4.0, 20.0}};
  const double lambdas[] = {1.0, 2.0, 3.0, 5.0, 8.0};
  int covered = 0, cells = 0;
  std::int64_t min_samples = std::numeric_limits<std::int64_t>::max();
  std::string misses;
  for (const auto& c : curves) {
    const ChannelModel model(c.sigma, c.np, c.beta);
    const double gain = th::density_gain(model);
    for (double lambda : lambdas) {
      // Two NL-nodes per trial, typically several d_max apart, keep pooled nodes nearly independent.
      const double radius = 10.0 * model.d_max();
      const double trials = 10300.0;
      const SimConfig cfg{.deployment = {lambda / gain, 2.0 / (std::numbers::pi * radius * radius), radius},
                          .channel = model,
                          .trials = static_cast<std::int64_t>(trials),
                          .master_seed = 4000u + static_cast<unsigned>(cells),
                          .margin_factor = std::nullopt,
                          .anchor_requirement = 3,
                          .truncation_tolerance = 1e-3,
                          .threads = 0};
      const auto est = mc::estimate_node_localization(cfg);
      const double exact = analytic::single_node_localization_probability(lambda);
      ++cells;
      min_samples = std::min(min_samples, est.samples);
      if (exact >= est.ci_low && exact <= est.ci_high) {
        ++covered;
      } else {
        misses += fmt(" (sigma %g, n_p %g, beta %g, lambda %g: %.4f vs [%.4f, %.4f])", c.sigma, c.np, c.beta,
                      lambda, exact, est.ci_low, est.ci_high);
      }
    }
  }
  const double elapsed = seconds_since(start);
  return {covered >= 18 && min_samples >= 20000 && elapsed < 120.0,
          fmt("%d of %d cells cover the analytic value (need 18), min pooled NL-nodes %lld (need 2e4), %.1f s (limit 120 s)",
              covered, cells, static_cast<long long>(min_samples), elapsed) +
              (misses.empty() ? "" : "; misses:" + misses)};
}

double curvature_zero(const std::function<double(double)>& f, double x0) {
  const double h = std::pow(std::numeric_limits<double>::epsilon(), 0.25);
  auto g = [&](double x) { return oracles::second_difference(f, x, h * x); };
  return oracles::bisect(g, 0.8 * x0, 1.25 * x0);
}

Verdict criterion5() {
  double worst_rho = 0.0, worst_d = 0.0, worst_lambda = 0.0;
  int cases = 0;
  for (double sigma : {0.0, 2.0, 4.0, 9.0, 12.0}) {
    for (double np : {2.0, 3.0, 4.0}) {
      for (double beta : {20.0, 40.0}) {
        const ChannelModel model(sigma, np, beta);
        const double gain = th::density_gain(model);
        const double rho_t = th::single_node_density_threshold(model);
        const double fd_rho = curvature_zero(
            [&](double r) { return oracles::poisson_upper_tail(gain * r, 3); }, rho_t);
        worst_rho = std::max(worst_rho, std::abs(fd_rho / rho_t - 1.0));
        worst_lambda = std::max(worst_lambda, std::abs(analytic::expected_neighbors_unbounded(model, rho_t) - 2.0));
        for (double rho : {1e-3, 0.1}) {
          const double g2 = th::range_gain(model.shadowing(), rho);
          const double d_t = th::single_node_range_threshold(model.shadowing(), rho);
          const double fd_d = curvature_zero([&](double d) { return oracles::poisson_upper_tail(g2 * d * d, 3); }, d_t);
          worst_d = std::max(worst_d, std::abs(fd_d / d_t - 1.0));
        }
        ++cases;
      }
    }
  }
  return {worst_rho < 1e-6 && worst_d < 1e-6 && worst_lambda < 1e-12,
          fmt("%d channels: rho threshold rel err %.3g, d_max threshold rel err %.3g (tol 1e-6), "
              "|lambda(rho_t) - 2| = %.3g (tol 1e-12)",
              cases, worst_rho, worst_d, worst_lambda)};
}

Verdict criterion6() {
  double worst = 0.0;
  int solved = 0;
  for (double sigma : {0.0, 4.0, 8.0, 12.0}) {
    for (double np : {2.0, 4.0}) {
      for (double n : {2.0, 100.0, 3141.5926535897929, 1e6}) {
        const ChannelModel model(sigma, np, 40.0);
        const auto r = th::network_density_threshold(model, n);
        worst = std::max(worst, std::abs(th::density_equation(model, n, r.value)));
        for (double rho : {1e-3, 0.1}) {
          const auto d = th::network_range_threshold(model.shadowing(), rho, n);
          worst = std::max(worst, std::abs(th::range_equation(model.shadowing(), rho, n, d.value)));
          ++solved;
        }
        ++solved;
      }
    }
  }
  const ChannelModel scenario(4.0, 2.0, 40.0);
  const double n = 0.1 * std::numbers::pi * 100.0 * 100.0;
  const double ratio = th::network_density_threshold(scenario, n).value / th::single_node_density_threshold(scenario);
  return {worst < 1e-10 && ratio >= 5.0 && ratio <= 50.0,
          fmt("%d roots, max plug-back residual %.3g (tol 1e-10); example network/node density threshold ratio %.4f "
              "(range [5, 50])",
              solved, worst, ratio)};
}

Verdict criterion7() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_lambda(std::log(1e-2), std::log(700.0));
  std::uniform_real_distribution<double> log_n(0.0, std::log(1e9));
  int violations = 0;
  double worst = 0.0;
  const int draws = 10000;
  // Slack of a few ulps for the two independently rounded sides.
  const double slack = 8.0 * std::numeric_limits<double>::epsilon();
  for (int i = 0; i < draws; ++i) {
    const double lambda = std::exp(log_lambda(rng));
    const double n = std::floor(std::exp(log_n(rng)));
    const double x = analytic::failure_probability(lambda);
    const double p = analytic::network_localization_probability(lambda, n);
    const double lower = 1.0 - x * n;
    const double upper = std::exp(-x * n);
    const double excess = std::max(lower - p, p - upper);
    worst = std::max(worst, excess);
    if (lower - p > slack || p - upper > slack * upper) ++violations;
  }
  return {violations == 0, fmt("%d draws over lambda in [0.01, 700], N in [1, 1e9]: %d violations, max excess %.3g",
                               draws, violations, worst)};
}

Verdict criterion8() {
  const ChannelModel model(9.0, 4.0, 30.0);
  const double gamma = th::asymptotic_gamma(model, 60.0);
  const double p0 = th::dense_network_p0(model, 60.0, 0.51);
  auto p_network = [&](double p, double n) {
    const GrowthSpec spec{0.51, p, 1.0, 1.0, GrowthRegime::kLogAnchors};
    return th::dense_network_localization_limit(spec, gamma, {n}).front().p_network;
  };
  auto level = [&](double target, double n) {
    return oracles::bisect([&](double p) { return p_network(p, n) - target; }, 1e-3, 1e4);
  };
  std::string trace;
  bool shrinking = true, approaching = true;
  double prev_width = std::numeric_limits<double>::infinity();
  double prev_offset = std::numeric_limits<double>::infinity();
  for (double n : {1e3, 1e4, 1e6, 1e9}) {
    const double width = level(0.99, n) - level(0.01, n);
    const double mid = level(0.5, n);
    shrinking = shrinking && width < prev_width;
    approaching = approaching && std::abs(mid - p0) < prev_offset;
    prev_width = width;
    prev_offset = std::abs(mid - p0);
    trace += fmt(" n=%g: width %.3f, midpoint %.3f;", n, width, mid);
  }
  return {shrinking && approaching,
          fmt("p0 = %.4f;", p0) + trace + (shrinking ? " width shrinks" : " width NOT monotone") +
              (approaching ? ", midpoint approaches p0" : ", midpoint does NOT approach p0")};
}

Verdict criterion9() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000;) {
    const double rho = std::exp(std::log(1e-4) + u(rng) * std::log(1e4));
    const double sigma = 12.0 * u(rng);
    const double np = 2.0 + 2.0 * u(rng);
    const double omega = std::exp(std::log(0.1) + u(rng) * std::log(500.0));
    const Shadowing sh(sigma, np);
    const double d = th::theorem2_required_range(sh, rho, omega);
    if (d <= 1.0) continue;  // below the smallest admissible d_max
    const auto model = ChannelModel::from_d_max(sigma, np, d);
    const double back = analytic::expected_neighbors_unbounded(model, rho);
    worst = std::max(worst, std::abs(back / omega - 1.0));
    ++i;
  }
  bool decreasing = true, ratio_converges = true;
  double prev = std::numeric_limits<double>::infinity(), prev_ratio_gap = prev;
  std::string trace;
  for (double n = 1e3; n <= 1e9 * 1.0001; n *= 10.0) {
    const double omega = std::log(n);
    const double count = n / std::pow(std::log(n), 3);
    const double xn = analytic::failure_probability(omega) * count;
    const double leading = 0.5 * count * omega * omega * std::exp(-omega);
    decreasing = decreasing && xn < prev;
    ratio_converges = ratio_converges && std::abs(xn / leading - 1.0) < prev_ratio_gap;
    prev = xn;
    prev_ratio_gap = std::abs(xn / leading - 1.0);
    trace += fmt(" %.3g", xn);
  }
  return {worst < 1e-12 && decreasing && ratio_converges,
          fmt("1000 round trips, max relative error %.3g (tol 1e-12); X*N along n = 1e3..1e9:", worst) + trace +
              (decreasing ? " (decreasing" : " (NOT decreasing") +
              (ratio_converges ? ", ratio to leading term -> 1)" : ", ratio to leading term not converging)")};
}

Verdict criterion10() {
  const std::vector<std::string> base = {"simulate",  "--level",  "node",  "--sigma-s", "4",     "--n-p",
                                         "2",         "--beta-th", "20",   "--rho-l",   "0.003,0.01", "--rho-nl",
                                         "0.002",     "--radius", "40",    "--trials",  "400",   "--seed",
                                         "12345"};
  auto run = [&](std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    std::string text = out.str(), kept;
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
      if (line.rfind("# timestamp=", 0) != 0) kept += line + "\n";
    }
    return std::make_pair(code, kept);
  };
  auto a = run(base);
  auto b = run(base);
  auto threaded = base;
  threaded.insert(threaded.end(), {"--threads", "3"});
  auto c = run(threaded);
  const bool same = a.first == 0 && b.first == 0 && a.second == b.second && a.second == c.second;
  return {same, fmt("two identical runs %s; a 3-thread run %s (%zu bytes compared, timestamp excluded)",
                    a.second == b.second ? "are byte-identical" : "DIFFER",
                    a.second == c.second ? "matches" : "DIFFERS", a.second.size())};
}

const std::vector<std::pair<const char*, std::function<Verdict()>>> kCriteria = {
    {"closed-form neighbor mean vs quadrature", criterion1},
    {"unbounded-limit convergence", criterion2},
    {"Poisson-tail oracle", criterion3},
    {"Monte Carlo vs analytic", criterion4},
    {"single-node thresholds vs finite differences", criterion5},
    {"network thresholds", criterion6},
    {"bound chain", criterion7},
    {"asymptotic transition", criterion8},
    {"required-range round trip", criterion9},
    {"simulation determinism", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty()) {
    for (int i = 1; i <= static_cast<int>(kCriteria.size()); ++i) which.push_back(i);
  }
  int failures = 0;
  for (int id : which) {
    if (id < 1 || id > static_cast<int>(kCriteria.size())) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    const auto& [name, check] = kCriteria[id - 1];
    const auto v = check();
    std::printf("[%s] criterion %d: %s: %s\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str());
    if (!v.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
