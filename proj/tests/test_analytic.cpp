// Copyright 2026 The locprob Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "locprob/analytic.hpp"
#include "locprob/error.hpp"
#include "oracles.hpp"

using locprob::ChannelModel;
using namespace locprob::analytic;

TEST_CASE("expected neighbors: hard disk") {
  const ChannelModel model(0.0, 2.0, 40.0);
  CHECK(expected_neighbors_bounded(model, 0.1, 300.0) == doctest::Approx(0.1 * std::numbers::pi * 1e4));
  CHECK(expected_neighbors_bounded(model, 0.1, 50.0) == doctest::Approx(0.1 * std::numbers::pi * 2500.0));
  CHECK(expected_neighbors_unbounded(model, 0.1) == doctest::Approx(0.1 * std::numbers::pi * 1e4));
  CHECK(quadrature_oracle(model, 0.1, 50.0) == doctest::Approx(0.1 * std::numbers::pi * 2500.0).epsilon(1e-12));
}

TEST_CASE("expected neighbors: reference values") {
  // 40-digit mpmath values of the closed form and of the direct integral.
  const ChannelModel model(4.0, 2.0, 40.0);
  CHECK(expected_neighbors_bounded(model, 0.1, 300.0) == doctest::Approx(4698.947202149601901).epsilon(1e-12));
  CHECK(quadrature_oracle(model, 0.1, 300.0) == doctest::Approx(4698.947202149601901).epsilon(1e-9));
  const ChannelModel short_range(4.0, 2.0, 20.0);
  CHECK(expected_neighbors_unbounded(short_range, 0.1) == doctest::Approx(48.01276090109932939).epsilon(1e-13));
  CHECK(expected_neighbors_unbounded(short_range, 0.2) ==
        doctest::Approx(2.0 * expected_neighbors_unbounded(short_range, 0.1)).epsilon(1e-15));
}

TEST_CASE("bounded neighbors approach the unbounded limit monotonically") {
  for (double sigma : {0.0, 2.0, 4.0, 9.0}) {
    const ChannelModel model(sigma, 3.0, 30.0);
    const double lim = expected_neighbors_unbounded(model, 0.05);
    double prev = 0.0;
    for (double k = 0.1; k <= 200.0; k *= 1.3) {
      const double v = expected_neighbors_bounded(model, 0.05, k * model.d_max());
      CHECK(v >= prev);
      CHECK(v <= lim * (1.0 + 1e-14));
      CHECK(unbounded_tail_fraction(model, k * model.d_max()) == doctest::Approx(1.0 - v / lim).epsilon(1e-9));
      prev = v;
    }
    CHECK(expected_neighbors_bounded(model, 0.05, 1e4 * model.d_max()) == doctest::Approx(lim).epsilon(1e-12));
  }
}

TEST_CASE("quadrature resolves a narrow transition far inside the disk") {
  // sigma_s = 0.5 dB over n_p = 4: the link probability drops within a few percent of d_max.
  const ChannelModel model(0.5, 4.0, 20.0);
  const double radius = 50.0 * model.d_max();
  CHECK(quadrature_oracle(model, 0.01, radius) == doctest::Approx(0.31468020943093008175).epsilon(1e-12));
  CHECK(expected_neighbors_bounded(model, 0.01, radius) == doctest::Approx(0.31468020943093008175).epsilon(1e-13));
}

TEST_CASE("quadrature oracle bound") {
  const ChannelModel model(9.0, 4.0, 30.0);
  const double v = quadrature_oracle(model, 0.1, 60.0);
  CHECK(v > 0.0);
  CHECK(v < 0.1 * std::numbers::pi * 3600.0);
  const auto detail = integrate_neighbors(model, 0.1, 60.0);
  CHECK(detail.abs_error <= 1e-10 * detail.value);
}

TEST_CASE("parameter errors") {
  const ChannelModel model(4.0, 2.0, 40.0);
  CHECK_THROWS_AS(expected_neighbors_bounded(model, 0.0, 10.0), locprob::ParameterError);
  CHECK_THROWS_AS(expected_neighbors_bounded(model, 0.1, -1.0), locprob::ParameterError);
  CHECK_THROWS_AS(expected_neighbors_unbounded(model, -0.1), locprob::ParameterError);
  CHECK_THROWS_AS(single_node_localization_probability(-1.0), locprob::ParameterError);
  CHECK_THROWS_AS(network_localization_probability(1.0, -2.0), locprob::ParameterError);
  CHECK_THROWS_AS(locprob::Deployment({0.1, 0.0, 10.0}).validate(), locprob::ParameterError);
}

TEST_CASE("single-node localization probability") {
  CHECK(single_node_localization_probability(0.0) == 0.0);
  CHECK(single_node_localization_probability(1e4) == 1.0);
  CHECK(single_node_localization_probability(3.0) == doctest::Approx(1.0 - 8.5 * std::exp(-3.0)).epsilon(1e-15));
  for (double lambda : {1e-6, 0.01, 0.5, 1.0, 2.0, 2.9, 3.0, 3.1, 5.0, 10.0, 20.0, 40.0}) {
    CAPTURE(lambda);
    CHECK(std::abs(single_node_localization_probability(lambda) - oracles::poisson_upper_tail(lambda, 3)) < 1e-12);
    CHECK(failure_probability(lambda) + single_node_localization_probability(lambda) == doctest::Approx(1.0));
  }
  // Relative accuracy where the tail is tiny: lambda^3/6 leading term.
  CHECK(single_node_localization_probability(1e-5) == doctest::Approx(1e-15 / 6.0).epsilon(1e-4));
  double prev = 0.0;
  for (double lambda = 0.01; lambda < 50.0; lambda *= 1.1) {
    const double p = single_node_localization_probability(lambda);
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("saturation above the exp underflow") {
  const auto tail = poisson_tail(800.0);
  CHECK(tail.saturated);
  CHECK(tail.success == 1.0);
  CHECK(tail.failure == 0.0);
  CHECK_FALSE(poisson_tail(700.0).saturated);
  CHECK(poisson_tail(700.0).failure > 0.0);
}

TEST_CASE("generalized anchor requirement") {
  CHECK(poisson_tail(2.0, 0).success == 1.0);
  CHECK(poisson_tail(2.0, 1).success == doctest::Approx(1.0 - std::exp(-2.0)));
  for (int k : {1, 2, 4, 6}) {
    for (double lambda : {0.3, 2.0, 7.5}) {
      CHECK(poisson_tail(lambda, k).success == doctest::Approx(oracles::poisson_upper_tail(lambda, k)).epsilon(1e-13));
    }
  }
}

TEST_CASE("network localization probability") {
  CHECK(network_localization_probability(3.0, 0.0) == 1.0);
  CHECK(network_localization_probability(0.0, 0.0) == 1.0);
  CHECK(network_localization_probability(0.0, 5.0) == 0.0);
  CHECK(network_localization_probability(3.0, 1.0) ==
        doctest::Approx(single_node_localization_probability(3.0)).epsilon(1e-15));
  // (1 - 8.5 e^{-3})^10 from mpmath.
  CHECK(network_localization_probability(3.0, 10.0) == doctest::Approx(0.004076873155792184719).epsilon(1e-13));
  // Tiny X with a huge population does not round to 1.
  const double lambda = 30.0;
  const double x = failure_probability(lambda);
  CHECK(network_localization_probability(lambda, 1e4) == doctest::Approx(std::exp(-1e4 * x)).epsilon(1e-12));
  CHECK(network_localization_probability(lambda, 1e4) < 1.0);

  for (double lambda : {0.5, 2.0, 4.0, 8.0}) {
    for (double n : {1.0, 2.0, 7.5, 100.0}) {
      CHECK(network_localization_probability(lambda, n) <= single_node_localization_probability(lambda) + 1e-16);
      CHECK(network_localization_probability(lambda, n) ==
            doctest::Approx(std::pow(oracles::poisson_upper_tail(lambda, 3), n)).epsilon(1e-12));
    }
  }
}

TEST_CASE("trends in the channel and density parameters") {
  const locprob::Deployment dep{0.01, 0.01, 100.0};
  double prev_node = 0.0, prev_net = 0.0;
  for (double sigma = 0.0; sigma <= 12.0; sigma += 1.0) {
    const ChannelModel model(sigma, 3.0, 20.0);
    const double lambda = expected_neighbors_unbounded(model, dep.rho_l);
    CHECK(single_node_localization_probability(lambda) >= prev_node);
    CHECK(network_localization_probability(model, dep) >= prev_net);
    prev_node = single_node_localization_probability(lambda);
    prev_net = network_localization_probability(model, dep);
  }
  prev_node = 0.0;
  for (double beta = 10.0; beta <= 40.0; beta += 2.5) {
    const double p = single_node_localization_probability(expected_neighbors_unbounded(ChannelModel(4.0, 3.0, beta), 0.01));
    CHECK(p >= prev_node);
    prev_node = p;
  }
}

TEST_CASE("minimum density") {
  CHECK(minimum_density(ChannelModel(0.0, 2.0, 1e-12)) == doctest::Approx(3.0 / std::numbers::pi).epsilon(1e-10));
  CHECK(minimum_density(ChannelModel(4.0, 2.0, 40.0)) == doctest::Approx(6.248338865952010564e-5).epsilon(1e-13));
  double prev = 1e300;
  for (double sigma = 0.0; sigma <= 12.0; sigma += 0.5) {
    const ChannelModel model(sigma, 4.0, 30.0);
    const double rho = minimum_density(model);
    CHECK(expected_neighbors_unbounded(model, rho) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(rho < prev);
    prev = rho;
  }
}
