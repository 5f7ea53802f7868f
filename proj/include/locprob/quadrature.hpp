// Copyright 2026 The locprob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "locprob/error.hpp"

namespace locprob::quadrature {

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  int intervals = 0;
};

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_intervals = 20000;
};

namespace detail {

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

// 15-point Kronrod rule with its embedded 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kKronrodNodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
Segment kronrod15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of `f` over [a, b].
///
/// `breakpoints` inside (a, b) seed the initial partition, which is how
/// known kinks or jumps of the integrand are handled. The interval with the
/// largest error estimate is bisected until the summed estimate drops below
/// max(abs_tol, rel_tol * |value|). Throws NumericalError when
/// max_intervals is exhausted.
template <class F>
Result integrate(const F& f, double a, double b, std::vector<double> breakpoints = {},
                 const Options& options = {}) {
  ::locprob::detail::require(std::isfinite(a) && std::isfinite(b) && a <= b,
                             "integration limits must be finite with a <= b");
  std::vector<double> edges{a};
  std::sort(breakpoints.begin(), breakpoints.end());
  for (double x : breakpoints) {
    if (x > edges.back() && x < b) edges.push_back(x);
  }
  edges.push_back(b);

  std::priority_queue<detail::Segment> heap;
  double value = 0.0;
  double error = 0.0;
  Result result;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    auto seg = detail::kronrod15(f, edges[i], edges[i + 1]);
    result.evaluations += 15;
    value += seg.value;
    error += seg.error;
    heap.push(seg);
  }

  while (error > std::max(options.abs_tol, options.rel_tol * std::abs(value))) {
    if (static_cast<int>(heap.size()) >= options.max_intervals) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "adaptive quadrature did not converge on [" << a << ", " << b << "]: value " << value
          << ", error estimate " << error << " after " << heap.size() << " intervals";
      throw NumericalError(msg.str());
    }
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::kronrod15(f, worst.a, mid);
    const auto right = detail::kronrod15(f, mid, worst.b);
    result.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to shed the drift of the running updates.
  result.value = 0.0;
  result.abs_error = 0.0;
  result.intervals = static_cast<int>(heap.size());
  while (!heap.empty()) {
    result.value += heap.top().value;
    result.abs_error += heap.top().error;
    heap.pop();
  }
  return result;
}

}  // namespace locprob::quadrature
