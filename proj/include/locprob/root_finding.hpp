// Copyright 2026 The locprob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include "locprob/error.hpp"

namespace locprob::roots {

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

struct Root {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
  Bracket bracket;  ///< final interval, f(lo) and f(hi) of opposite sign
};

/// Grid points lo * (hi/lo)^(i/(count-1)), i = 0..count-1.
inline std::vector<double> geometric_grid(double lo, double hi, int count) {
  ::locprob::detail::require(lo > 0.0 && hi > lo && count >= 2, "invalid geometric grid");
  std::vector<double> grid(count);
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) grid[i] = lo * std::exp(step * i);
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

/// Cells of `grid` on which `f` changes sign, in increasing order.
template <class F>
std::vector<Bracket> sign_changes(const F& f, const std::vector<double>& grid) {
  std::vector<Bracket> out;
  double prev = f(grid.front());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = f(grid[i]);
    if (prev == 0.0 || (prev < 0.0) != (cur < 0.0)) out.push_back({grid[i - 1], grid[i]});
    prev = cur;
  }
  return out;
}

/// Root of `f` on a sign-changing bracket.
///
/// Illinois-modified regula falsi (secant steps that keep the root
/// bracketed) with a bisection step whenever an iteration fails to halve the
/// interval. Runs until the interval collapses to adjacent doubles or f hits
/// zero, then returns the endpoint with the smaller |f|.
template <class F>
Root solve_bracketed(const F& f, Bracket bracket, int max_iterations = 400) {
  double a = bracket.lo;
  double b = bracket.hi;
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return {a, fa, 0, {a, b}};
  if (fb == 0.0) return {b, fb, 0, {a, b}};
  if ((fa < 0.0) == (fb < 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "no sign change on [" << a << ", " << b << "]: f = " << fa << ", " << fb;
    throw BracketingError(msg.str());
  }
  // Illinois scaling applied to the retained endpoint's function value.
  double ga = fa;
  double gb = fb;
  int side = 0;
  int iterations = 0;
  for (; iterations < max_iterations; ++iterations) {
    const double width = b - a;
    if (std::nextafter(a, b) >= b) break;
    double x = b - gb * (b - a) / (gb - ga);
    if (!(x > a && x < b)) x = 0.5 * (a + b);
    const double fx = f(x);
    if (fx == 0.0) return {x, fx, iterations + 1, {a, b}};
    if ((fx < 0.0) == (fa < 0.0)) {
      a = x;
      fa = ga = fx;
      if (side == -1) gb *= 0.5;
      side = -1;
    } else {
      b = x;
      fb = gb = fx;
      if (side == 1) ga *= 0.5;
      side = 1;
    }
    if (b - a > 0.5 * width) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      const double fm = f(mid);
      ++iterations;
      if (fm == 0.0) return {mid, fm, iterations + 1, {a, b}};
      if ((fm < 0.0) == (fa < 0.0)) {
        a = mid;
        fa = ga = fm;
      } else {
        b = mid;
        fb = gb = fm;
      }
      side = 0;
    }
  }
  if (std::abs(fa) <= std::abs(fb)) return {a, fa, iterations, {a, b}};
  return {b, fb, iterations, {a, b}};
}

}  // namespace locprob::roots
