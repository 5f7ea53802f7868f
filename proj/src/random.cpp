// Copyright 2026 The locprob Authors.
// SPDX-License-Identifier: Apache-2.0

#include "locprob/random.hpp"

#include <cmath>

#include "locprob/error.hpp"

namespace locprob {

std::int64_t Rng::poisson(double mean) {
  detail::require(std::isfinite(mean) && mean >= 0.0, "Poisson mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  std::poisson_distribution<std::int64_t> dist(mean);
  return dist(engine_);
}

}  // namespace locprob
