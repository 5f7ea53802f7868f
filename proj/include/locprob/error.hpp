// Copyright 2026 The locprob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace locprob {

/// Invalid, non-finite or out-of-range input to a model or solver.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine (quadrature, root finding) failed to meet its tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No sign change of the defining equation was found in the scanned bracket.
class BracketingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A Monte Carlo run produced no samples to estimate from.
class DegenerateSampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Throws ParameterError unless `ok`.
inline void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

}  // namespace detail
}  // namespace locprob
