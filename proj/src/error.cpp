// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#include "facetforge/error.hpp"

#include <cmath>

#include "facetforge/rng.hpp"

namespace facetforge {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::Empty: return "Empty";
    case ErrorKind::InactiveFacet: return "InactiveFacet";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::RhombException: return "RhombException";
    case ErrorKind::DimensionError: return "DimensionError";
    case ErrorKind::InvalidTriple: return "InvalidTriple";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::ZeroOnBoundary: return "ZeroOnBoundary";
    case ErrorKind::HypothesesNotMet: return "HypothesesNotMet";
    case ErrorKind::DegenerateFace: return "DegenerateFace";
    case ErrorKind::DegenerateOnly: return "DegenerateOnly";
    case ErrorKind::NegativeDeterminant: return "NegativeDeterminant";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

double SplitMix64::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace facetforge
