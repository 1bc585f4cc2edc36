// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace facetforge {

enum class ErrorKind {
  InvalidInput,
  DegenerateInput,
  Unbounded,
  Empty,
  InactiveFacet,
  NotConverged,
  Infeasible,
  OutOfRange,
  PreconditionViolated,
  RhombException,
  DimensionError,
  InvalidTriple,
  Degenerate,
  Unsupported,
  ZeroOnBoundary,
  HypothesesNotMet,
  DegenerateFace,
  DegenerateOnly,
  NegativeDeterminant,
  Internal,
};

const char* to_string(ErrorKind kind);

// Every library failure is reported through this type. Optional payload
// fields are meaningful only for the kinds that set them.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  int index = -1;          // InactiveFacet
  int iterations = 0;      // NotConverged
  double residual = 0.0;   // NotConverged

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace facetforge
