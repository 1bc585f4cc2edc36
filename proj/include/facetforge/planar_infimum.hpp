// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "facetforge/noneuclid.hpp"

namespace facetforge {

// A partition of the side indices (0-based) into three non-empty parts
// together with the triangle their (signed) sums form.
struct PartitionCertificate {
  std::vector<std::vector<int>> parts;
  std::vector<int> signs;  // +1/-1 per index; all +1 for convex polygons
  double triple[3] = {0.0, 0.0, 0.0};
  double area = 0.0;
  Geometry geometry = Geometry::Euclidean;
  // Simple polygons with a nonzero minimum: no part splits into two
  // sub-sums that are both positive.
  bool indecomposable = false;
};

struct InfimumResult {
  double value = 0.0;
  PartitionCertificate certificate;
  long long candidates = 0;  // partitions (and sign patterns) examined
};

// Infimum of the areas of convex polygons with the given side lengths:
// the least triangle area over three-part partitions. With cyclic = true
// only partitions into three arcs are used. Ties keep the first partition
// in lexicographic order.
InfimumResult infimum_convex(const std::vector<double>& S, Geometry g,
                             bool cyclic = false);

// Infimum over simple polygons: partitions with signed part sums.
// Supports up to 12 sides.
InfimumResult infimum_simple(const std::vector<double>& S, Geometry g);

}  // namespace facetforge
