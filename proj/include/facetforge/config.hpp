// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace facetforge {

// Geometric tolerances. Lengths marked "relative" are multiplied by the
// diameter of the point set or mesh they apply to.
struct Tolerances {
  double coplanar = 1e-10;           // affine dimension test (relative)
  double facet_merge = 1e-9;         // coplanar triangle merge (relative)
  double dual_merge = 1e-12;         // same, for the polar hull (relative)
  double visibility = 1e-13;         // hull point-beyond-plane test (relative)
  double unit_normal = 1e-12;        // | |u| - 1 |
  double normal_separation = 1e-9;   // min angle between distinct normals
  double plane_offset = 1e-9;        // facet plane vs. support number
  double feasibility = 1e-9;         // |sum S_i u_i| relative to sum S_i
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace facetforge
