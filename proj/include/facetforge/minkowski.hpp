// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include <Eigen/Dense>

#include "facetforge/geom_core.hpp"

namespace facetforge {

struct FeasibilityReport {
  Vec3 sum_vector = Vec3::Zero();  // sum S_i u_i
  double sum_norm = 0.0;
  int span_rank = 0;
  bool max_area_ok = false;  // largest area < sum of the others
  double max_area_slack = 0.0;
  bool feasible = false;
};

FeasibilityReport check_feasible(const SurfaceData& data,
                                 const Tolerances& tol = default_tolerances());

// Facet areas of P(h) indexed like `data`; zero for inactive facets.
VecN facet_areas_at(const SurfaceData& data, const VecN& h,
                    const Tolerances& tol = default_tolerances());

// dA_i/dh_j from the edge lengths of P(h). Throws InactiveFacet with
// Error::index set when some facet has zero area.
Eigen::MatrixXd area_jacobian(const SurfaceData& data, const VecN& h,
                              const Tolerances& tol = default_tolerances());

// Central differences of facet_areas_at.
Eigen::MatrixXd area_jacobian_fd(const SurfaceData& data, const VecN& h,
                                 double step,
                                 const Tolerances& tol = default_tolerances());

struct SolveOptions {
  double tol = 1e-11;  // max_i |A_i - S_i| / S_i
  int max_iter = 200;
  bool finite_difference_jacobian = false;
  std::optional<VecN> h0;
};

struct SolveResult {
  VecN h;
  PolytopeMesh mesh;
  int iterations = 0;
  double residual = 0.0;
};

// Polytope with facet normals u_i and facet areas S_i, volume centroid at
// the origin. Throws Infeasible, NotConverged.
SolveResult solve_support(const SurfaceData& data,
                          const SolveOptions& options = {});
SolveResult solve_support(const SurfaceData& data, double tol, int max_iter);

}  // namespace facetforge
