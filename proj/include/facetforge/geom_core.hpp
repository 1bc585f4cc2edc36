// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "facetforge/config.hpp"

namespace facetforge {

using Vec3 = Eigen::Vector3d;
using VecN = Eigen::VectorXd;

// Convex 3-polytope. Facet cycles are counterclockwise seen from outside.
// facet_label[f] is the index of the generating halfspace when the mesh
// came from halfspace_intersection_3d, otherwise -1.
struct PolytopeMesh {
  std::vector<Vec3> vertices;
  std::vector<std::vector<int>> facets;
  std::vector<Vec3> normals;
  std::vector<double> areas;
  std::vector<int> facet_label;
  double volume = 0.0;

  int num_edges() const;
};

struct SurfaceEntry {
  Vec3 u;
  double S;
};

struct SurfaceData {
  std::vector<SurfaceEntry> entries;

  int size() const { return static_cast<int>(entries.size()); }
};

// Throws InvalidInput unless normals are unit, pairwise distinct and areas
// positive.
void validate(const SurfaceData& data,
              const Tolerances& tol = default_tolerances());

SurfaceData make_surface_data(const std::vector<Vec3>& normals,
                              const std::vector<double>& areas,
                              bool normalize = true);

PolytopeMesh convex_hull_3d(const std::vector<Vec3>& points,
                            const Tolerances& tol = default_tolerances());

struct HalfspaceResult {
  PolytopeMesh mesh;
  std::vector<int> inactive;  // indices whose facet has zero area
  Vec3 interior_point = Vec3::Zero();
  double inradius = 0.0;
};

HalfspaceResult halfspace_intersection_3d(
    const SurfaceData& data, const VecN& h,
    const Tolerances& tol = default_tolerances());

struct MeshMetrics {
  double volume = 0.0;
  std::vector<double> areas;
  double surface = 0.0;
  double diameter = 0.0;
};

MeshMetrics mesh_metrics(const PolytopeMesh& mesh);

Vec3 volume_centroid(const PolytopeMesh& mesh);

struct GwwReport {
  double lhs = 0.0;  // S^2
  double rhs = 0.0;  // pi * diam * 3V
  bool holds = false;
};

GwwReport gww_check(const PolytopeMesh& mesh);

// Recomputes normals, areas and volume from vertices and facet cycles.
void refresh_geometry(PolytopeMesh& mesh);

PolytopeMesh translated(const PolytopeMesh& mesh, const Vec3& shift);
PolytopeMesh scaled(const PolytopeMesh& mesh, double factor);

double diameter(const std::vector<Vec3>& points);

}  // namespace facetforge
