// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "facetforge/geom_core.hpp"
#include "facetforge/rng.hpp"

namespace facetforge {

// Closed polygon given by its side vectors. order[i] is the index into the
// caller's side-length list of side i (sides may be rearranged).
struct ClosedPolygon {
  std::vector<VecN> side_vectors;
  std::vector<double> side_lengths;
  std::vector<int> order;
  double circumradius = 0.0;  // planar construction only
  double closure_residual = 0.0;

  std::vector<VecN> vertices() const;  // first vertex at the origin
};

// Convex polygon inscribed in a circle, sides in the given cyclic order,
// counterclockwise in the plane. Throws Infeasible when the largest side is
// not shorter than the sum of the others.
ClosedPolygon polygon_from_side_lengths(const std::vector<double>& S);

struct GeneralPosition {
  ClosedPolygon polygon;  // side vectors in R^n with last coordinate 0
  double b_out = 0.0;     // min |det| over (n-1)-subsets of unit sides
  int iterations = 0;     // accepted moves
  double max_vertex_move = 0.0;
  std::vector<double> min_det_history;
};

// Smallest |det| of n-1 unit side vectors taken in the first n-1
// coordinates, over all subsets.
double min_side_determinant(const std::vector<VecN>& sides, int n);
std::vector<double> sorted_side_determinants(const std::vector<VecN>& sides,
                                             int n);

// Moves vertices, keeping every side length, until no n-1 side vectors are
// linearly dependent. Throws RhombException, DimensionError, Infeasible,
// NotConverged.
GeneralPosition perturb_to_general_position(
    const std::vector<double>& S, int n, double budget,
    std::uint64_t seed = kDefaultSeed);

struct TiltStep {
  double alpha = 0.0;
  double volume = 0.0;
  bool solved = false;
};

struct SmallVolumeResult {
  PolytopeMesh mesh;
  std::vector<TiltStep> history;
  bool needle_route = false;
  double needle_eps = 0.0;  // needle parameter when needle_route
  std::vector<int> order;   // facet i of the mesh has area S[order[i]]
};

// Polytope with facet areas S and volume at most eps_target.
SmallVolumeResult build_small_volume_polytope(
    const std::vector<double>& S, double eps_target,
    std::uint64_t seed = kDefaultSeed);

// Tetrahedron with all facet areas 2 and volume (4 eps/3) sqrt(1 - eps^4/4).
PolytopeMesh needle_tetrahedron(double eps);
double needle_volume(double eps);

// 2k+2 vertices in R^(2k+1): a regular k-simplex of edge 1/eps in the last
// k coordinates with a segment of length eps along x_i at vertex i.
std::vector<VecN> needle_simplex_odd(int k, double eps);

struct BoundInputs {
  double eps = 0.0;   // tilt of the normals from the horizontal hyperplane
  double beta = 0.0;  // n = 3: pairwise normal angles lie in [beta, pi-beta]
  double b = 0.0;     // n > 3: parallelotope volume lower bound
  int n = 3;
  std::vector<double> S;
};

double slope_bound(const BoundInputs& in);

struct VolumeBound {
  double chain = 0.0;       // before the final simplification
  double simplified = 0.0;  // NaN when only the chain value is valid
  double ratio = 0.0;       // sin(eps)/sin(beta/2), or its n > 3 analogue
};

// Upper bound on the volume of a polytope with steep facets. With
// chain_only the precondition is relaxed to ratio < 1 and `simplified` is
// NaN when ratio exceeds 1/sqrt(2).
VolumeBound facet_volume_bound(const BoundInputs& in, bool chain_only = false);

// Tilt and angle separation of a 3-polytope's facet normals. The vertical
// axis is chosen to minimize the largest tilt.
BoundInputs measure_bound_inputs(const PolytopeMesh& mesh);

// Sharp configuration for slope_bound: two unit normals tilted by eps
// whose intersection line is tilted by the bound. Returns the measured line
// angle with the vertical axis.
double slope_sharp_example_angle(double eps, double beta);

struct SteepExample {
  PolytopeMesh mesh;
  double rotation = 0.0;  // offset of the lower polygon's normals
  double apex_height = 0.0;
};

SteepExample steep_example_3d(int m, double eps);

// Lower bound on V / S^(3/2) from the inner and outer double cones.
double steep_ratio_bound(double eps);

// Unit ball volume in R^k.
double unit_ball_volume(int k);

}  // namespace facetforge
