// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "facetforge/geom_core.hpp"
#include "facetforge/noneuclid.hpp"
#include "facetforge/rng.hpp"
#include "facetforge/tetra.hpp"

namespace facetforge {

struct McVolume {
  double estimate = 0.0;
  double stderr_ = 0.0;  // infinite when no samples were drawn
  long long samples = 0;
  long long inside = 0;
};

// Rejection sampling in the bounding box of the mesh.
McVolume mc_volume(const PolytopeMesh& mesh, long long samples,
                   std::uint64_t seed = kDefaultSeed);

// Volume of the simplex spanned by k+1 points in R^d (d >= k), from the
// Gram form of the Cayley-Menger determinant.
double cayley_menger_volume(const std::vector<VecN>& points);
// Same from the (k+1)x(k+1) matrix of pairwise distances. Throws
// NegativeDeterminant when the distances are not realizable.
double cayley_menger_volume_from_distances(const Eigen::MatrixXd& D);

// Triangle area from vertex angles: defect (hyperbolic), excess
// (spherical) or half the cross product norm (Euclidean, points in R^4).
double angle_area_oracle(const ModelPoint& a, const ModelPoint& b,
                         const ModelPoint& c, Geometry g);

struct PolygonSample {
  double min_area = 0.0;
  double max_area = 0.0;
  int trials = 0;
  long long moves = 0;  // accepted shape moves over all trials
};

// Random convex realizations with the given side lengths: a random side
// order, the cyclic polygon for that order, then random four-bar moves
// that keep every side length and convexity.
PolygonSample sample_polygon_areas(const std::vector<double>& S, Geometry g,
                                   int trials, std::uint64_t seed = kDefaultSeed);

}  // namespace facetforge
