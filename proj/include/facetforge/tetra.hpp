// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <functional>

#include <Eigen/Dense>

#include "facetforge/noneuclid.hpp"

namespace facetforge {

// Points of the hyperboloid model (Lorentz form -x0 y0 + x1 y1 + x2 y2 +
// x3 y3, x0 > 0) or of the unit sphere in R^4.
using ModelPoint = Eigen::Vector4d;
using Tetra = std::array<ModelPoint, 4>;

double lorentz(const ModelPoint& p, const ModelPoint& q);
double model_distance(const ModelPoint& p, const ModelPoint& q, Geometry g);

// Tetrahedron of the two-parameter family: A1, A2 at distance t, A4 at
// height f_tS(x, t, S3) over the point H at distance x from A1, A3 at
// height f_tS(x, t, S4) rotated by phi about the line A1A2.
// Hyperbolic vertices use H as the model origin; spherical ones use
// A1 = e1, A2 = e2 (t = pi/2).
Tetra place_tetra(double x, double phi, double t, double S3, double S4,
                  Geometry g);

// s_i is the area of the face opposite A_i. Throws DegenerateFace for a
// face of zero area or coincident vertices.
std::array<double, 4> tetra_face_areas(const Tetra& v, Geometry g);

struct TetraProblem {
  Geometry geometry = Geometry::Hyperbolic;
  std::array<double, 4> S{};  // non-decreasing targets
  double t = 1.0;
};

// (s_2 - S_2, s_1 - S_1) at (x, phi).
Eigen::Vector2d residual(double x, double phi, const TetraProblem& p);

struct Rect2 {
  double x0 = 0.0, x1 = 1.0;
  double y0 = 0.0, y1 = 1.0;
};

using Field2 = std::function<Eigen::Vector2d(double, double)>;

// Degree of F along the counterclockwise boundary of r, from `samples`
// points per side refined wherever the direction turns by more than pi/4.
// Throws ZeroOnBoundary when F vanishes at a sample.
int winding_number(const Field2& F, const Rect2& r, int samples = 16);

enum class TetraCase { Fc1, Fc2, Regular };
const char* to_string(TetraCase c);

struct TChoice {
  double t = 0.0;
  TetraCase which = TetraCase::Fc1;
};

// Throws HypothesesNotMet naming the failed conditions.
TChoice choose_t(const std::array<double, 4>& S, Geometry g);

struct TetraConfig {
  Geometry geometry = Geometry::Hyperbolic;
  std::array<double, 4> targets{};
  TetraCase which = TetraCase::Fc1;
  double t = 0.0;
  double x = 0.0;
  double phi = 0.0;
  Tetra vertices{};
  std::array<double, 4> areas{};
  double max_residual = 0.0;
  int winding = 0;          // full rectangle, default sampling
  int winding_check = 0;    // full rectangle, 4x sampling
  int subdivisions = 0;
  double determinant = 0.0; // |det| of the column-normalized vertex matrix
  // Spherical only: unit w with <w, A_i> >= witness_margin > 0.
  Eigen::Vector4d witness = Eigen::Vector4d::Zero();
  double witness_margin = 0.0;
};

// Tetrahedron in H^3 or S^3 with facet areas S (non-decreasing). Equal
// targets give the regular tetrahedron.
TetraConfig solve_tetra(const std::array<double, 4>& S, Geometry g);

}  // namespace facetforge
