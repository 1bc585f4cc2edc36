// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace facetforge {

enum class Geometry { Euclidean, Spherical, Hyperbolic };

const char* to_string(Geometry g);
// Accepts "euclidean", "spherical", "hyperbolic". Throws InvalidInput.
Geometry parse_geometry(const std::string& name);

// Area of a right triangle with legs a, b.
double right_triangle_area(double a, double b, Geometry g);

// Largest area of a triangle with two sides at most d.
double two_side_area_bound(double d, Geometry g);

// Area from side lengths: Heron (Kahan's ordering), l'Huilier on the
// sphere, angle defect with half-angle formulas in the hyperbolic plane.
// Triples violating the triangle inequality by more than rounding throw
// InvalidTriple.
double triangle_area_from_sides(double a, double b, double c, Geometry g);

// Area of the triangle over a base of length t whose apex sits at height y
// above the point at distance x from one end.
double construction_area(double x, double y, double t, Geometry g);

// Height y with construction_area(x, y, t) = S. Hyperbolic: requires
// 2 sinh(t/2) > tan S and S in (0, pi/2). Spherical: t = pi/2, S in
// (0, pi/2].
double f_tS(double x, double t, double S, Geometry g);

// Closed form of f_tS(0, t, S).
double h_tS(double t, double S, Geometry g);
// The same value as the positive root of the underlying quadratic in cosh h.
double h_tS_quadratic(double t, double S);

struct BkmMax {
  double x_max = 0.0;
  double gamma_max = 0.0;
  double area_max = 0.0;
};

// Third side, enclosed angle and area of the largest triangle with two
// given sides.
BkmMax bkm_max(double a, double b, Geometry g);

struct NecessaryCheck {
  std::string name;
  int index = -1;  // facet index for per-facet checks
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct NecessaryReport {
  std::vector<NecessaryCheck> checks;
  bool all_pass = true;
};

// Arithmetic necessary conditions for facet areas of an n-polytope:
// largest_area (S_max <= sum of the rest), angle_deficit (hyperbolic, when
// facet side counts are given) and total_area (spherical).
NecessaryReport check_necessary(const std::vector<double>& S,
                                const std::optional<std::vector<int>>& k,
                                int n, Geometry g);

// Surface measure of the unit sphere S^k in R^(k+1).
double sphere_volume(int k);

struct SphericalPolygon {
  std::vector<Eigen::Vector3d> vertices;  // on the unit sphere
  std::vector<double> side_lengths;
  double circumradius = 0.0;  // spherical radius, below pi/2
  double area = 0.0;
  double closure_residual = 0.0;
  bool center_inside = true;
};

// Convex polygon on S^2 inscribed in a circle about the north pole.
SphericalPolygon spherical_polygon_from_sides(const std::vector<double>& S);

// Scales facet measures by V_d(S^d) / V_(d-1)(S^(d-1)).
std::vector<double> suspension_lift_areas(const std::vector<double>& areas,
                                          int from_dim);

// Largest volume of a simplex in H^n; n in {2, 3}.
double hyp_max_simplex_volume(int n);
// -3 times the integral of log|2 sin u| over [0, pi/3].
double lobachevsky_v3_quadrature();

}  // namespace facetforge
