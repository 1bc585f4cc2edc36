// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <functional>

#include <gtest/gtest.h>

#include "facetforge/error.hpp"
#include "facetforge/noneuclid.hpp"
#include "facetforge/rng.hpp"

using namespace facetforge;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

double angle_area(double a, double b, double c, Geometry g) {
  auto angle = [&](double opp, double x, double y) {
    if (g == Geometry::Spherical) {
      return std::acos((std::cos(opp) - std::cos(x) * std::cos(y)) / (std::sin(x) * std::sin(y)));
    }
    return std::acos((std::cosh(x) * std::cosh(y) - std::cosh(opp)) / (std::sinh(x) * std::sinh(y)));
  };
  const double sum = angle(a, b, c) + angle(b, a, c) + angle(c, a, b);
  return g == Geometry::Spherical ? sum - M_PI : M_PI - sum;
}

// Apex over the foot at distance x from one end of a base of length t,
// with legs from the right-angle rule.
double apex_area(double x, double y, double t, Geometry g) {
  double d1, d2;
  if (g == Geometry::Spherical) {
    d1 = std::acos(std::cos(x) * std::cos(y));
    d2 = std::acos(std::cos(t - x) * std::cos(y));
  } else {
    d1 = std::acosh(std::cosh(x) * std::cosh(y));
    d2 = std::acosh(std::cosh(t - x) * std::cosh(y));
  }
  return angle_area(d1, d2, t, g);
}

double bisect_height(double x, double t, double S, Geometry g) {
  double lo = 1e-9, hi = g == Geometry::Spherical ? M_PI / 2 : 50.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (apex_area(x, mid, t, g) < S ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double golden_max(const std::function<double(double)>& f, double lo, double hi) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < 200; ++i) {
    const double a = hi - r * (hi - lo), b = lo + r * (hi - lo);
    (f(a) < f(b) ? lo : hi) = f(a) < f(b) ? a : b;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(Geometry, ParseAndPrint) {
  for (Geometry g : {Geometry::Euclidean, Geometry::Spherical, Geometry::Hyperbolic}) {
    EXPECT_EQ(parse_geometry(to_string(g)), g);
  }
  EXPECT_EQ(kind_of([] { parse_geometry("elliptic"); }), ErrorKind::InvalidInput);
}

TEST(RightTriangle, HyperbolicUnitLegs) {
  const double S = right_triangle_area(1, 1, Geometry::Hyperbolic);
  EXPECT_NEAR(S, 0.4207839616380729, 1e-15);
  EXPECT_NEAR(S, std::atan(std::sinh(1.0) * std::sinh(1.0) / (2 * std::cosh(1.0))), 1e-15);
  const double c = std::acosh(std::cosh(1.0) * std::cosh(1.0));
  EXPECT_NEAR(S, angle_area(1, 1, c, Geometry::Hyperbolic), 1e-12);
  EXPECT_NEAR(S, triangle_area_from_sides(1, 1, c, Geometry::Hyperbolic), 1e-10);
}

TEST(RightTriangle, SphericalLegsSummingToPi) {
  EXPECT_EQ(right_triangle_area(1.0, M_PI - 1.0, Geometry::Spherical), M_PI / 2);
  EXPECT_NEAR(right_triangle_area(M_PI / 2, M_PI / 2, Geometry::Spherical), M_PI / 2, 1e-15);
}

TEST(RightTriangle, AgreesWithSideFormula) {
  SplitMix64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const double a = rng.uniform(0.05, 1.4), b = rng.uniform(0.05, 1.4);
    const double ch = std::acosh(std::cosh(a) * std::cosh(b));
    EXPECT_NEAR(right_triangle_area(a, b, Geometry::Hyperbolic),
                triangle_area_from_sides(a, b, ch, Geometry::Hyperbolic), 1e-10);
    const double cs = std::acos(std::cos(a) * std::cos(b));
    EXPECT_NEAR(right_triangle_area(a, b, Geometry::Spherical),
                triangle_area_from_sides(a, b, cs, Geometry::Spherical), 1e-10);
  }
}

TEST(RightTriangle, VanishingLegs) {
  for (Geometry g : {Geometry::Spherical, Geometry::Hyperbolic}) {
    EXPECT_LT(right_triangle_area(1e-9, 1.0, g), 1e-9);
    EXPECT_EQ(kind_of([g] { right_triangle_area(0.0, 1.0, g); }), ErrorKind::OutOfRange);
  }
  EXPECT_EQ(kind_of([] { right_triangle_area(4.0, 1.0, Geometry::Spherical); }),
            ErrorKind::OutOfRange);
}

TEST(TwoSideBound, HyperbolicUnit) {
  const double bound = two_side_area_bound(1.0, Geometry::Hyperbolic);
  EXPECT_NEAR(bound, 0.4304193416045242, 1e-15);
  // Largest isosceles triangle with unit legs.
  auto f = [](double x) { return angle_area(1, 1, x, Geometry::Hyperbolic); };
  const double x = golden_max(f, 1e-6, 2.0 - 1e-6);
  EXPECT_NEAR(bound, f(x), 1e-12);
}

TEST(TwoSideBound, Spherical) {
  EXPECT_EQ(two_side_area_bound(M_PI / 2, Geometry::Spherical), M_PI);
  EXPECT_LT(two_side_area_bound(1e-6, Geometry::Spherical), 1e-11);
  auto f = [](double x) { return angle_area(1, 1, x, Geometry::Spherical); };
  EXPECT_NEAR(two_side_area_bound(1.0, Geometry::Spherical), f(golden_max(f, 1e-6, 2.0 - 1e-6)),
              1e-12);
  EXPECT_EQ(kind_of([] { two_side_area_bound(2.0, Geometry::Spherical); }), ErrorKind::OutOfRange);
}

TEST(TriangleArea, CurvedConsistency) {
  SplitMix64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const double a = rng.uniform(0.01, 5.0), b = rng.uniform(0.01, 5.0);
    const double c = rng.uniform(std::abs(a - b), a + b);
    EXPECT_LT(triangle_area_from_sides(a, b, c, Geometry::Hyperbolic), M_PI);
    const double p = rng.uniform(0.01, M_PI / 2), q = rng.uniform(0.01, M_PI / 2);
    const double r = rng.uniform(std::abs(p - q), std::min(p + q, M_PI / 2));
    EXPECT_LE(triangle_area_from_sides(p, q, r, Geometry::Spherical), M_PI / 2 + 1e-12);
  }
  EXPECT_EQ(kind_of([] { triangle_area_from_sides(3, 3, 3, Geometry::Spherical); }),
            ErrorKind::InvalidTriple);
}

TEST(Construction, AreaIncreasesWithHeight) {
  for (Geometry g : {Geometry::Spherical, Geometry::Hyperbolic}) {
    const double t = g == Geometry::Spherical ? M_PI / 2 : 1.5;
    for (double x : {0.0, 0.3, 0.7}) {
      double prev = 0.0;
      for (int k = 1; k <= 60; ++k) {
        const double y = k * (g == Geometry::Spherical ? M_PI / 2 : 5.0) / 60.0;
        const double s = construction_area(x, y, t, g);
        EXPECT_GT(s, prev);
        EXPECT_NEAR(s, apex_area(x, y, t, g), 1e-10);
        prev = s;
      }
    }
  }
}

TEST(Construction, HeightForTargetArea) {
  const double y = f_tS(0.0, 1.0, 0.2, Geometry::Hyperbolic);
  EXPECT_NEAR(y, 0.4412623321446618, 1e-13);
  EXPECT_NEAR(std::cosh(y), 1.0989462172460313, 1e-13);
  EXPECT_NEAR(y, bisect_height(0.0, 1.0, 0.2, Geometry::Hyperbolic), 1e-12);
  EXPECT_NEAR(construction_area(0.0, y, 1.0, Geometry::Hyperbolic), 0.2, 1e-12);
}

TEST(Construction, SymmetricAboutMidpoint) {
  SplitMix64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const double t = rng.uniform(0.5, 3.0);
    const double S = rng.uniform(0.01, std::min(1.5, std::atan(2 * std::sinh(t / 2)) - 0.01));
    const double x = rng.uniform(0.0, t);
    EXPECT_NEAR(f_tS(x, t, S, Geometry::Hyperbolic), f_tS(t - x, t, S, Geometry::Hyperbolic), 1e-12);
    EXPECT_NEAR(f_tS(x, t, S, Geometry::Hyperbolic), bisect_height(x, t, S, Geometry::Hyperbolic),
                1e-10);
    const double xs = rng.uniform(0.0, M_PI / 2), Ss = rng.uniform(0.01, M_PI / 2);
    EXPECT_NEAR(f_tS(xs, M_PI / 2, Ss, Geometry::Spherical),
                f_tS(M_PI / 2 - xs, M_PI / 2, Ss, Geometry::Spherical), 1e-12);
  }
}

TEST(Construction, MonotoneInTargetArea) {
  for (Geometry g : {Geometry::Spherical, Geometry::Hyperbolic}) {
    const double t = g == Geometry::Spherical ? M_PI / 2 : 2.0;
    for (double x = 0.0; x <= t; x += t / 10) {
      double prev = 0.0;
      for (double S = 0.05; S < 1.2; S += 0.1) {
        const double y = f_tS(x, t, S, g);
        EXPECT_GT(y, prev);
        prev = y;
      }
    }
  }
}

TEST(Construction, SphericalBaseFoot) {
  for (double S : {0.1, 0.7, 1.5, M_PI / 2}) {
    EXPECT_NEAR(f_tS(0.0, M_PI / 2, S, Geometry::Spherical), S, 1e-12);
    EXPECT_EQ(h_tS(M_PI / 2, S, Geometry::Spherical), S);
  }
}

TEST(Construction, Preconditions) {
  // 2 sinh(0.05) ~ 0.1 < tan 0.5.
  EXPECT_EQ(kind_of([] { f_tS(0.0, 0.1, 0.5, Geometry::Hyperbolic); }),
            ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind_of([] { h_tS(0.1, 0.5, Geometry::Hyperbolic); }), ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind_of([] { f_tS(0.0, 1.0, 0.5, Geometry::Spherical); }),
            ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind_of([] { f_tS(2.0, 1.0, 0.2, Geometry::Hyperbolic); }),
            ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind_of([] { f_tS(0.0, 1.0, 1.6, Geometry::Hyperbolic); }),
            ErrorKind::PreconditionViolated);
}

TEST(FootHeight, ClosedFormMatchesQuadratic) {
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const double t = 0.5 + i * 0.5;
      const double S = 0.02 + j * 0.07;
      if (!(2 * std::sinh(t / 2) > std::tan(S))) continue;
      const double h = h_tS(t, S, Geometry::Hyperbolic);
      // tan S (cosh t + c) = sinh t sqrt(c^2 - 1), squared.
      const double T = std::tan(S), st = std::sinh(t), ct = std::cosh(t);
      const double A = st * st - T * T, B = -2 * T * T * ct, C = -(T * T * ct * ct + st * st);
      const double c = (-B + std::sqrt(B * B - 4 * A * C)) / (2 * A);
      EXPECT_NEAR(std::cosh(h), c, 1e-10 * c);
      EXPECT_NEAR(h, h_tS_quadratic(t, S), 1e-10);
      EXPECT_NEAR(h, f_tS(0.0, t, S, Geometry::Hyperbolic), 1e-10);
    }
  }
}

TEST(FootHeight, LongBaseLimit) {
  for (double S : {0.1, 0.3, 0.8, 1.4}) {
    EXPECT_LE(std::abs(std::cosh(h_tS(20.0, S, Geometry::Hyperbolic)) - 1 / std::cos(S)), 1e-3);
  }
}

TEST(LargestTriangle, Euclidean) {
  const BkmMax r = bkm_max(1, 1, Geometry::Euclidean);
  EXPECT_NEAR(r.x_max, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(r.gamma_max, M_PI / 2, 1e-15);
  EXPECT_NEAR(r.area_max, 0.5, 1e-15);
}

TEST(LargestTriangle, CurvedAgreesWithNumericMaximum) {
  const BkmMax h = bkm_max(1, 1, Geometry::Hyperbolic);
  EXPECT_NEAR(h.x_max, 2 * std::acosh(std::sqrt(std::cosh(1.0))), 1e-15);
  EXPECT_NEAR(h.x_max, 1.3653329142432114, 1e-13);
  const BkmMax s = bkm_max(1, 1, Geometry::Spherical);
  EXPECT_NEAR(s.x_max, 1.490104176129122, 1e-13);
  SplitMix64 rng(7);
  for (Geometry g : {Geometry::Spherical, Geometry::Hyperbolic}) {
    for (int i = 0; i < 30; ++i) {
      const double a = rng.uniform(0.1, 1.4), b = rng.uniform(0.1, 1.4);
      const BkmMax r = bkm_max(a, b, g);
      auto f = [&](double x) { return triangle_area_from_sides(a, b, x, g); };
      const double x = golden_max(f, std::abs(a - b), a + b);
      EXPECT_NEAR(r.x_max, x, 1e-6);
      EXPECT_NEAR(r.area_max, f(x), 1e-12);
      EXPECT_NEAR(r.area_max, f(r.x_max), 1e-12);
      // The enclosed angle at the maximum.
      const double cg = g == Geometry::Spherical
          ? (std::cos(r.x_max) - std::cos(a) * std::cos(b)) / (std::sin(a) * std::sin(b))
          : (std::cosh(a) * std::cosh(b) - std::cosh(r.x_max)) / (std::sinh(a) * std::sinh(b));
      EXPECT_NEAR(std::acos(cg), r.gamma_max, 1e-7);
    }
  }
  EXPECT_EQ(kind_of([] { bkm_max(2, 2, Geometry::Spherical); }), ErrorKind::OutOfRange);
}

TEST(LargestTriangle, AreaConcaveInThirdSide) {
  for (Geometry g : {Geometry::Euclidean, Geometry::Spherical, Geometry::Hyperbolic}) {
    for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{0.4, 1.2}, std::pair{1.5, 0.2}}) {
      const double lo = std::abs(a - b), hi = a + b;
      const int n = 200;
      const double step = (hi - lo) / n;
      for (int i = 1; i < n; ++i) {
        const double x = lo + i * step;
        const double d2 = triangle_area_from_sides(a, b, x - step, g) -
                          2 * triangle_area_from_sides(a, b, x, g) +
                          triangle_area_from_sides(a, b, x + step, g);
        EXPECT_LT(d2, 1e-12);
      }
    }
  }
}

TEST(NecessaryConditions, Examples) {
  const NecessaryReport a = check_necessary({1, 1, 1, 3.5}, std::nullopt, 3, Geometry::Hyperbolic);
  EXPECT_FALSE(a.all_pass);
  EXPECT_EQ(a.checks[0].name, "largest_area");
  EXPECT_EQ(a.checks[0].index, 3);

  const NecessaryReport b = check_necessary({0.1, 0.1, 0.1, 0.1}, std::vector<int>{3, 3, 3, 3}, 3,
                                            Geometry::Hyperbolic);
  EXPECT_TRUE(b.all_pass);
  ASSERT_EQ(b.checks.size(), 5u);
  EXPECT_EQ(b.checks[1].name, "angle_deficit");
  EXPECT_NEAR(b.checks[1].lhs, M_PI - 0.1, 1e-15);
  EXPECT_NEAR(b.checks[1].rhs, 3 * (M_PI - 0.1), 1e-14);

  const NecessaryReport c = check_necessary({3, 3, 3, 3.6}, std::nullopt, 3, Geometry::Spherical);
  EXPECT_FALSE(c.all_pass);
  EXPECT_TRUE(c.checks[0].pass);
  EXPECT_EQ(c.checks.back().name, "total_area");
  EXPECT_FALSE(c.checks.back().pass);
  EXPECT_NEAR(c.checks.back().rhs, 4 * M_PI, 1e-14);
}

TEST(SphereVolume, LowDimensions) {
  EXPECT_NEAR(sphere_volume(1), 2 * M_PI, 1e-14);
  EXPECT_NEAR(sphere_volume(2), 4 * M_PI, 1e-14);
  EXPECT_NEAR(sphere_volume(3), 2 * M_PI * M_PI, 1e-13);
  EXPECT_NEAR(sphere_volume(4), 8 * M_PI * M_PI / 3, 1e-13);
  EXPECT_EQ(kind_of([] { sphere_volume(0); }), ErrorKind::OutOfRange);
}

TEST(SphericalPolygon, Octant) {
  const SphericalPolygon p = spherical_polygon_from_sides({M_PI / 2, M_PI / 2, M_PI / 2});
  EXPECT_NEAR(p.area, M_PI / 2, 1e-12);
  EXPECT_LT(p.circumradius, M_PI / 2);
  EXPECT_LT(p.closure_residual, 1e-12);
}

TEST(SphericalPolygon, ChainCloses) {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 3 + trial % 5;
    std::vector<double> S(m);
    double total = 0.0, smax = 0.0;
    for (double& s : S) {
      s = rng.uniform(0.1, 1.0);
      total += s;
      smax = std::max(smax, s);
    }
    if (smax >= total - smax || total >= 2 * M_PI) continue;
    const SphericalPolygon p = spherical_polygon_from_sides(S);
    EXPECT_LT(p.closure_residual, 1e-10);
    for (int i = 0; i < m; ++i) {
      const Eigen::Vector3d& u = p.vertices[i];
      const Eigen::Vector3d& v = p.vertices[(i + 1) % m];
      EXPECT_NEAR(u.norm(), 1.0, 1e-15);
      EXPECT_NEAR(std::atan2(u.cross(v).norm(), u.dot(v)), S[i], 1e-9);
    }
    // Fan from the first vertex.
    double fan = 0.0;
    for (int i = 1; i + 1 < m; ++i) {
      auto d = [](const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
        return std::atan2(x.cross(y).norm(), x.dot(y));
      };
      fan += angle_area(d(p.vertices[0], p.vertices[i]), d(p.vertices[i], p.vertices[i + 1]),
                        d(p.vertices[0], p.vertices[i + 1]), Geometry::Spherical);
    }
    EXPECT_NEAR(p.area, fan, 1e-9);
  }
}

TEST(SphericalPolygon, RegularTriangle) {
  const SphericalPolygon p = spherical_polygon_from_sides({1, 1, 1});
  EXPECT_TRUE(p.center_inside);
  EXPECT_NEAR(p.area, angle_area(1, 1, 1, Geometry::Spherical), 1e-12);
}

TEST(SphericalPolygon, Errors) {
  EXPECT_EQ(kind_of([] { spherical_polygon_from_sides({2 * M_PI / 3, 2 * M_PI / 3, 2 * M_PI / 3}); }),
            ErrorKind::Degenerate);
  EXPECT_EQ(kind_of([] { spherical_polygon_from_sides({1, 0.5, 0.5}); }), ErrorKind::Degenerate);
  EXPECT_EQ(kind_of([] { spherical_polygon_from_sides({3, 3, 3}); }), ErrorKind::Infeasible);
  EXPECT_EQ(kind_of([] { spherical_polygon_from_sides({1, 1}); }), ErrorKind::Infeasible);
}

TEST(SuspensionLift, Ratios) {
  EXPECT_EQ(suspension_lift_areas({1, 1, 1}, 2), (std::vector<double>{2, 2, 2}));
  const std::vector<double> up = suspension_lift_areas({1, 2}, 3);
  EXPECT_NEAR(up[0], M_PI / 2, 1e-15);
  EXPECT_NEAR(up[1], M_PI, 1e-15);
  EXPECT_EQ(suspension_lift_areas({0, 0, 0}, 2), (std::vector<double>{0, 0, 0}));
  EXPECT_TRUE(check_necessary(suspension_lift_areas({1, 1, 1}, 2), std::nullopt, 3,
                              Geometry::Spherical).all_pass);
  EXPECT_EQ(kind_of([] { suspension_lift_areas({1}, 1); }), ErrorKind::OutOfRange);
}

TEST(SuspensionLift, PreservesNecessaryConditions) {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 2 + trial % 3;
    std::vector<double> S(3 + trial % 4);
    for (double& s : S) s = rng.uniform(0.0, 3.0);
    const bool before = check_necessary(S, std::nullopt, dim, Geometry::Spherical).all_pass;
    const std::vector<double> up = suspension_lift_areas(S, dim);
    if (before) {
      EXPECT_TRUE(check_necessary(up, std::nullopt, dim + 1, Geometry::Spherical).all_pass);
    }
  }
}

TEST(MaxSimplexVolume, Constants) {
  EXPECT_EQ(hyp_max_simplex_volume(2), M_PI);
  EXPECT_NEAR(hyp_max_simplex_volume(3), 1.0149416, 1e-6);
  EXPECT_NEAR(lobachevsky_v3_quadrature(), hyp_max_simplex_volume(3), 1e-6);
  EXPECT_EQ(kind_of([] { hyp_max_simplex_volume(4); }), ErrorKind::Unsupported);
}
