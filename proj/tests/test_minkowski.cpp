// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "facetforge/error.hpp"
#include "facetforge/euclid.hpp"
#include "facetforge/geom_core.hpp"
#include "facetforge/minkowski.hpp"
#include "facetforge/rng.hpp"

using namespace facetforge;

namespace {

std::vector<Vec3> cube_normals() {
  return {Vec3::UnitX(), -Vec3::UnitX(), Vec3::UnitY(),
          -Vec3::UnitY(), Vec3::UnitZ(), -Vec3::UnitZ()};
}

std::vector<Vec3> tetra_normals() {
  return {Vec3(1, 1, 1).normalized(), Vec3(1, -1, -1).normalized(),
          Vec3(-1, 1, -1).normalized(), Vec3(-1, -1, 1).normalized()};
}

struct Instance {
  SurfaceData data;
  VecN h;
  double volume = 0.0;
};

// Areas read off a random polytope, so a solution is known to exist.
Instance random_instance(std::uint64_t seed, int m = 12) {
  SplitMix64 rng(seed);
  for (;;) {
    std::vector<Vec3> n;
    for (int i = 0; i < m; ++i) {
      n.push_back(Vec3(rng.normal(), rng.normal(), rng.normal()).normalized());
    }
    VecN h(m);
    for (int i = 0; i < m; ++i) h(i) = rng.uniform(0.8, 1.2);
    try {
      const SurfaceData probe = make_surface_data(n, std::vector<double>(m, 1.0));
      const HalfspaceResult r = halfspace_intersection_3d(probe, h);
      if (!r.inactive.empty()) continue;
      Instance inst;
      std::vector<double> areas(m, 0.0);
      for (std::size_t f = 0; f < r.mesh.facets.size(); ++f) {
        areas[r.mesh.facet_label[f]] = r.mesh.areas[f];
      }
      if (*std::min_element(areas.begin(), areas.end()) < 1e-3) continue;
      inst.data = make_surface_data(n, areas);
      inst.h = h;
      inst.volume = r.mesh.volume;
      return inst;
    } catch (const Error&) {
      continue;  // unbounded draw
    }
  }
}

double volume_at(const SurfaceData& d, const VecN& h) {
  return halfspace_intersection_3d(d, h).mesh.volume;
}

}  // namespace

TEST(Feasibility, CubeIsFeasible) {
  const FeasibilityReport r =
      check_feasible(make_surface_data(cube_normals(), std::vector<double>(6, 1.0)));
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.span_rank, 3);
  EXPECT_TRUE(r.max_area_ok);
  EXPECT_NEAR(r.sum_norm, 0.0, 1e-15);
}

TEST(Feasibility, UnbalancedAreasFailClosure) {
  const FeasibilityReport r =
      check_feasible(make_surface_data(cube_normals(), {5, 1, 1, 1, 1, 1}));
  EXPECT_FALSE(r.feasible);
  EXPECT_NEAR(r.sum_norm, 4.0, 1e-14);
  EXPECT_FALSE(r.max_area_ok);
}

TEST(Feasibility, PlanarNormalsHaveRankTwo) {
  std::vector<Vec3> n;
  for (int i = 0; i < 5; ++i) {
    const double a = 2.0 * M_PI * i / 5.0;
    n.emplace_back(std::cos(a), std::sin(a), 0.0);
  }
  const FeasibilityReport r = check_feasible(make_surface_data(n, std::vector<double>(5, 1.0)));
  EXPECT_EQ(r.span_rank, 2);
  EXPECT_FALSE(r.feasible);
}

TEST(AreaJacobian, CubeOffDiagonalIsEdgeLength) {
  const SurfaceData d = make_surface_data(cube_normals(), std::vector<double>(6, 1.0));
  const VecN h = VecN::Constant(6, 0.5);
  const Eigen::MatrixXd J = area_jacobian(d, h);
  const Eigen::MatrixXd Jfd = area_jacobian_fd(d, h, 1e-5);
  EXPECT_NEAR(J(0, 2), h(4) + h(5), 1e-12);
  EXPECT_NEAR(Jfd(0, 2), 1.0, 1e-8);
  EXPECT_NEAR(J(0, 1), 0.0, 1e-15);
  EXPECT_LE((J - Jfd).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(AreaJacobian, SymmetricAndAnnihilatesTranslations) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance inst = random_instance(seed);
    const Eigen::MatrixXd J = area_jacobian(inst.data, inst.h);
    EXPECT_LE((J - J.transpose()).cwiseAbs().maxCoeff(), 1e-8);
    for (int c = 0; c < 3; ++c) {
      VecN u(inst.data.size());
      for (int i = 0; i < u.size(); ++i) u(i) = inst.data.entries[i].u(c);
      EXPECT_LE((J * u).cwiseAbs().maxCoeff(), 1e-8);
    }
    const Eigen::MatrixXd Jfd = area_jacobian_fd(inst.data, inst.h, 1e-5);
    EXPECT_LE((J - Jfd).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(AreaJacobian, InactiveFacetIsReported) {
  std::vector<Vec3> n = cube_normals();
  n.push_back(Vec3(1, 1, 1).normalized());
  const SurfaceData d = make_surface_data(n, std::vector<double>(7, 1.0));
  VecN h = VecN::Constant(7, 0.5);
  h(6) = 5.0;
  try {
    area_jacobian(d, h);
    FAIL() << "expected InactiveFacet";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InactiveFacet);
    EXPECT_EQ(e.index, 6);
  }
}

TEST(VolumeGradient, FiniteDifferencesEqualAreas) {
  for (std::uint64_t seed = 11; seed <= 20; ++seed) {
    const Instance inst = random_instance(seed);
    const VecN A = facet_areas_at(inst.data, inst.h);
    const double step = 1e-5;
    for (int i = 0; i < inst.h.size(); ++i) {
      VecN hp = inst.h, hm = inst.h;
      hp(i) += step;
      hm(i) -= step;
      const double grad = (volume_at(inst.data, hp) - volume_at(inst.data, hm)) / (2 * step);
      EXPECT_NEAR(grad, A(i), 1e-5) << "seed " << seed << " facet " << i;
    }
  }
}

TEST(SolveSupport, Cube) {
  const SolveResult r =
      solve_support(make_surface_data(cube_normals(), std::vector<double>(6, 1.0)));
  EXPECT_NEAR(r.mesh.volume, 1.0, 1e-9);
  for (double a : r.mesh.areas) EXPECT_NEAR(a, 1.0, 1e-9);
  EXPECT_LE(volume_centroid(r.mesh).norm(), 1e-12);
}

TEST(SolveSupport, RegularTetrahedron) {
  const SolveResult r = solve_support(
      make_surface_data(tetra_normals(), std::vector<double>(4, std::sqrt(3.0) / 4.0)));
  EXPECT_NEAR(r.mesh.volume, 1.0 / (6.0 * std::sqrt(2.0)), 1e-9);
}

TEST(SolveSupport, RecoversRandomPolytopes) {
  for (std::uint64_t seed = 31; seed <= 40; ++seed) {
    const Instance inst = random_instance(seed);
    const SolveResult r = solve_support(inst.data);
    EXPECT_NEAR(r.mesh.volume, inst.volume, 1e-9 * inst.volume);
    ASSERT_EQ(r.mesh.facets.size(), static_cast<std::size_t>(inst.data.size()));
    for (std::size_t f = 0; f < r.mesh.facets.size(); ++f) {
      const double want = inst.data.entries[r.mesh.facet_label[f]].S;
      EXPECT_LE(std::abs(r.mesh.areas[f] - want), 1e-9 * want);
    }
    EXPECT_TRUE(gww_check(r.mesh).holds);
  }
}

TEST(SolveSupport, GaugeIndependentOfStart) {
  const Instance inst = random_instance(51);
  SolveOptions a, b;
  b.h0 = VecN::Constant(inst.data.size(), 3.0);
  const SolveResult ra = solve_support(inst.data, a);
  const SolveResult rb = solve_support(inst.data, b);
  EXPECT_NEAR(ra.mesh.volume, rb.mesh.volume, 1e-9);
  const Vec3 ca = volume_centroid(ra.mesh), cb = volume_centroid(rb.mesh);
  ASSERT_EQ(ra.mesh.vertices.size(), rb.mesh.vertices.size());
  for (const Vec3& v : ra.mesh.vertices) {
    double best = 1e300;
    for (const Vec3& w : rb.mesh.vertices) best = std::min(best, ((v - ca) - (w - cb)).norm());
    EXPECT_LE(best, 1e-7);
  }
}

TEST(SolveSupport, FiniteDifferenceJacobianAgrees) {
  const Instance inst = random_instance(61);
  SolveOptions o;
  o.finite_difference_jacobian = true;
  const SolveResult r = solve_support(inst.data, o);
  EXPECT_NEAR(r.mesh.volume, inst.volume, 1e-9 * inst.volume);
}

TEST(SolveSupport, ScalingLaw) {
  const Instance inst = random_instance(71);
  const double lambda = 1.7;
  SurfaceData scaled_data = inst.data;
  for (auto& e : scaled_data.entries) e.S *= lambda * lambda;
  const double v1 = solve_support(inst.data).mesh.volume;
  const double v2 = solve_support(scaled_data).mesh.volume;
  EXPECT_NEAR(v2, std::pow(lambda, 3) * v1, 1e-8 * v2);
}

TEST(SolveSupport, ContinuousInAreas) {
  std::vector<double> areas = {1.0001, 1.0001, 1.0, 1.0, 0.9999, 0.9999};
  const double v0 =
      solve_support(make_surface_data(cube_normals(), std::vector<double>(6, 1.0))).mesh.volume;
  const double v1 = solve_support(make_surface_data(cube_normals(), areas)).mesh.volume;
  EXPECT_LE(std::abs(v1 - v0) / v0, 1e-2);
}

TEST(SolveSupport, SmallVolumeConstructionIsReproduced) {
  const SmallVolumeResult sv = build_small_volume_polytope({1, 1.2, 0.9, 1.1, 1.3}, 0.05);
  std::vector<double> areas = sv.mesh.areas;
  const SurfaceData d = make_surface_data(sv.mesh.normals, areas);
  const SolveResult r = solve_support(d);
  for (std::size_t f = 0; f < r.mesh.facets.size(); ++f) {
    const double want = areas[r.mesh.facet_label[f]];
    EXPECT_LE(std::abs(r.mesh.areas[f] - want), 1e-8 * want);
  }
  EXPECT_NEAR(r.mesh.volume, sv.mesh.volume, 1e-8 * sv.mesh.volume);
}

TEST(SolveSupport, InfeasibleInputIsRejected) {
  try {
    solve_support(make_surface_data(cube_normals(), {5, 1, 1, 1, 1, 1}));
    FAIL() << "expected Infeasible";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Infeasible);
  }
}

TEST(SolveSupport, IterationLimitReportsNotConverged) {
  const Instance inst = random_instance(81);
  try {
    solve_support(inst.data, 1e-14, 1);
    FAIL() << "expected NotConverged";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotConverged);
    EXPECT_EQ(e.iterations, 1);
    EXPECT_GT(e.residual, 0.0);
  }
}
