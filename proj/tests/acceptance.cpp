// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "facetforge/error.hpp"
#include "facetforge/euclid.hpp"
#include "facetforge/geom_core.hpp"
#include "facetforge/minkowski.hpp"
#include "facetforge/noneuclid.hpp"
#include "facetforge/oracle.hpp"
#include "facetforge/planar_infimum.hpp"
#include "facetforge/rng.hpp"
#include "facetforge/tetra.hpp"

using namespace facetforge;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      pass = false;
      detail << what;
    }
  }
};

// Every mesh built during the run, for the surface-diameter-volume check.
std::vector<std::pair<std::string, PolytopeMesh>> g_meshes;

void keep(const std::string& name, const PolytopeMesh& m) { g_meshes.emplace_back(name, m); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

int g_failed = 0;

void report(int id, const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.check(false, std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++g_failed;
  std::printf("[%s] %2d %s (%.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), secs,
              o.pass ? "" : ": ", o.pass ? "" : o.detail.str().c_str());
  std::fflush(stdout);
}

std::vector<double> areas_by_label(const PolytopeMesh& mesh, int m) {
  std::vector<double> a(m, 0.0);
  for (std::size_t f = 0; f < mesh.facets.size(); ++f) a[mesh.facet_label[f]] = mesh.areas[f];
  return a;
}

void minkowski_cube(Outcome& o) {
  std::vector<Vec3> n;
  for (int i = 0; i < 3; ++i) {
    n.push_back(Vec3::Unit(i));
    n.push_back(-Vec3::Unit(i));
  }
  const SolveResult r = solve_support(make_surface_data(n, std::vector<double>(6, 1.0)));
  keep("cube", r.mesh);
  o.check(std::abs(r.mesh.volume - 1.0) <= 1e-9, "volume " + fmt(r.mesh.volume));
  for (double a : areas_by_label(r.mesh, 6)) o.check(std::abs(a - 1.0) <= 1e-9, "area " + fmt(a));
}

void minkowski_tetra(Outcome& o) {
  const double s = 1.0 / std::sqrt(3.0);
  const std::vector<Vec3> n = {Vec3(s, s, s), Vec3(s, -s, -s), Vec3(-s, s, -s), Vec3(-s, -s, s)};
  const SolveResult r =
      solve_support(make_surface_data(n, std::vector<double>(4, std::sqrt(3.0) / 4.0)));
  keep("regular tetrahedron", r.mesh);
  const double exact = 1.0 / (6.0 * std::sqrt(2.0));
  o.check(std::abs(r.mesh.volume - exact) <= 1e-7, "volume " + fmt(r.mesh.volume));
}

void needle_family(Outcome& o) {
  for (double eps : {0.2, 0.1, 0.05, 0.01}) {
    const PolytopeMesh m = needle_tetrahedron(eps);
    keep("needle " + fmt(eps), m);
    for (double a : m.areas) {
      o.check(std::abs(a - 2.0) <= 1e-9, "eps " + fmt(eps) + " area " + fmt(a));
    }
    const double exact = 4.0 * eps / 3.0 * std::sqrt(1.0 - std::pow(eps, 4) / 4.0);
    o.check(std::abs(m.volume - exact) <= 1e-12,
            "eps " + fmt(eps) + " volume off by " + fmt(m.volume - exact));
    const BoundInputs in = measure_bound_inputs(m);
    try {
      const VolumeBound b = facet_volume_bound(in);
      o.check(m.volume <= b.simplified, "eps " + fmt(eps) + " volume above the bound " +
                                            fmt(b.simplified));
    } catch (const Error& e) {
      o.check(false, "eps " + fmt(eps) + " bound not applicable at measured tilt " +
                         fmt(in.eps) + ", separation " + fmt(in.beta) + ": " + e.what());
    }
  }
}

void shrink(Outcome& o) {
  const std::vector<double> S(5, 1.0);
  for (double target : {1e-1, 1e-2, 1e-3}) {
    const auto start = std::chrono::steady_clock::now();
    const SmallVolumeResult r = build_small_volume_polytope(S, target);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    keep("shrink " + fmt(target), r.mesh);
    o.check(r.mesh.volume <= target, "target " + fmt(target) + " volume " + fmt(r.mesh.volume));
    o.check(secs < 10.0, "target " + fmt(target) + " took " + fmt(secs) + " s");
    o.check(r.mesh.areas.size() == S.size(), "target " + fmt(target) + " facet count");
    for (std::size_t i = 0; i < r.mesh.areas.size(); ++i) {
      const double want = S[r.order[i]];
      o.check(std::abs(r.mesh.areas[i] - want) <= 1e-6 * want,
              "target " + fmt(target) + " area " + fmt(r.mesh.areas[i]));
    }
  }
}

void variational_identity(Outcome& o) {
  int found = 0;
  for (std::uint64_t seed = 1; found < 10; ++seed) {
    SplitMix64 rng(seed);
    const int m = 8 + static_cast<int>(rng.below(8));
    std::vector<Vec3> n;
    for (int i = 0; i < m; ++i) n.push_back(Vec3(rng.normal(), rng.normal(), rng.normal()).normalized());
    VecN h(m);
    for (int i = 0; i < m; ++i) h(i) = rng.uniform(0.8, 1.2);
    SurfaceData data;
    HalfspaceResult base;
    try {
      data = make_surface_data(n, std::vector<double>(m, 1.0));
      base = halfspace_intersection_3d(data, h);
    } catch (const Error&) {
      continue;  // unbounded draw
    }
    if (!base.inactive.empty()) continue;
    ++found;
    keep("variational instance", base.mesh);
    const std::vector<double> A = areas_by_label(base.mesh, m);
    const double step = 1e-5;
    for (int i = 0; i < m; ++i) {
      VecN hp = h, hm = h;
      hp(i) += step;
      hm(i) -= step;
      const double d = (halfspace_intersection_3d(data, hp).mesh.volume -
                        halfspace_intersection_3d(data, hm).mesh.volume) /
                       (2.0 * step);
      o.check(std::abs(d - A[i]) <= 1e-5, "seed " + std::to_string(seed) + " facet " +
                                              std::to_string(i) + " off by " + fmt(d - A[i]));
    }
  }
}

void slope_sharpness(Outcome& o) {
  for (int i = 0; i < 10; ++i) {
    const double beta = 0.2 + i * (M_PI / 2 - 0.2) / 9.0;
    for (int j = 0; j < 10; ++j) {
      const double eps = beta / 2.0 * ((j + 1) / 10.0);
      const double measured = slope_sharp_example_angle(eps, beta);
      const double expected = std::asin(std::sin(eps) / std::sin(beta / 2.0));
      o.check(std::abs(measured - expected) <= 1e-9,
              "eps " + fmt(eps) + " beta " + fmt(beta) + " off by " + fmt(measured - expected));
    }
  }
}

// Textbook Heron over all three-class labellings of the sides.
double heron_enumeration(const std::vector<double>& S) {
  const int m = static_cast<int>(S.size());
  int total = 1;
  for (int i = 0; i < m; ++i) total *= 3;
  double best = std::numeric_limits<double>::infinity();
  for (int code = 0; code < total; ++code) {
    double t[3] = {0, 0, 0};
    bool used[3] = {false, false, false};
    for (int i = 0, c = code; i < m; ++i, c /= 3) {
      t[c % 3] += S[i];
      used[c % 3] = true;
    }
    if (!used[0] || !used[1] || !used[2]) continue;
    if (t[0] > t[1] + t[2] || t[1] > t[0] + t[2] || t[2] > t[0] + t[1]) continue;
    const double s = (t[0] + t[1] + t[2]) / 2.0;
    best = std::min(best, std::sqrt(s * (s - t[0]) * (s - t[1]) * (s - t[2])));
  }
  return best;
}

void planar_infimum(Outcome& o) {
  const std::vector<double> S = {2, 1, 1, 1};
  const double v = infimum_convex(S, Geometry::Euclidean).value;
  const double brute = heron_enumeration(S);
  o.check(v == brute, "enumeration differs: " + fmt(v - brute));
  o.check(std::abs(v - 0.9682458) <= 1e-7, "value " + fmt(v));
  const PolygonSample p = sample_polygon_areas(S, Geometry::Euclidean, 10000);
  o.check(p.min_area >= v - 1e-9, "sampled area " + fmt(p.min_area) + " below the infimum");
  const double zero = infimum_convex({1, 1, 1, 1}, Geometry::Euclidean).value;
  o.check(zero == 0.0, "(1,1,1,1) gives " + fmt(zero));
}

bool first_condition(const std::array<double, 4>& S, Geometry g) {
  const double lhs = std::tan(S[0] / 2.0), c = std::cos(S[3]);
  const double rhs = (1.0 - c) / (2.0 * std::sqrt(c));
  return g == Geometry::Hyperbolic ? lhs > rhs : lhs >= rhs;
}

void check_tetra(Outcome& o, const std::array<double, 4>& S, Geometry g, bool need_winding) {
  std::ostringstream name;
  name << "(" << S[0] << "," << S[1] << "," << S[2] << "," << S[3] << ")";
  const TetraConfig c = solve_tetra(S, g);
  o.check(c.max_residual <= 1e-8, name.str() + " residual " + fmt(c.max_residual));
  if (need_winding) o.check(c.winding == 1, name.str() + " winding " + std::to_string(c.winding));
  const int opp[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
  for (int i = 0; i < 4; ++i) {
    const double a = angle_area_oracle(c.vertices[opp[i][0]], c.vertices[opp[i][1]],
                                       c.vertices[opp[i][2]], g);
    o.check(std::abs(a - S[i]) <= 1e-7, name.str() + " angle area " + fmt(a));
  }
  if (g == Geometry::Spherical && c.which != TetraCase::Regular) {
    o.check(c.witness_margin > 0.0, name.str() + " not in an open hemisphere");
  }
}

void tetra_family(Outcome& o, Geometry g, std::uint64_t seed) {
  SplitMix64 rng(seed);
  int solved = 0;
  while (solved < 20) {
    std::array<double, 4> S;
    for (double& s : S) s = rng.uniform(0.05, 1.5);
    std::sort(S.begin(), S.end());
    if (!(S[3] < M_PI / 2) || !(S[3] < S[0] + S[1] + S[2])) continue;
    if (!first_condition(S, g) && !(S[3] >= S[2] + S[1])) continue;
    check_tetra(o, S, g, true);
    ++solved;
  }
}

void spherical_tetra(Outcome& o) {
  tetra_family(o, Geometry::Spherical, 9);
  const std::array<double, 4> octant = {M_PI / 2, M_PI / 2, M_PI / 2, M_PI / 2};
  const TetraConfig c = solve_tetra(octant, Geometry::Spherical);
  for (double s : c.areas) o.check(std::abs(s - M_PI / 2) <= 1e-12, "octant face " + fmt(s));
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double d = model_distance(c.vertices[i], c.vertices[j], Geometry::Spherical);
      o.check(std::abs(d - M_PI / 2) <= 1e-12, "octant edge " + fmt(d));
    }
  }
  check_tetra(o, octant, Geometry::Spherical, false);
}

void foot_height(Outcome& o) {
  for (int i = 0; i < 20; ++i) {
    const double t = 0.25 + i * 0.5;
    const double cap = std::atan(2.0 * std::sinh(t / 2.0));
    for (int j = 0; j < 20; ++j) {
      const double S = std::min((j + 0.5) / 20.0 * cap, 1.5);
      double lo = 0.0, hi = 1.0;
      while (construction_area(0.0, hi, t, Geometry::Hyperbolic) < S) hi *= 2.0;
      for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (construction_area(0.0, mid, t, Geometry::Hyperbolic) < S ? lo : hi) = mid;
      }
      const double root = 0.5 * (lo + hi);
      const double h = h_tS(t, S, Geometry::Hyperbolic);
      o.check(std::abs(h - root) <= 1e-10,
              "t " + fmt(t) + " S " + fmt(S) + " off by " + fmt(h - root));
    }
  }
  for (double S : {0.1, 0.3, 0.7, 1.2}) {
    const double gap = std::abs(std::cosh(h_tS(20.0, S, Geometry::Hyperbolic)) - 1.0 / std::cos(S));
    o.check(gap <= 1e-3, "t 20 S " + fmt(S) + " gap " + fmt(gap));
  }
}

void surface_diameter_volume(Outcome& o) {
  // Steep examples and random hulls join the meshes built above.
  for (int m : {6, 8, 12}) {
    for (double eps : {0.3, 0.1}) keep("steep example", steep_example_3d(m, eps).mesh);
  }
  SplitMix64 rng(77);
  for (int i = 0; i < 20; ++i) {
    std::vector<Vec3> pts;
    for (int j = 0; j < 12; ++j) pts.emplace_back(rng.normal(), 0.1 * rng.normal(), rng.normal());
    keep("random hull", convex_hull_3d(pts));
  }
  for (const auto& [name, mesh] : g_meshes) {
    const GwwReport r = gww_check(mesh);
    o.check(r.holds, name + ": " + fmt(r.lhs) + " vs " + fmt(r.rhs));
  }
  o.detail << "";
  std::printf("     checked %zu meshes\n", g_meshes.size());
}

void suspension_lift(Outcome& o) {
  const std::vector<double> lifted = suspension_lift_areas({1, 1, 1}, 2);
  for (double a : lifted) o.check(std::abs(a - 2.0) <= 1e-15, "lifted area " + fmt(a));
  o.check(check_necessary(lifted, std::nullopt, 3, Geometry::Spherical).all_pass,
          "lifted areas fail the necessary conditions");
}

}  // namespace

int main() {
  report(1, "Minkowski cube", minkowski_cube);
  report(2, "Minkowski regular tetrahedron", minkowski_tetra);
  report(3, "needle family", needle_family);
  report(4, "small-volume shrink", shrink);
  report(5, "volume gradient equals facet areas", variational_identity);
  report(6, "slope bound sharpness", slope_sharpness);
  report(7, "convex polygon area infimum", planar_infimum);
  report(8, "hyperbolic tetrahedra", [](Outcome& o) { tetra_family(o, Geometry::Hyperbolic, 8); });
  report(9, "spherical tetrahedra", spherical_tetra);
  report(10, "foot height closed form", foot_height);
  report(11, "surface-diameter-volume inequality", surface_diameter_volume);
  report(12, "suspension lift", suspension_lift);
  std::printf("%d of 12 criteria passed\n", 12 - g_failed);
  return g_failed == 0 ? 0 : 1;
}
