// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#include "facetforge/tetra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "facetforge/error.hpp"

namespace facetforge {
namespace {

constexpr double kPi = M_PI;
constexpr double kZeroNorm = 1e-14;

double lorentz_norm(const ModelPoint& v) {
  return std::sqrt(std::max(0.0, lorentz(v, v)));
}

std::array<double, 4> face_areas_raw(const Tetra& v, Geometry g) {
  double d[4][4];
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) d[i][j] = d[j][i] = model_distance(v[i], v[j], g);
  }
  std::array<double, 4> s{};
  for (int i = 0; i < 4; ++i) {
    int idx[3], k = 0;
    for (int j = 0; j < 4; ++j) {
      if (j != i) idx[k++] = j;
    }
    s[i] = triangle_area_from_sides(d[idx[0]][idx[1]], d[idx[0]][idx[2]],
                                    d[idx[1]][idx[2]], g);
  }
  return s;
}

void check_curved(Geometry g) {
  if (g == Geometry::Euclidean) {
    fail(ErrorKind::Unsupported, "tetrahedra are built in H^3 or S^3");
  }
}

// Direction change between consecutive boundary samples, in (-pi, pi].
double turn(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
}

struct BoundaryScan {
  double total_turn = 0.0;
  bool zero = false;
  double zx = 0.0, zy = 0.0;
  double min_norm = std::numeric_limits<double>::infinity();
  int winding() const { return static_cast<int>(std::lround(total_turn / (2.0 * kPi))); }
};

BoundaryScan scan_boundary(const Field2& F, const Rect2& r, int samples) {
  BoundaryScan scan;
  const double cx[5] = {r.x0, r.x1, r.x1, r.x0, r.x0};
  const double cy[5] = {r.y0, r.y0, r.y1, r.y1, r.y0};
  auto eval = [&](double x, double y) {
    const Eigen::Vector2d f = F(x, y);
    const double n = f.norm();
    scan.min_norm = std::min(scan.min_norm, n);
    if (n <= kZeroNorm && !scan.zero) {
      scan.zero = true;
      scan.zx = x;
      scan.zy = y;
    }
    return f;
  };
  auto refine = [&](auto&& self, double ax, double ay, const Eigen::Vector2d& fa,
                    double bx, double by, const Eigen::Vector2d& fb,
                    int depth) -> void {
    if (scan.zero) return;
    const double a = turn(fa, fb);
    if (std::abs(a) > kPi / 4.0 && depth < 40) {
      const double mx = 0.5 * (ax + bx), my = 0.5 * (ay + by);
      const Eigen::Vector2d fm = eval(mx, my);
      self(self, ax, ay, fa, mx, my, fm, depth + 1);
      self(self, mx, my, fm, bx, by, fb, depth + 1);
    } else {
      scan.total_turn += a;
    }
  };
  Eigen::Vector2d prev = eval(cx[0], cy[0]);
  double px = cx[0], py = cy[0];
  for (int side = 0; side < 4; ++side) {
    for (int j = 1; j <= samples; ++j) {
      const double s = static_cast<double>(j) / samples;
      const double x = j == samples ? cx[side + 1] : cx[side] + s * (cx[side + 1] - cx[side]);
      const double y = j == samples ? cy[side + 1] : cy[side] + s * (cy[side + 1] - cy[side]);
      const Eigen::Vector2d cur = eval(x, y);
      refine(refine, px, py, prev, x, y, cur, 0);
      if (scan.zero) return scan;
      prev = cur;
      px = x;
      py = y;
    }
  }
  return scan;
}

double regular_face_area(double edge, Geometry g) {
  return triangle_area_from_sides(edge, edge, edge, g);
}

Tetra regular_tetra(double S, Geometry g) {
  if (!(S > 0.0) || !(S < kPi)) {
    fail(ErrorKind::OutOfRange, "regular face area must lie in (0, pi)");
  }
  Tetra v;
  if (g == Geometry::Spherical && S == kPi / 2.0) {
    for (int i = 0; i < 4; ++i) v[i] = ModelPoint::Unit(i);
    return v;
  }
  double lo = 0.0;
  double hi = g == Geometry::Spherical ? std::acos(-1.0 / 3.0) : 60.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (regular_face_area(mid, g) < S) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double edge = 0.5 * (lo + hi);
  if (g == Geometry::Spherical) {
    const double c = std::cos(edge);
    Eigen::Matrix4d G = Eigen::Matrix4d::Constant(c);
    G.diagonal().setOnes();
    const Eigen::Matrix4d L = Eigen::LLT<Eigen::Matrix4d>(G).matrixL();
    for (int i = 0; i < 4; ++i) v[i] = L.row(i).transpose();
  } else {
    const double beta = std::sqrt(3.0 * (std::cosh(edge) - 1.0) / 4.0);
    const double w[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    for (int i = 0; i < 4; ++i) {
      v[i] << std::sqrt(1.0 + beta * beta), beta * w[i][0] / std::sqrt(3.0),
          beta * w[i][1] / std::sqrt(3.0), beta * w[i][2] / std::sqrt(3.0);
    }
  }
  return v;
}

double normalized_determinant(const Tetra& v) {
  Eigen::Matrix4d M;
  for (int i = 0; i < 4; ++i) M.col(i) = v[i].normalized();
  return std::abs(M.determinant());
}

void fill_witness(TetraConfig& cfg) {
  const Tetra& v = cfg.vertices;
  auto margin = [&](const Eigen::Vector4d& w) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : v) m = std::min(m, w.dot(p));
    return m;
  };
  Eigen::Vector4d w = (ModelPoint::Unit(0) + ModelPoint::Unit(1)).normalized();
  double m = margin(w);
  Eigen::Vector4d c = v[0] + v[1] + v[2] + v[3];
  if (c.norm() > 0.0) {
    c.normalize();
    const double mc = margin(c);
    if (mc > m) {
      w = c;
      m = mc;
    }
  }
  cfg.witness = w;
  cfg.witness_margin = m;
}

bool fc1_holds(const std::array<double, 4>& S, Geometry g) {
  const double lhs = std::tan(S[0] / 2.0);
  const double c = std::cos(S[3]);
  if (!(c > 0.0)) return false;
  const double rhs = (1.0 - c) / (2.0 * std::sqrt(c));
  return g == Geometry::Hyperbolic ? lhs > rhs : lhs >= rhs;
}

bool fc2_holds(const std::array<double, 4>& S) { return S[3] >= S[2] + S[1]; }

void check_targets(const std::array<double, 4>& S, Geometry g) {
  check_curved(g);
  for (int i = 0; i < 4; ++i) {
    if (!(S[i] > 0.0) || !std::isfinite(S[i])) {
      fail(ErrorKind::InvalidInput, "facet areas must be positive");
    }
    if (i > 0 && S[i] < S[i - 1]) {
      fail(ErrorKind::InvalidInput, "facet areas must be non-decreasing");
    }
  }
}

}  // namespace

double lorentz(const ModelPoint& p, const ModelPoint& q) {
  return -p(0) * q(0) + p(1) * q(1) + p(2) * q(2) + p(3) * q(3);
}

double model_distance(const ModelPoint& p, const ModelPoint& q, Geometry g) {
  if (g == Geometry::Spherical) {
    return 2.0 * std::atan2((p - q).norm(), (p + q).norm());
  }
  if (g == Geometry::Hyperbolic) {
    const double c = -lorentz(p, q);
    if (c > 2.0) return std::acosh(c);
    return 2.0 * std::asinh(lorentz_norm(p - q) / 2.0);
  }
  return (p - q).norm();
}

Tetra place_tetra(double x, double phi, double t, double S3, double S4,
                  Geometry g) {
  check_curved(g);
  if (S3 > S4) fail(ErrorKind::PreconditionViolated, "need S3 <= S4");
  if (g == Geometry::Hyperbolic) {
    if (!(2.0 * std::sinh(t / 2.0) > std::tan(S4))) {
      fail(ErrorKind::PreconditionViolated, "2 sinh(t/2) <= tan S4");
    }
  } else if (std::abs(t - kPi / 2.0) > 1e-12 || S4 > kPi / 2.0) {
    fail(ErrorKind::PreconditionViolated, "spherical case needs t = pi/2, S4 <= pi/2");
  }
  const double y4 = f_tS(x, t, S3, g);
  const double y3 = f_tS(x, t, S4, g);
  Tetra v;
  if (g == Geometry::Hyperbolic) {
    v[0] << std::cosh(x), -std::sinh(x), 0.0, 0.0;
    v[1] << std::cosh(t - x), std::sinh(t - x), 0.0, 0.0;
    v[2] << std::cosh(y3), 0.0, std::sinh(y3) * std::cos(phi),
        std::sinh(y3) * std::sin(phi);
    v[3] << std::cosh(y4), 0.0, std::sinh(y4), 0.0;
  } else {
    const ModelPoint H(std::cos(x), std::sin(x), 0.0, 0.0);
    v[0] = ModelPoint::Unit(0);
    v[1] = ModelPoint::Unit(1);
    v[2] = std::cos(y3) * H +
           std::sin(y3) * ModelPoint(0.0, 0.0, std::cos(phi), std::sin(phi));
    v[3] = std::cos(y4) * H + std::sin(y4) * ModelPoint::Unit(2);
  }
  return v;
}

std::array<double, 4> tetra_face_areas(const Tetra& v, Geometry g) {
  check_curved(g);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (model_distance(v[i], v[j], g) <= 1e-14) {
        fail(ErrorKind::DegenerateFace, "coincident vertices");
      }
    }
  }
  const std::array<double, 4> s = face_areas_raw(v, g);
  for (int i = 0; i < 4; ++i) {
    if (!(s[i] > 0.0)) {
      fail(ErrorKind::DegenerateFace,
           "face opposite vertex " + std::to_string(i + 1) + " has zero area");
    }
  }
  return s;
}

Eigen::Vector2d residual(double x, double phi, const TetraProblem& p) {
  const Tetra v = place_tetra(x, phi, p.t, p.S[2], p.S[3], p.geometry);
  const std::array<double, 4> s = face_areas_raw(v, p.geometry);
  return Eigen::Vector2d(s[1] - p.S[1], s[0] - p.S[0]);
}

int winding_number(const Field2& F, const Rect2& r, int samples) {
  if (samples < 1) fail(ErrorKind::InvalidInput, "samples must be positive");
  const BoundaryScan scan = scan_boundary(F, r, samples);
  if (scan.zero) {
    std::ostringstream os;
    os << "field vanishes at (" << scan.zx << ", " << scan.zy << ")";
    fail(ErrorKind::ZeroOnBoundary, os.str());
  }
  return scan.winding();
}

const char* to_string(TetraCase c) {
  switch (c) {
    case TetraCase::Fc1: return "fc1";
    case TetraCase::Fc2: return "fc2";
    case TetraCase::Regular: return "regular";
  }
  return "unknown";
}

TChoice choose_t(const std::array<double, 4>& S, Geometry g) {
  check_targets(S, g);
  std::vector<std::string> failed;
  if (!(S[3] < kPi / 2.0)) failed.push_back("S4 < pi/2");
  if (!(S[3] < S[0] + S[1] + S[2])) failed.push_back("S4 < S1 + S2 + S3");
  const bool fc1 = fc1_holds(S, g);
  const bool fc2 = fc2_holds(S);
  if (!fc1 && !fc2) {
    failed.push_back(g == Geometry::Hyperbolic
                         ? "tan(S1/2) > (1 - cos S4)/(2 sqrt(cos S4))"
                         : "tan(S1/2) >= (1 - cos S4)/(2 sqrt(cos S4))");
    failed.push_back("S4 >= S3 + S2");
  }
  if (!failed.empty()) {
    std::string msg = "failed:";
    for (const auto& f : failed) msg += " [" + f + "]";
    fail(ErrorKind::HypothesesNotMet, msg);
  }
  TChoice out;
  out.which = fc1 ? TetraCase::Fc1 : TetraCase::Fc2;
  if (g == Geometry::Spherical) {
    out.t = kPi / 2.0;
    return out;
  }
  const double tan4 = std::tan(S[3]);
  double t = 1.0;
  while (!(2.0 * std::sinh(t / 2.0) > tan4)) t *= 2.0;
  if (fc1) {
    const double bound = std::tan(S[0] / 2.0);
    for (int k = 0; k <= 60; ++k, t *= 2.0) {
      const double c = std::cosh(h_tS(t, S[3], g));
      if ((c - 1.0) / (2.0 * std::sqrt(c)) < bound) {
        out.t = t;
        return out;
      }
    }
    fail(ErrorKind::NotConverged, "no base length satisfies the bound");
  }
  for (int k = 0; k <= 60 && t < 700.0; ++k, t *= 2.0) {
    bool ok = true;
    for (int j = 0; j <= 32 && ok; ++j) {
      const double phi = kPi * j / 32.0;
      const Tetra a = place_tetra(0.0, phi, t, S[2], S[3], g);
      const Tetra b = place_tetra(t, phi, t, S[2], S[3], g);
      const double s1 = face_areas_raw(a, g)[0];
      const double s2 = face_areas_raw(b, g)[1];
      ok = s1 >= S[1] - 1e-12 && s2 >= S[1] - 1e-12;
    }
    if (ok) {
      out.t = t;
      return out;
    }
  }
  fail(ErrorKind::NotConverged, "boundary inequalities fail for every tried base length");
}

TetraConfig solve_tetra(const std::array<double, 4>& S, Geometry g) {
  check_targets(S, g);
  TetraConfig cfg;
  cfg.geometry = g;
  cfg.targets = S;
  const bool all_equal = S[0] == S[3];
  if (all_equal) {
    cfg.which = TetraCase::Regular;
    cfg.vertices = regular_tetra(S[0], g);
  } else {
    const TChoice choice = choose_t(S, g);
    cfg.which = choice.which;
    cfg.t = choice.t;
    const TetraProblem prob{g, S, choice.t};
    std::map<std::pair<double, double>, Eigen::Vector2d> cache;
    const Field2 F = [&](double x, double phi) {
      const auto key = std::make_pair(x, phi);
      const auto it = cache.find(key);
      if (it != cache.end()) return it->second;
      const Eigen::Vector2d f = residual(x, phi, prob);
      cache.emplace(key, f);
      return f;
    };
    const Rect2 full{0.0, choice.t, 0.0, kPi};
    BoundaryScan top = scan_boundary(F, full, 16);
    const BoundaryScan check = scan_boundary(F, full, 64);
    cfg.winding = top.zero ? 0 : top.winding();
    cfg.winding_check = check.zero ? 0 : check.winding();

    double zx = 0.0, zy = 0.0;
    bool found = false;
    if (top.zero) {
      zx = top.zx;
      zy = top.zy;
      found = true;
    }
    Rect2 cell = full;
    while (!found && std::hypot(cell.x1 - cell.x0, cell.y1 - cell.y0) > 1e-10) {
      const double mx = 0.5 * (cell.x0 + cell.x1);
      const double my = 0.5 * (cell.y0 + cell.y1);
      const Rect2 kids[4] = {{cell.x0, mx, cell.y0, my},
                             {mx, cell.x1, cell.y0, my},
                             {cell.x0, mx, my, cell.y1},
                             {mx, cell.x1, my, cell.y1}};
      int pick = -1;
      int closest = 0;
      double closest_norm = std::numeric_limits<double>::infinity();
      for (int k = 0; k < 4 && pick < 0 && !found; ++k) {
        const BoundaryScan s = scan_boundary(F, kids[k], 8);
        if (s.zero) {
          zx = s.zx;
          zy = s.zy;
          found = true;
        } else if (s.winding() != 0) {
          pick = k;
        } else if (s.min_norm < closest_norm) {
          closest_norm = s.min_norm;
          closest = k;
        }
      }
      if (found) break;
      cell = kids[pick >= 0 ? pick : closest];
      ++cfg.subdivisions;
    }
    if (!found) {
      zx = 0.5 * (cell.x0 + cell.x1);
      zy = 0.5 * (cell.y0 + cell.y1);
    }
    // Newton polish with a finite-difference Jacobian.
    Eigen::Vector2d f = residual(zx, zy, prob);
    for (int it = 0; it < 30 && f.lpNorm<Eigen::Infinity>() > 1e-15; ++it) {
      const double hx = 1e-7 * std::max(1.0, choice.t);
      const double hy = 1e-7;
      const double xa = std::min(zx + hx, choice.t), xb = std::max(zx - hx, 0.0);
      const double ya = std::min(zy + hy, kPi), yb = std::max(zy - hy, 0.0);
      Eigen::Matrix2d J;
      J.col(0) = (residual(xa, zy, prob) - residual(xb, zy, prob)) / (xa - xb);
      J.col(1) = (residual(zx, ya, prob) - residual(zx, yb, prob)) / (ya - yb);
      const Eigen::Vector2d step = J.fullPivLu().solve(-f);
      if (!step.allFinite()) break;
      double lambda = 1.0;
      bool improved = false;
      for (int b = 0; b < 30; ++b, lambda *= 0.5) {
        const double nx = std::clamp(zx + lambda * step(0), 0.0, choice.t);
        const double ny = std::clamp(zy + lambda * step(1), 0.0, kPi);
        const Eigen::Vector2d nf = residual(nx, ny, prob);
        if (nf.norm() < f.norm()) {
          zx = nx;
          zy = ny;
          f = nf;
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }
    cfg.x = zx;
    cfg.phi = zy;
    if (zy < 1e-9 || zy > kPi - 1e-9) {
      fail(ErrorKind::DegenerateOnly, "only a degenerate zero was found");
    }
    cfg.vertices = place_tetra(zx, zy, choice.t, S[2], S[3], g);
  }
  cfg.areas = tetra_face_areas(cfg.vertices, g);
  for (int i = 0; i < 4; ++i) {
    cfg.max_residual = std::max(cfg.max_residual, std::abs(cfg.areas[i] - S[i]));
  }
  cfg.determinant = normalized_determinant(cfg.vertices);
  if (!(cfg.determinant > 1e-10)) {
    fail(ErrorKind::DegenerateOnly, "solved tetrahedron is degenerate");
  }
  if (g == Geometry::Spherical) fill_witness(cfg);
  if (cfg.max_residual > 1e-8) {
    Error err(ErrorKind::NotConverged,
              "NotConverged: facet areas off by " + std::to_string(cfg.max_residual));
    err.residual = cfg.max_residual;
    throw err;
  }
  return cfg;
}

}  // namespace facetforge
