// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#include "facetforge/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "facetforge/error.hpp"
#include "facetforge/euclid.hpp"

namespace facetforge {
namespace {

constexpr double kPi = M_PI;

// S^2 (k = +1) or the hyperboloid sheet (k = -1) in R^3 with the form
// k x0 y0 + x1 y1 + x2 y2 for the hyperbolic case and the dot product on
// the sphere.
struct CurvedModel {
  int k = 1;

  double ip(const Vec3& a, const Vec3& b) const {
    return k > 0 ? a.dot(b) : -a(0) * b(0) + a(1) * b(1) + a(2) * b(2);
  }
  Vec3 J(const Vec3& v) const { return k > 0 ? v : Vec3(-v(0), v(1), v(2)); }
  double C(double d) const { return k > 0 ? std::cos(d) : std::cosh(d); }
  double Sn(double d) const { return k > 0 ? std::sin(d) : std::sinh(d); }
  double dist(const Vec3& a, const Vec3& b) const {
    if (k > 0) return 2.0 * std::atan2((a - b).norm(), (a + b).norm());
    const double c = -ip(a, b);
    if (c > 2.0) return std::acosh(c);
    return 2.0 * std::asinh(std::sqrt(std::max(0.0, ip(a - b, a - b))) / 2.0);
  }
  Geometry geometry() const { return k > 0 ? Geometry::Spherical : Geometry::Hyperbolic; }

  // Turns b about a by the angle tau, keeping |ab|.
  Vec3 rotate_about(const Vec3& a, const Vec3& b, double tau) const {
    const double r = dist(a, b);
    const Vec3 u = (b - C(r) * a) / Sn(r);
    Vec3 w = J(a.cross(u));
    w /= std::sqrt(ip(w, w));
    return C(r) * a + Sn(r) * (std::cos(tau) * u + std::sin(tau) * w);
  }

  // Points at distance r1 from p and r2 from q; false when none exist.
  bool circle_meet(const Vec3& p, const Vec3& q, double r1, double r2,
                   Vec3& x1, Vec3& x2) const {
    const double c = C(dist(p, q));
    const double den = 1.0 - c * c;
    if (std::abs(den) < 1e-300) return false;
    const double c1 = C(r1), c2 = C(r2);
    const double alpha = (c1 - c * c2) / den;
    const double beta = (c2 - c * c1) / den;
    const Vec3 n = J(p.cross(q));
    const double nn = ip(n, n);
    const double g2 = k * (1.0 - (alpha * alpha + 2.0 * alpha * beta * c + beta * beta)) / nn;
    if (!(g2 >= 0.0)) return false;
    const Vec3 base = alpha * p + beta * q;
    x1 = base + std::sqrt(g2) * n;
    x2 = base - std::sqrt(g2) * n;
    return true;
  }
};

std::vector<Vec3> hyperbolic_cyclic_polygon(const std::vector<double>& S) {
  const int m = static_cast<int>(S.size());
  const int imax = static_cast<int>(std::max_element(S.begin(), S.end()) - S.begin());
  auto central = [&](double s, double rho) {
    return 2.0 * std::asin(std::min(1.0, std::sinh(s / 2.0) / std::sinh(rho)));
  };
  auto all = [&](double rho) {
    double t = 0.0;
    for (double s : S) t += central(s, rho);
    return t;
  };
  auto others = [&](double rho) {
    double t = 0.0;
    for (int i = 0; i < m; ++i) {
      if (i != imax) t += central(S[i], rho);
    }
    return t;
  };
  const double rho_min = S[imax] / 2.0;
  const bool inside = all(rho_min) >= 2.0 * kPi;
  auto f = [&](double rho) {
    return inside ? all(rho) - 2.0 * kPi : central(S[imax], rho) - others(rho);
  };
  double lo = rho_min, hi = 40.0;
  if (f(hi) > 0.0) {
    fail(ErrorKind::Unsupported, "side lengths admit no cyclic hyperbolic polygon");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double rho = 0.5 * (lo + hi);
  std::vector<Vec3> out;
  double psi = 0.0;
  for (int i = 0; i < m; ++i) {
    out.emplace_back(std::cosh(rho), std::sinh(rho) * std::cos(psi),
                     std::sinh(rho) * std::sin(psi));
    double d = central(S[i], rho);
    if (!inside && i == imax) d = -d;
    psi += d;
  }
  return out;
}

// Strictly convex and simple: every turn is a left turn and the turns add
// up to one full revolution.
bool convex2(const std::vector<Eigen::Vector2d>& P) {
  const std::size_t m = P.size();
  double turning = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Vector2d u = P[(i + 1) % m] - P[i];
    const Eigen::Vector2d v = P[(i + 2) % m] - P[(i + 1) % m];
    const double cross = u.x() * v.y() - u.y() * v.x();
    if (!(cross > 0.0)) return false;
    turning += std::atan2(cross, u.dot(v));
  }
  return std::abs(turning - 2.0 * kPi) < 1e-6;
}

double shoelace(const std::vector<Eigen::Vector2d>& P) {
  double a = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i) {
    const auto& p = P[i];
    const auto& q = P[(i + 1) % P.size()];
    a += p.x() * q.y() - p.y() * q.x();
  }
  return 0.5 * std::abs(a);
}

// Gnomonic (sphere) or Klein (hyperboloid) chart: geodesics become lines,
// so convexity can be tested in the plane.
bool convex_curved(const std::vector<Vec3>& P, const CurvedModel& model) {
  Vec3 c = Vec3::UnitX();
  if (model.k > 0) {
    c = Vec3::Zero();
    for (const Vec3& p : P) c += p;
    c.normalize();
  }
  Vec3 e1 = c.unitOrthogonal();
  Vec3 e2 = c.cross(e1);
  std::vector<Eigen::Vector2d> Q;
  for (const Vec3& p : P) {
    const double w = p.dot(c);
    if (!(w > 0.0)) return false;
    Q.emplace_back(p.dot(e1) / w, p.dot(e2) / w);
  }
  if (!convex2(Q)) {
    std::reverse(Q.begin(), Q.end());
    return convex2(Q);
  }
  return true;
}

double fan_area(const std::vector<Vec3>& P, const CurvedModel& model) {
  double a = 0.0;
  for (std::size_t i = 1; i + 1 < P.size(); ++i) {
    a += triangle_area_from_sides(model.dist(P[0], P[i]),
                                  model.dist(P[0], P[i + 1]),
                                  model.dist(P[i], P[i + 1]), model.geometry());
  }
  return a;
}

std::vector<int> random_order(int m, SplitMix64& rng) {
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  for (int i = m - 1; i > 0; --i) {
    std::swap(p[i], p[static_cast<int>(rng.below(i + 1))]);
  }
  return p;
}

}  // namespace

McVolume mc_volume(const PolytopeMesh& mesh, long long samples,
                   std::uint64_t seed) {
  McVolume out;
  out.samples = std::max(0LL, samples);
  if (out.samples == 0) {
    out.stderr_ = std::numeric_limits<double>::infinity();
    return out;
  }
  if (mesh.vertices.empty()) fail(ErrorKind::InvalidInput, "empty mesh");
  Vec3 lo = mesh.vertices[0], hi = mesh.vertices[0];
  for (const Vec3& v : mesh.vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const double box = (hi - lo).prod();
  std::vector<Vec3> anchor;
  for (const auto& f : mesh.facets) anchor.push_back(mesh.vertices[f[0]]);
  SplitMix64 rng(seed);
  for (long long s = 0; s < out.samples; ++s) {
    const Vec3 p(rng.uniform(lo.x(), hi.x()), rng.uniform(lo.y(), hi.y()),
                 rng.uniform(lo.z(), hi.z()));
    bool in = true;
    for (std::size_t f = 0; f < mesh.facets.size() && in; ++f) {
      in = mesh.normals[f].dot(p - anchor[f]) <= 0.0;
    }
    if (in) ++out.inside;
  }
  const double p = static_cast<double>(out.inside) / out.samples;
  out.estimate = box * p;
  out.stderr_ = box * std::sqrt(p * (1.0 - p) / out.samples);
  return out;
}

double cayley_menger_volume_from_distances(const Eigen::MatrixXd& D) {
  const int n = static_cast<int>(D.rows());
  if (n < 2 || D.cols() != n) {
    fail(ErrorKind::InvalidInput, "need a square matrix of at least two points");
  }
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!(D(i, j) >= 0.0) || std::abs(D(i, j) - D(j, i)) > 1e-12 * (1.0 + D(i, j)) ||
          (i == j && D(i, j) != 0.0)) {
        fail(ErrorKind::InvalidInput, "distance matrix must be symmetric, >= 0, zero diagonal");
      }
      scale = std::max(scale, D(i, j) * D(i, j));
    }
  }
  const int k = n - 1;
  Eigen::MatrixXd CM = Eigen::MatrixXd::Ones(n + 1, n + 1);
  CM(0, 0) = 0.0;
  CM.bottomRightCorner(n, n) = D.cwiseProduct(D);
  const double det = CM.fullPivLu().determinant();
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  const double sign = (k + 1) % 2 == 0 ? 1.0 : -1.0;
  const double v2 = sign * det / (std::ldexp(1.0, k) * fact * fact);
  if (v2 < 0.0) {
    const double tol = 1e-12 * std::pow(scale, k) / (std::ldexp(1.0, k) * fact * fact);
    if (-v2 > tol) {
      fail(ErrorKind::NegativeDeterminant, "distances are not realizable in Euclidean space");
    }
    return 0.0;
  }
  return std::sqrt(v2);
}

double cayley_menger_volume(const std::vector<VecN>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 2) fail(ErrorKind::InvalidInput, "need at least two points");
  // Reduced form of the bordered determinant: the Gram matrix of the edge
  // vectors from points[0], taken from coordinates rather than distances.
  const int k = n - 1;
  using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  MatrixXld E(points[0].size(), k);
  for (int i = 0; i < k; ++i) {
    if (points[i + 1].size() != points[0].size()) {
      fail(ErrorKind::InvalidInput, "points differ in dimension");
    }
    E.col(i) = points[i + 1].cast<long double>() - points[0].cast<long double>();
  }
  if (E.rows() < k) return 0.0;
  const double g = static_cast<double>((E.transpose() * E).fullPivLu().determinant());
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return std::sqrt(std::max(0.0, g)) / fact;
}

double angle_area_oracle(const ModelPoint& a, const ModelPoint& b,
                         const ModelPoint& c, Geometry g) {
  Eigen::Matrix<double, 4, 3> M;
  if (g == Geometry::Euclidean) {
    M << a, b - a, c - a;
    M.col(0).setZero();
    const Eigen::Vector4d u = b - a, v = c - a;
    const double gram = u.squaredNorm() * v.squaredNorm() - u.dot(v) * u.dot(v);
    if (!(gram > 1e-24 * u.squaredNorm() * v.squaredNorm())) {
      fail(ErrorKind::DegenerateFace, "collinear points");
    }
    return 0.5 * std::sqrt(gram);
  }
  M << a.normalized(), b.normalized(), c.normalized();
  const Eigen::ColPivHouseholderQR<Eigen::Matrix<double, 4, 3>> qr(M);
  if (!(std::abs(qr.matrixR()(2, 2)) > 1e-12)) fail(ErrorKind::DegenerateFace, "points lie on one geodesic");
  auto ip = [&](const ModelPoint& p, const ModelPoint& q) {
    return g == Geometry::Spherical ? p.dot(q) : lorentz(p, q);
  };
  auto angle_at = [&](const ModelPoint& p, const ModelPoint& q, const ModelPoint& r) {
    // Tangent directions at p toward q and r.
    const double sgn = g == Geometry::Spherical ? -1.0 : 1.0;
    ModelPoint u = q + sgn * ip(p, q) * p;
    ModelPoint v = r + sgn * ip(p, r) * p;
    const double nu = std::sqrt(std::max(0.0, ip(u, u)));
    const double nv = std::sqrt(std::max(0.0, ip(v, v)));
    if (!(nu > 1e-14) || !(nv > 1e-14)) {
      fail(ErrorKind::DegenerateFace, "coincident vertices");
    }
    u /= nu;
    v /= nv;
    return 2.0 * std::atan2(std::sqrt(std::max(0.0, ip(u - v, u - v))),
                            std::sqrt(std::max(0.0, ip(u + v, u + v))));
  };
  const double sum = angle_at(a, b, c) + angle_at(b, c, a) + angle_at(c, a, b);
  return g == Geometry::Spherical ? sum - kPi : kPi - sum;
}

PolygonSample sample_polygon_areas(const std::vector<double>& S, Geometry g,
                                   int trials, std::uint64_t seed) {
  const int m = static_cast<int>(S.size());
  if (m < 3) fail(ErrorKind::Infeasible, "need at least 3 sides");
  const double total = std::accumulate(S.begin(), S.end(), 0.0);
  const double largest = *std::max_element(S.begin(), S.end());
  if (!(largest < total - largest)) {
    fail(ErrorKind::Infeasible, "largest side is not shorter than the rest");
  }
  if (g == Geometry::Spherical && total > kPi) {
    fail(ErrorKind::Infeasible, "spherical perimeter exceeds pi");
  }
  PolygonSample out;
  out.min_area = std::numeric_limits<double>::infinity();
  SplitMix64 rng(seed);
  const int moves = m >= 4 ? 4 * m : 0;
  for (int trial = 0; trial < trials; ++trial) {
    const std::vector<int> perm = random_order(m, rng);
    std::vector<double> L(m);
    for (int i = 0; i < m; ++i) L[i] = S[perm[i]];
    double area;
    if (g == Geometry::Euclidean) {
      const ClosedPolygon poly = polygon_from_side_lengths(L);
      std::vector<Eigen::Vector2d> P;
      for (const VecN& v : poly.vertices()) P.emplace_back(v(0), v(1));
      for (int mv = 0; mv < moves; ++mv) {
        const int j = static_cast<int>(rng.below(m));
        const int jp = (j + m - 1) % m, jn = (j + 1) % m, jnn = (j + 2) % m;
        const double tau = rng.uniform(-0.7, 0.7);
        std::vector<Eigen::Vector2d> Q = P;
        const Eigen::Vector2d rel = P[j] - P[jp];
        Q[j] = P[jp] + Eigen::Vector2d(std::cos(tau) * rel.x() - std::sin(tau) * rel.y(),
                                       std::sin(tau) * rel.x() + std::cos(tau) * rel.y());
        const double r0 = L[j], r1 = L[jn];
        const Eigen::Vector2d d = P[jnn] - Q[j];
        const double dd = d.norm();
        if (dd > r0 + r1 || dd < std::abs(r0 - r1) || dd == 0.0) continue;
        const double a = (r0 * r0 - r1 * r1 + dd * dd) / (2.0 * dd);
        const double h = std::sqrt(std::max(0.0, r0 * r0 - a * a));
        const Eigen::Vector2d e = d / dd, perp(-e.y(), e.x());
        const Eigen::Vector2d q1 = Q[j] + a * e + h * perp, q2 = Q[j] + a * e - h * perp;
        Q[jn] = (q1 - P[jn]).norm() <= (q2 - P[jn]).norm() ? q1 : q2;
        if (!convex2(Q)) continue;
        P = std::move(Q);
        ++out.moves;
      }
      area = shoelace(P);
    } else {
      const CurvedModel model{g == Geometry::Spherical ? 1 : -1};
      std::vector<Vec3> P = g == Geometry::Spherical
                                ? spherical_polygon_from_sides(L).vertices
                                : hyperbolic_cyclic_polygon(L);
      for (int mv = 0; mv < moves; ++mv) {
        const int j = static_cast<int>(rng.below(m));
        const int jp = (j + m - 1) % m, jn = (j + 1) % m, jnn = (j + 2) % m;
        const double tau = rng.uniform(-0.7, 0.7);
        std::vector<Vec3> Q = P;
        Q[j] = model.rotate_about(P[jp], P[j], tau);
        Vec3 x1, x2;
        if (!model.circle_meet(Q[j], P[jnn], L[j], L[jn], x1, x2)) continue;
        Q[jn] = model.dist(x1, P[jn]) <= model.dist(x2, P[jn]) ? x1 : x2;
        if (!convex_curved(Q, model)) continue;
        P = std::move(Q);
        ++out.moves;
      }
      area = fan_area(P, model);
    }
    out.min_area = std::min(out.min_area, area);
    out.max_area = std::max(out.max_area, area);
    ++out.trials;
  }
  return out;
}

}  // namespace facetforge
