// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#include "facetforge/noneuclid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "facetforge/error.hpp"

namespace facetforge {
namespace {

constexpr double kPi = M_PI;
constexpr double kV3 = 1.0149416064096536;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    fail(ErrorKind::OutOfRange, std::string(name) + " must be positive");
  }
}

// atan of sinh a sinh y / (cosh a + cosh y), safe for large a.
double hyp_leg_term(double a, double y) {
  if (a < y) std::swap(a, y);
  if (a == 0.0) return 0.0;
  const double r = std::tanh(a) * std::sinh(y) / (1.0 + std::cosh(y) / std::cosh(a));
  return std::atan(r);
}

double hyp_leg_term_dy(double a, double y) {
  double r, dr;
  if (a >= y) {
    const double ca = std::cosh(a), cy = std::cosh(y);
    const double q = 1.0 + cy / ca;
    r = std::tanh(a) * std::sinh(y) / q;
    dr = std::tanh(a) * (cy + 1.0 / ca) / (q * q);
  } else {
    const double ca = std::cosh(a), cy = std::cosh(y);
    r = std::sinh(a) * std::sinh(y) / (ca + cy);
    dr = std::sinh(a) * (ca * cy + 1.0) / ((ca + cy) * (ca + cy));
  }
  return dr / (1.0 + r * r);
}

double sph_leg_term(double a, double y) {
  return std::atan2(std::sin(a) * std::sin(y), std::cos(a) + std::cos(y));
}

double sph_leg_term_dy(double a, double y) {
  const double num = std::sin(a) * std::sin(y);
  const double den = std::cos(a) + std::cos(y);
  const double dnum = std::sin(a) * std::cos(y);
  const double dden = -std::sin(y);
  return (dnum * den - num * dden) / (num * num + den * den);
}

void check_triple(double a, double b, double c, Geometry g) {
  for (double v : {a, b, c}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      fail(ErrorKind::InvalidTriple, "side lengths must be finite and >= 0");
    }
  }
  const double scale = a + b + c;
  const double slack = 1e-12 * std::max(scale, 1.0);
  if (a > b + c + slack || b > a + c + slack || c > a + b + slack) {
    std::ostringstream os;
    os << "(" << a << ", " << b << ", " << c
       << ") violates the triangle inequality";
    fail(ErrorKind::InvalidTriple, os.str());
  }
  if (g == Geometry::Spherical && scale > 2.0 * kPi + slack) {
    fail(ErrorKind::InvalidTriple, "spherical perimeter exceeds 2 pi");
  }
}

double heron_kahan(double a, double b, double c) {
  std::array<double, 3> s = {a, b, c};
  std::sort(s.begin(), s.end(), std::greater<>());
  const double x = s[0], y = s[1], z = s[2];
  const double p = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
  return p <= 0.0 ? 0.0 : 0.25 * std::sqrt(p);
}

double lhuilier(double a, double b, double c) {
  const double s = 0.5 * (a + b + c);
  const double p = std::tan(0.5 * s) * std::tan(0.5 * std::max(0.0, s - a)) *
                   std::tan(0.5 * std::max(0.0, s - b)) *
                   std::tan(0.5 * std::max(0.0, s - c));
  if (!(p > 0.0)) return 0.0;
  return 4.0 * std::atan(std::sqrt(p));
}

double hyperbolic_defect(double a, double b, double c) {
  const double s = 0.5 * (a + b + c);
  const double sa = std::max(0.0, s - a);
  const double sb = std::max(0.0, s - b);
  const double sc = std::max(0.0, s - c);
  if (sa == 0.0 || sb == 0.0 || sc == 0.0) return 0.0;
  // Half-angle formula: tan(alpha/2)^2 = sinh(s-b) sinh(s-c) / (sinh s sinh(s-a)).
  auto half = [&](double opp, double u, double v) {
    return std::atan(std::sqrt(std::sinh(u) * std::sinh(v) /
                               (std::sinh(s) * std::sinh(opp))));
  };
  const double alpha = 2.0 * half(sa, sb, sc);
  const double beta = 2.0 * half(sb, sa, sc);
  const double gamma = 2.0 * half(sc, sa, sb);
  return std::max(0.0, kPi - alpha - beta - gamma);
}

}  // namespace

const char* to_string(Geometry g) {
  switch (g) {
    case Geometry::Euclidean: return "euclidean";
    case Geometry::Spherical: return "spherical";
    case Geometry::Hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

Geometry parse_geometry(const std::string& name) {
  if (name == "euclidean") return Geometry::Euclidean;
  if (name == "spherical") return Geometry::Spherical;
  if (name == "hyperbolic") return Geometry::Hyperbolic;
  fail(ErrorKind::InvalidInput, "unknown geometry '" + name + "'");
}

double right_triangle_area(double a, double b, Geometry g) {
  require_positive(a, "a");
  require_positive(b, "b");
  switch (g) {
    case Geometry::Euclidean:
      return 0.5 * a * b;
    case Geometry::Hyperbolic:
      return hyp_leg_term(a, b);
    case Geometry::Spherical:
      if (a > kPi || b > kPi) fail(ErrorKind::OutOfRange, "legs exceed pi");
      if (a + b == kPi) return kPi / 2.0;
      return sph_leg_term(a, b);
  }
  return 0.0;
}

double two_side_area_bound(double d, Geometry g) {
  require_positive(d, "d");
  switch (g) {
    case Geometry::Euclidean:
      return 0.5 * d * d;
    case Geometry::Hyperbolic: {
      const double c = std::cosh(d);
      return 2.0 * std::atan((c - 1.0) / (2.0 * std::sqrt(c)));
    }
    case Geometry::Spherical: {
      if (d > kPi / 2.0) fail(ErrorKind::OutOfRange, "d exceeds pi/2");
      if (d == kPi / 2.0) return kPi;
      const double c = std::cos(d);
      return 2.0 * std::atan((1.0 - c) / (2.0 * std::sqrt(c)));
    }
  }
  return 0.0;
}

double triangle_area_from_sides(double a, double b, double c, Geometry g) {
  check_triple(a, b, c, g);
  switch (g) {
    case Geometry::Euclidean: return heron_kahan(a, b, c);
    case Geometry::Spherical: return lhuilier(a, b, c);
    case Geometry::Hyperbolic: return hyperbolic_defect(a, b, c);
  }
  return 0.0;
}

double construction_area(double x, double y, double t, Geometry g) {
  switch (g) {
    case Geometry::Hyperbolic:
      return hyp_leg_term(x, y) + hyp_leg_term(t - x, y);
    case Geometry::Spherical:
      return sph_leg_term(x, y) + sph_leg_term(t - x, y);
    case Geometry::Euclidean:
      return 0.5 * t * y;
  }
  return 0.0;
}

double f_tS(double x, double t, double S, Geometry g) {
  double lo = 0.0, hi;
  if (g == Geometry::Hyperbolic) {
    if (!(S > 0.0) || !(S < kPi / 2.0)) {
      fail(ErrorKind::PreconditionViolated, "S must lie in (0, pi/2)");
    }
    if (!(2.0 * std::sinh(t / 2.0) > std::tan(S))) {
      fail(ErrorKind::PreconditionViolated, "2 sinh(t/2) <= tan S");
    }
    hi = 1.0;
    while (construction_area(x, hi, t, g) < S) {
      hi *= 2.0;
      if (hi > 1e3) fail(ErrorKind::Internal, "height bracket not found");
    }
  } else if (g == Geometry::Spherical) {
    if (std::abs(t - kPi / 2.0) > 1e-12) {
      fail(ErrorKind::PreconditionViolated, "spherical base must be pi/2");
    }
    if (!(S > 0.0) || S > kPi / 2.0) {
      fail(ErrorKind::PreconditionViolated, "S must lie in (0, pi/2]");
    }
    hi = kPi / 2.0;
  } else {
    fail(ErrorKind::Unsupported, "f_tS is defined for curved geometries");
  }
  if (x < -1e-12 || x > t + 1e-12) {
    fail(ErrorKind::PreconditionViolated, "x must lie in [0, t]");
  }
  x = std::clamp(x, 0.0, t);
  if (g == Geometry::Spherical && S == kPi / 2.0) return kPi / 2.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (construction_area(x, mid, t, g) < S) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double y = 0.5 * (lo + hi);
  for (int k = 0; k < 2; ++k) {
    const double d = g == Geometry::Hyperbolic
                         ? hyp_leg_term_dy(x, y) + hyp_leg_term_dy(t - x, y)
                         : sph_leg_term_dy(x, y) + sph_leg_term_dy(t - x, y);
    if (!(d > 0.0)) break;
    const double next = y - (construction_area(x, y, t, g) - S) / d;
    if (next < lo - 1e-13 || next > hi + 1e-13) break;
    y = next;
  }
  return y;
}

double h_tS(double t, double S, Geometry g) {
  if (g == Geometry::Spherical) {
    if (!(S > 0.0) || S > kPi / 2.0) {
      fail(ErrorKind::PreconditionViolated, "S must lie in (0, pi/2]");
    }
    return S;
  }
  if (g != Geometry::Hyperbolic) {
    fail(ErrorKind::Unsupported, "h_tS is defined for curved geometries");
  }
  if (!(S > 0.0) || !(S < kPi / 2.0)) {
    fail(ErrorKind::PreconditionViolated, "S must lie in (0, pi/2)");
  }
  const double T = std::tan(S);
  if (!(2.0 * std::sinh(t / 2.0) > T)) {
    fail(ErrorKind::PreconditionViolated, "2 sinh(t/2) <= tan S");
  }
  // Numerator and denominator divided by sinh^2 t.
  const double sh = std::sinh(t);
  const double q = T * T / (sh * sh);
  const double c = (q * std::cosh(t) + std::sqrt(1.0 + T * T)) / (1.0 - q);
  return std::acosh(c);
}

double h_tS_quadratic(double t, double S) {
  const double T = std::tan(S);
  if (!(S > 0.0) || !(S < kPi / 2.0) || !(2.0 * std::sinh(t / 2.0) > T)) {
    fail(ErrorKind::PreconditionViolated, "need S in (0, pi/2), 2 sinh(t/2) > tan S");
  }
  // (sh^2 - T^2) c^2 - 2 T^2 ch c - (T^2 ch^2 + sh^2) = 0, divided by sh^2.
  const double sh = std::sinh(t);
  const double coth = 1.0 / std::tanh(t);
  const double A = 1.0 - T * T / (sh * sh);
  const double B = -2.0 * T * T * coth / sh;
  const double C = -(T * T * coth * coth + 1.0);
  const double c = (-B + std::sqrt(B * B - 4.0 * A * C)) / (2.0 * A);
  return std::acosh(c);
}

BkmMax bkm_max(double a, double b, Geometry g) {
  require_positive(a, "a");
  require_positive(b, "b");
  BkmMax out;
  switch (g) {
    case Geometry::Euclidean:
      out.x_max = std::hypot(a, b);
      out.gamma_max = kPi / 2.0;
      out.area_max = 0.5 * a * b;
      break;
    case Geometry::Hyperbolic: {
      const double cr = std::sqrt((std::cosh(a) + std::cosh(b)) / 2.0);
      const double r = std::acosh(cr);
      out.x_max = 2.0 * r;
      out.gamma_max = std::acos(std::tanh(a / 2.0) * std::tanh(b / 2.0));
      auto part = [&](double s) {
        return kPi - 2.0 * std::asin(std::sinh(s / 2.0) / std::sinh(r)) -
               2.0 * std::acos(std::tanh(s / 2.0) / std::tanh(r));
      };
      out.area_max = part(a) + part(b);
      break;
    }
    case Geometry::Spherical: {
      if (!(a + b < kPi)) fail(ErrorKind::OutOfRange, "need a + b < pi");
      const double cr = std::sqrt((std::cos(a) + std::cos(b)) / 2.0);
      const double r = std::acos(cr);
      out.x_max = 2.0 * r;
      out.gamma_max = std::acos(-std::tan(a / 2.0) * std::tan(b / 2.0));
      auto part = [&](double s) {
        return 2.0 * std::asin(std::sin(s / 2.0) / std::sin(r)) +
               2.0 * std::acos(std::tan(s / 2.0) / std::tan(r)) - kPi;
      };
      out.area_max = part(a) + part(b);
      break;
    }
  }
  return out;
}

double sphere_volume(int k) {
  if (k < 1) fail(ErrorKind::OutOfRange, "sphere dimension must be >= 1");
  return 2.0 * std::pow(kPi, (k + 1) / 2.0) / std::tgamma((k + 1) / 2.0);
}

NecessaryReport check_necessary(const std::vector<double>& S,
                                const std::optional<std::vector<int>>& k,
                                int n, Geometry g) {
  NecessaryReport rep;
  const int m = static_cast<int>(S.size());
  if (m == 0) return rep;
  auto add = [&](NecessaryCheck c) {
    rep.all_pass = rep.all_pass && c.pass;
    rep.checks.push_back(std::move(c));
  };
  const double total = std::accumulate(S.begin(), S.end(), 0.0);
  const int imax = static_cast<int>(std::max_element(S.begin(), S.end()) - S.begin());
  NecessaryCheck largest{"largest_area", imax, S[imax], total - S[imax], false};
  largest.pass = largest.lhs <= largest.rhs;
  add(largest);
  if (g == Geometry::Hyperbolic && k) {
    if (static_cast<int>(k->size()) != m) {
      fail(ErrorKind::InvalidInput, "side counts must match the areas");
    }
    double sum = 0.0;
    std::vector<double> deficit(m);
    for (int i = 0; i < m; ++i) {
      deficit[i] = ((*k)[i] - 2) * kPi - S[i];
      sum += deficit[i];
    }
    for (int i = 0; i < m; ++i) {
      NecessaryCheck c{"angle_deficit", i, deficit[i], sum - deficit[i], false};
      c.pass = c.lhs <= c.rhs;
      add(c);
    }
  }
  if (g == Geometry::Spherical) {
    NecessaryCheck c{"total_area", -1, total, sphere_volume(n - 1), false};
    c.pass = c.lhs <= c.rhs;
    add(c);
  }
  return rep;
}

SphericalPolygon spherical_polygon_from_sides(const std::vector<double>& S) {
  const int m = static_cast<int>(S.size());
  if (m < 3) fail(ErrorKind::Infeasible, "need at least 3 sides");
  for (double s : S) {
    if (!(s > 0.0)) fail(ErrorKind::Infeasible, "sides must be positive");
  }
  const double total = std::accumulate(S.begin(), S.end(), 0.0);
  const int imax = static_cast<int>(std::max_element(S.begin(), S.end()) - S.begin());
  const double smax = S[imax];
  if (smax > total - smax || total > 2.0 * kPi) {
    fail(ErrorKind::Infeasible, "no convex spherical polygon with these sides");
  }
  if (smax == total - smax || total == 2.0 * kPi) {
    fail(ErrorKind::Degenerate, "equality case: the polygon degenerates");
  }
  auto central = [&](double s, double rho) {
    return 2.0 * std::asin(std::min(1.0, std::sin(s / 2.0) / std::sin(rho)));
  };
  auto all_angle = [&](double rho) {
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
  const double rho_min = std::asin(std::sin(smax / 2.0));
  SphericalPolygon out;
  out.center_inside = all_angle(rho_min) >= 2.0 * kPi;
  double lo = rho_min, hi = kPi / 2.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f = out.center_inside ? all_angle(mid) - 2.0 * kPi
                                       : central(smax, mid) - others(mid);
    if (f > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double rho = 0.5 * (lo + hi);
  out.circumradius = rho;
  out.side_lengths = S;
  auto point = [&](double psi) {
    return Eigen::Vector3d(std::sin(rho) * std::cos(psi),
                           std::sin(rho) * std::sin(psi), std::cos(rho));
  };
  double psi = 0.0;
  for (int i = 0; i < m; ++i) {
    out.vertices.push_back(point(psi));
    double d = central(S[i], rho);
    const bool reversed = !out.center_inside && i == imax;
    if (reversed) d = -d;
    const double piece = triangle_area_from_sides(rho, rho, S[i], Geometry::Spherical);
    out.area += reversed ? -piece : piece;
    psi += d;
  }
  out.closure_residual = (point(psi) - out.vertices.front()).norm();
  return out;
}

std::vector<double> suspension_lift_areas(const std::vector<double>& areas,
                                          int from_dim) {
  if (from_dim < 2) fail(ErrorKind::OutOfRange, "from_dim must be >= 2");
  const double ratio = sphere_volume(from_dim) / sphere_volume(from_dim - 1);
  std::vector<double> out;
  for (double a : areas) out.push_back(a * ratio);
  const bool before =
      check_necessary(areas, std::nullopt, from_dim, Geometry::Spherical).all_pass;
  const bool after =
      check_necessary(out, std::nullopt, from_dim + 1, Geometry::Spherical).all_pass;
  if (before && !after) {
    fail(ErrorKind::Internal, "lifted areas violate the necessary conditions");
  }
  return out;
}

double hyp_max_simplex_volume(int n) {
  if (n == 2) return kPi;
  if (n == 3) return kV3;
  fail(ErrorKind::Unsupported, "maximal simplex volume known only for n = 2, 3");
}

double lobachevsky_v3_quadrature() {
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double I = integrator.integrate(
      [](double u) { return std::log(2.0 * std::sin(u)); }, 0.0, kPi / 3.0);
  return -3.0 * I;
}

}  // namespace facetforge
