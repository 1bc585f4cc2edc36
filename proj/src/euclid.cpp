// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#include "facetforge/euclid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "facetforge/error.hpp"
#include "facetforge/minkowski.hpp"

namespace facetforge {
namespace {

constexpr double kPi = M_PI;

void check_lengths(const std::vector<double>& S) {
  for (double s : S) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      fail(ErrorKind::InvalidInput, "side lengths must be positive");
    }
  }
}

bool largest_below_rest(const std::vector<double>& S) {
  const double total = std::accumulate(S.begin(), S.end(), 0.0);
  const double largest = *std::max_element(S.begin(), S.end());
  return largest < total - largest;
}

double central_angle(double s, double R) {
  return 2.0 * std::asin(std::min(1.0, s / (2.0 * R)));
}

// Bisection on a function that is positive at lo and negative at hi.
template <class F>
double bisect_sign_change(F f, double lo, double hi) {
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

template <class F>
void for_each_subset(int m, int k, F f) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<double> subset_determinants(const std::vector<VecN>& dirs, int d) {
  std::vector<double> out;
  const int m = static_cast<int>(dirs.size());
  Eigen::MatrixXd M(d, d);
  for_each_subset(m, d, [&](const std::vector<int>& idx) {
    for (int c = 0; c < d; ++c) M.col(c) = dirs[idx[c]].head(d);
    out.push_back(std::abs(M.determinant()));
  });
  std::sort(out.begin(), out.end());
  return out;
}

// Per subset: -(rank deficiency) + p/(1+p), p the product of the nonzero
// singular values. Orders subsets by deficiency first, then by volume, so a
// move that lifts one missing direction counts as progress while the
// determinant is still zero.
std::vector<double> graded_scores(const std::vector<VecN>& dirs, int d) {
  std::vector<double> out;
  const int m = static_cast<int>(dirs.size());
  Eigen::MatrixXd M(d, d);
  for_each_subset(m, d, [&](const std::vector<int>& idx) {
    for (int c = 0; c < d; ++c) M.col(c) = dirs[idx[c]].head(d);
    const VecN sv = Eigen::JacobiSVD<Eigen::MatrixXd>(M).singularValues();
    int deficiency = 0;
    double p = 1.0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
      if (sv(k) < 1e-14) {
        ++deficiency;
      } else {
        p *= sv(k);
      }
    }
    out.push_back(-deficiency + p / (1.0 + p));
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool lex_better(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k] + 1e-15) return true;
    if (a[k] < b[k] - 1e-15) return false;
  }
  return false;
}

std::vector<VecN> unit_sides(const std::vector<VecN>& A) {
  const std::size_t m = A.size();
  std::vector<VecN> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    out[k] = (A[(k + 1) % m] - A[k]).normalized();
  }
  return out;
}

bool planar_convex(const std::vector<VecN>& A) {
  const std::size_t m = A.size();
  for (std::size_t k = 0; k < m; ++k) {
    const VecN a = A[(k + 1) % m] - A[k];
    const VecN b = A[(k + 2) % m] - A[(k + 1) % m];
    if (a(0) * b(1) - a(1) * b(0) <= 0.0) return false;
  }
  return true;
}

VecN random_unit_orthogonal(SplitMix64& rng, int d, const VecN& w,
                            const VecN& o) {
  for (int tries = 0; tries < 32; ++tries) {
    VecN v(d);
    for (int i = 0; i < d; ++i) v(i) = rng.normal();
    v -= v.dot(w) * w;
    v -= v.dot(o) * o;
    const double len = v.norm();
    if (len > 1e-8) return v / len;
  }
  return VecN::Zero(d);
}

Vec3 rotate_about_axis(const Vec3& p, const Vec3& origin, const Vec3& axis,
                       double angle) {
  const Vec3 k = axis.normalized();
  const Vec3 v = p - origin;
  return origin + v * std::cos(angle) + k.cross(v) * std::sin(angle) +
         k * k.dot(v) * (1.0 - std::cos(angle));
}

}  // namespace

std::vector<VecN> ClosedPolygon::vertices() const {
  std::vector<VecN> out;
  if (side_vectors.empty()) return out;
  VecN p = VecN::Zero(side_vectors[0].size());
  for (const VecN& s : side_vectors) {
    out.push_back(p);
    p += s;
  }
  return out;
}

ClosedPolygon polygon_from_side_lengths(const std::vector<double>& S) {
  const int m = static_cast<int>(S.size());
  if (m < 3) fail(ErrorKind::Infeasible, "need at least 3 sides");
  check_lengths(S);
  if (!largest_below_rest(S)) {
    fail(ErrorKind::Infeasible, "largest side is not shorter than the rest");
  }
  const int imax = static_cast<int>(
      std::max_element(S.begin(), S.end()) - S.begin());
  const double smax = S[imax];
  const double r_min = smax / 2.0;
  auto total_angle = [&](double R) {
    double t = 0.0;
    for (double s : S) t += central_angle(s, R);
    return t;
  };
  auto others_angle = [&](double R) {
    double t = 0.0;
    for (int i = 0; i < m; ++i) {
      if (i != imax) t += central_angle(S[i], R);
    }
    return t;
  };
  const double total = std::accumulate(S.begin(), S.end(), 0.0);
  const bool center_inside = total_angle(r_min) >= 2.0 * kPi;
  double R;
  if (center_inside) {
    R = bisect_sign_change([&](double r) { return total_angle(r) - 2.0 * kPi; },
                           r_min, total);
  } else {
    R = bisect_sign_change(
        [&](double r) { return central_angle(smax, r) - others_angle(r); },
        r_min, total);
  }

  ClosedPolygon poly;
  poly.circumradius = R;
  poly.side_lengths = S;
  poly.order.resize(m);
  std::iota(poly.order.begin(), poly.order.end(), 0);
  double phi = 0.0;
  VecN sum = VecN::Zero(2);
  for (int i = 0; i < m; ++i) {
    double dphi = central_angle(S[i], R);
    if (!center_inside && i == imax) dphi = -dphi;
    const double dir = phi + dphi / 2.0 + (dphi > 0 ? kPi / 2.0 : -kPi / 2.0);
    VecN v(2);
    v << S[i] * std::cos(dir), S[i] * std::sin(dir);
    poly.side_vectors.push_back(v);
    sum += v;
    phi += dphi;
  }
  poly.closure_residual = sum.norm();
  return poly;
}

double min_side_determinant(const std::vector<VecN>& sides, int n) {
  std::vector<VecN> dirs;
  for (const VecN& s : sides) dirs.push_back(s.head(n - 1).normalized());
  return subset_determinants(dirs, n - 1).front();
}

std::vector<double> sorted_side_determinants(const std::vector<VecN>& sides,
                                             int n) {
  std::vector<VecN> dirs;
  for (const VecN& s : sides) dirs.push_back(s.head(n - 1).normalized());
  return subset_determinants(dirs, n - 1);
}

GeneralPosition perturb_to_general_position(const std::vector<double>& S_in,
                                            int n, double budget,
                                            std::uint64_t seed) {
  const int m = static_cast<int>(S_in.size());
  if (n < 3) fail(ErrorKind::DimensionError, "dimension must be at least 3");
  if (m <= n) {
    fail(ErrorKind::DimensionError, "need more sides than the dimension");
  }
  check_lengths(S_in);
  if (!largest_below_rest(S_in)) {
    fail(ErrorKind::Infeasible, "largest side is not shorter than the rest");
  }
  if (!(budget > 0.0)) fail(ErrorKind::InvalidInput, "budget must be positive");
  auto same = [](double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max(a, b);
  };
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  if (n == 3 && m == 4) {
    if (same(S_in[0], S_in[1]) && same(S_in[1], S_in[2]) &&
        same(S_in[2], S_in[3])) {
      fail(ErrorKind::RhombException,
           "four equal sides in the plane: the polygon must be a parallelogram");
    }
    if (same(S_in[0], S_in[2]) && same(S_in[1], S_in[3])) order = {0, 2, 1, 3};
  }
  std::vector<double> S(m);
  for (int i = 0; i < m; ++i) S[i] = S_in[order[i]];

  const ClosedPolygon base = polygon_from_side_lengths(S);
  const int d = n - 1;
  std::vector<VecN> A(m, VecN::Zero(d));
  {
    VecN p = VecN::Zero(d);
    for (int k = 0; k < m; ++k) {
      A[k] = p;
      p.head(2) += base.side_vectors[k];
    }
  }
  const std::vector<VecN> origin = A;

  GeneralPosition out;
  std::vector<double> dets = subset_determinants(unit_sides(A), d);
  std::vector<double> score = graded_scores(unit_sides(A), d);
  out.min_det_history.push_back(dets.front());
  const double goal = 1e-3;
  const long long cap = 10 * binomial(m, d);
  const long long max_trials = 1000 * cap;
  SplitMix64 rng(seed);

  for (long long trial = 0;
       trial < max_trials && out.iterations < cap && dets.front() < goal;
       ++trial) {
    std::vector<VecN> B = A;
    const int j = static_cast<int>(rng.below(m));
    const int jp = (j + m - 1) % m;
    const int jn = (j + 1) % m;
    if (n >= 4) {
      // Vertex j moves on the sphere of points at distances S[jp], S[j]
      // from its neighbours.
      const VecN axis = A[jn] - A[jp];
      const double dist = axis.norm();
      const VecN w = axis / dist;
      const double t = (dist * dist + S[jp] * S[jp] - S[j] * S[j]) / (2.0 * dist);
      const VecN c = A[jp] + t * w;
      const VecN o = A[j] - c;
      const double r = o.norm();
      if (r < 1e-12 * S[jp]) continue;
      const VecN v = random_unit_orthogonal(rng, d, w, o / r);
      if (v.norm() == 0.0) continue;
      const double tau = std::min(0.5, budget / r) * rng.uniform();
      B[j] = c + std::cos(tau) * o + std::sin(tau) * r * v;
    } else {
      // Four-bar move: rotate vertex j about j-1, then close through j+2.
      const int jnn = (j + 2) % m;
      const double tau =
          std::min(0.5, budget / S[jp]) * (2.0 * rng.uniform() - 1.0);
      const VecN rel = A[j] - A[jp];
      VecN rot(2);
      rot << std::cos(tau) * rel(0) - std::sin(tau) * rel(1),
          std::sin(tau) * rel(0) + std::cos(tau) * rel(1);
      B[j] = A[jp] + rot;
      const VecN p0 = B[j];
      const VecN p1 = A[jnn];
      const double r0 = S[j], r1 = S[jn];
      const double dd = (p1 - p0).norm();
      if (dd > r0 + r1 || dd < std::abs(r0 - r1) || dd == 0.0) continue;
      const double a = (r0 * r0 - r1 * r1 + dd * dd) / (2.0 * dd);
      const double hh = std::sqrt(std::max(0.0, r0 * r0 - a * a));
      const VecN e = (p1 - p0) / dd;
      VecN perp(2);
      perp << -e(1), e(0);
      const VecN q1 = p0 + a * e + hh * perp;
      const VecN q2 = p0 + a * e - hh * perp;
      B[jn] = (q1 - A[jn]).norm() <= (q2 - A[jn]).norm() ? q1 : q2;
      if (!planar_convex(B)) continue;
    }
    bool within = true;
    for (int k = 0; k < m; ++k) {
      if ((B[k] - origin[k]).norm() > budget) within = false;
    }
    if (!within) continue;
    std::vector<double> cand = graded_scores(unit_sides(B), d);
    if (lex_better(cand, score)) {
      A = std::move(B);
      score = std::move(cand);
      dets = subset_determinants(unit_sides(A), d);
      ++out.iterations;
      out.min_det_history.push_back(dets.front());
    }
  }
  if (dets.front() < 1e-14) {
    std::ostringstream os;
    os << "no general position reached after " << out.iterations
       << " moves";
    Error err(ErrorKind::NotConverged, "NotConverged: " + os.str());
    err.iterations = out.iterations;
    err.residual = dets.front();
    throw err;
  }

  ClosedPolygon& poly = out.polygon;
  poly.side_lengths = S;
  poly.order = order;
  poly.circumradius = base.circumradius;
  VecN sum = VecN::Zero(n);
  for (int k = 0; k < m; ++k) {
    VecN s = VecN::Zero(n);
    s.head(d) = A[(k + 1) % m] - A[k];
    poly.side_vectors.push_back(s);
    sum += s;
    out.max_vertex_move =
        std::max(out.max_vertex_move, (A[k] - origin[k]).norm());
  }
  poly.closure_residual = sum.norm();
  out.b_out = dets.front();
  return out;
}

double needle_volume(double eps) {
  return 4.0 * eps / 3.0 * std::sqrt(1.0 - eps * eps * eps * eps / 4.0);
}

PolytopeMesh needle_tetrahedron(double eps) {
  if (!(eps > 0.0) || !(eps < std::sqrt(2.0))) {
    fail(ErrorKind::OutOfRange, "needle parameter must lie in (0, sqrt 2)");
  }
  const double H = std::sqrt(1.0 - eps * eps * eps * eps / 4.0) / eps;
  const std::vector<Vec3> pts = {
      {eps, 0.0, -H}, {-eps, 0.0, -H}, {0.0, eps, H}, {0.0, -eps, H}};
  return convex_hull_3d(pts);
}

std::vector<VecN> needle_simplex_odd(int k, double eps) {
  if (k < 1) fail(ErrorKind::InvalidInput, "k must be at least 1");
  if (!(eps > 0.0)) fail(ErrorKind::InvalidInput, "eps must be positive");
  const int n = 2 * k + 1;
  const double a = 1.0 / eps;
  // Orthonormal basis of the sum-zero hyperplane of R^(k+1).
  Eigen::MatrixXd G(k + 1, k);
  for (int i = 0; i < k; ++i) {
    G.col(i).setZero();
    G(i, i) = 1.0;
    G(k, i) = -1.0;
  }
  const Eigen::MatrixXd Q =
      Eigen::HouseholderQR<Eigen::MatrixXd>(G).householderQ() *
      Eigen::MatrixXd::Identity(k + 1, k);
  std::vector<VecN> out;
  for (int i = 0; i <= k; ++i) {
    VecN e = VecN::Constant(k + 1, -1.0 / (k + 1));
    e(i) += 1.0;
    const VecN coords = Q.transpose() * (e * (a / std::sqrt(2.0)));
    VecN v = VecN::Zero(n);
    v.tail(k) = coords;
    VecN lo = v, hi = v;
    lo(i) -= eps / 2.0;
    hi(i) += eps / 2.0;
    out.push_back(lo);
    out.push_back(hi);
  }
  return out;
}

SmallVolumeResult build_small_volume_polytope(const std::vector<double>& S,
                                              double eps_target,
                                              std::uint64_t seed) {
  const int m = static_cast<int>(S.size());
  if (m <= 3) fail(ErrorKind::Infeasible, "need more facets than dimension 3");
  check_lengths(S);
  if (!largest_below_rest(S)) {
    fail(ErrorKind::Infeasible, "largest area is not below the sum of the rest");
  }
  if (!(eps_target > 0.0)) {
    fail(ErrorKind::InvalidInput, "volume target must be positive");
  }
  SmallVolumeResult out;
  const bool all_equal =
      std::all_of(S.begin(), S.end(), [&](double s) {
        return std::abs(s - S[0]) <= 1e-12 * S[0];
      });
  if (m == 4 && all_equal) {
    const double k = std::sqrt(S[0] / 2.0);
    double eps = 1.0;
    while (k * k * k * needle_volume(eps) > eps_target) eps /= 2.0;
    out.mesh = scaled(needle_tetrahedron(eps), k);
    out.needle_route = true;
    out.needle_eps = eps;
    out.order = {0, 1, 2, 3};
    out.history.push_back({0.0, out.mesh.volume, true});
    return out;
  }

  const double budget = 0.05 * *std::min_element(S.begin(), S.end());
  const GeneralPosition gp = perturb_to_general_position(S, 3, budget, seed);
  const std::vector<VecN> planar = gp.polygon.vertices();
  std::vector<Vec3> A(m);
  for (int k = 0; k < m; ++k) A[k] = Vec3(planar[k](0), planar[k](1), 0.0);
  out.order = gp.polygon.order;

  std::optional<VecN> warm;
  double alpha = 0.3;
  for (int attempt = 0; attempt <= 40; ++attempt, alpha /= 2.0) {
    std::vector<Vec3> B = A;
    B[1] = rotate_about_axis(A[1], A[0], A[2] - A[0], alpha);
    std::vector<Vec3> normals(m);
    std::vector<double> areas(m);
    for (int k = 0; k < m; ++k) {
      const Vec3 side = B[(k + 1) % m] - B[k];
      normals[k] = side.normalized();
      areas[k] = gp.polygon.side_lengths[k];
    }
    const SurfaceData data = make_surface_data(normals, areas, false);
    SolveOptions opt;
    opt.tol = 1e-10;
    opt.max_iter = 200;
    opt.h0 = warm;
    TiltStep step{alpha, 0.0, false};
    try {
      SolveResult sol = solve_support(data, opt);
      step.volume = sol.mesh.volume;
      step.solved = true;
      warm = sol.h;
      out.history.push_back(step);
      if (sol.mesh.volume <= eps_target) {
        out.mesh = std::move(sol.mesh);
        return out;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotConverged) throw;
      warm.reset();
      out.history.push_back(step);
    }
  }
  fail(ErrorKind::NotConverged, "volume target not reached after 40 halvings");
}

double unit_ball_volume(int k) {
  return std::pow(kPi, k / 2.0) / std::tgamma(k / 2.0 + 1.0);
}

double slope_bound(const BoundInputs& in) {
  if (!(in.eps >= 0.0) || !(in.eps < kPi / 2.0)) {
    fail(ErrorKind::PreconditionViolated, "eps must lie in [0, pi/2)");
  }
  double ratio;
  if (in.n == 3) {
    if (!(in.beta > 0.0) || in.beta > kPi / 2.0) {
      fail(ErrorKind::PreconditionViolated, "beta must lie in (0, pi/2]");
    }
    ratio = std::sin(in.eps) / std::sin(in.beta / 2.0);
    if (ratio > 1.0) {
      fail(ErrorKind::PreconditionViolated, "sin(eps) > sin(beta/2)");
    }
  } else if (in.n > 3) {
    if (!(in.b > 0.0) || in.b > 1.0) {
      fail(ErrorKind::PreconditionViolated, "b must lie in (0, 1]");
    }
    ratio = std::pow(in.n - 1.0, 1.5) * std::sin(in.eps) / in.b;
    if (ratio > 1.0) {
      fail(ErrorKind::PreconditionViolated, "(n-1)^(3/2) sin(eps) > b");
    }
  } else {
    fail(ErrorKind::PreconditionViolated, "dimension must be at least 3");
  }
  return std::asin(ratio);
}

VolumeBound facet_volume_bound(const BoundInputs& in, bool chain_only) {
  const int n = in.n;
  if (n < 3) fail(ErrorKind::PreconditionViolated, "dimension must be >= 3");
  if (!(in.eps >= 0.0) || !(in.eps < kPi / 2.0)) {
    fail(ErrorKind::PreconditionViolated, "eps must lie in [0, pi/2)");
  }
  for (double s : in.S) {
    if (!(s >= 0.0)) fail(ErrorKind::PreconditionViolated, "negative area");
  }
  VolumeBound vb;
  double ratio;
  if (n == 3) {
    if (!(in.beta > 0.0) || in.beta > kPi / 2.0) {
      fail(ErrorKind::PreconditionViolated, "beta must lie in (0, pi/2]");
    }
    ratio = std::sin(in.eps) / std::sin(in.beta / 2.0);
  } else {
    if (!(in.b > 0.0) || in.b > 1.0) {
      fail(ErrorKind::PreconditionViolated, "b must lie in (0, 1]");
    }
    ratio = std::pow(n - 1.0, 1.5) * std::sin(in.eps) / in.b;
  }
  vb.ratio = ratio;
  const double limit = 1.0 / std::sqrt(2.0);
  if (chain_only ? !(ratio < 1.0) : !(ratio <= limit)) {
    std::ostringstream os;
    os << (n == 3 ? "sin(eps)/sin(beta/2)" : "(n-1)^(3/2) sin(eps)/b")
       << " = " << ratio << " exceeds " << (chain_only ? 1.0 : limit);
    fail(ErrorKind::PreconditionViolated, os.str());
  }
  const double p = n / (2.0 * n - 2.0);
  double sum = 0.0;
  for (double s : in.S) sum += std::pow(s, p);
  const double tan_delta = ratio / std::sqrt(1.0 - ratio * ratio);
  const double simple_tan = std::sqrt(2.0) * ratio;
  if (n == 3) {
    vb.chain = sum * sum / (std::sqrt(2.0) * kPi) * std::sqrt(tan_delta);
    vb.simplified = std::pow(2.0, -0.25) / kPi * sum * sum * std::sqrt(ratio);
  } else {
    const double nm1 = n - 1.0;
    const double K =
        std::pow(std::pow(nm1, nm1) * unit_ball_volume(n - 1), -1.0 / (n - 2.0));
    const double c = std::pow(2.0, -1.0 / nm1) *
                     std::pow(unit_ball_volume(n - 2), 1.0 / (nm1 * (n - 2.0))) *
                     std::pow(nm1, n / nm1) * K;
    vb.chain = std::pow(tan_delta, 1.0 / nm1) * c * sum * sum;
    vb.simplified = std::pow(simple_tan, 1.0 / nm1) * c * sum * sum;
  }
  if (ratio > limit) vb.simplified = std::numeric_limits<double>::quiet_NaN();
  return vb;
}

BoundInputs measure_bound_inputs(const PolytopeMesh& mesh) {
  const std::vector<Vec3>& N = mesh.normals;
  auto worst_tilt = [&](const Vec3& z) {
    double t = 0.0;
    for (const Vec3& u : N) t = std::max(t, std::abs(u.dot(z)));
    return t;
  };
  // Start from the direction most orthogonal to all normals.
  Eigen::MatrixXd M(N.size(), 3);
  for (std::size_t i = 0; i < N.size(); ++i) M.row(i) = N[i].transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
  std::vector<Vec3> starts = {svd.matrixV().col(2), Vec3::UnitZ(),
                              Vec3::UnitX(), Vec3::UnitY()};
  Vec3 best_z = Vec3::UnitZ();
  double best = worst_tilt(best_z);
  for (Vec3 z : starts) {
    z.normalize();
    double f = worst_tilt(z);
    int moves = 0;
    for (double step = 0.1; step > 1e-13 && moves < 20000;) {
      const Vec3 e1 = z.unitOrthogonal();
      const Vec3 e2 = z.cross(e1);
      bool moved = false;
      for (int k = 0; k < 8; ++k) {
        const double th = k * kPi / 4.0;
        const Vec3 cand =
            (z + step * (std::cos(th) * e1 + std::sin(th) * e2)).normalized();
        const double fc = worst_tilt(cand);
        if (fc < f - 1e-15) {
          f = fc;
          z = cand;
          moved = true;
          ++moves;
          break;
        }
      }
      if (!moved) step /= 2.0;
    }
    if (f < best) {
      best = f;
      best_z = z;
    }
  }
  BoundInputs in;
  in.n = 3;
  in.eps = std::asin(std::min(1.0, best));
  double beta = kPi / 2.0;
  for (std::size_t i = 0; i < N.size(); ++i) {
    for (std::size_t j = i + 1; j < N.size(); ++j) {
      const double th = std::atan2(N[i].cross(N[j]).norm(), N[i].dot(N[j]));
      beta = std::min(beta, std::min(th, kPi - th));
    }
  }
  in.beta = beta;
  in.S = mesh.areas;
  return in;
}

double slope_sharp_example_angle(double eps, double beta) {
  if (!(eps >= 0.0) || !(beta > 0.0) || beta > kPi / 2.0 ||
      eps > beta / 2.0) {
    fail(ErrorKind::PreconditionViolated, "need 0 <= eps <= beta/2 <= pi/4");
  }
  // u+ is tilted up by eps, u- down by eps, and they enclose the angle beta.
  // Their horizontal parts are (cos(beta/2), +-w).
  const double se = std::sin(eps);
  const double c = std::cos(beta / 2.0);
  const double w = std::sqrt(std::max(0.0, std::sin(beta / 2.0 + eps) *
                                               std::sin(beta / 2.0 - eps)));
  const Vec3 up(c, w, se);
  const Vec3 um(c, -w, -se);
  const Vec3 line = up.cross(um);
  return std::atan2(line.head<2>().norm(), std::abs(line.z()));
}

SteepExample steep_example_3d(int m, double eps) {
  if (m < 6 || m % 2 != 0) {
    fail(ErrorKind::OutOfRange, "m must be even and at least 6");
  }
  if (!(eps > 0.0) || !(eps < kPi / 8.0)) {
    fail(ErrorKind::OutOfRange, "eps must lie in (0, pi/8)");
  }
  const int half = m / 2;
  // Distinct directions with no antipodal pair inside one polygon.
  std::vector<double> theta(half);
  const double eta = half % 2 == 0 ? kPi / (4.0 * half * half * half) : 0.0;
  for (int k = 0; k < half; ++k) {
    theta[k] = 2.0 * kPi * k / half + eta * k * k;
  }
  auto normals_for = [&](double rho) {
    std::vector<Vec3> out;
    for (int k = 0; k < half; ++k) {
      out.emplace_back(std::cos(eps) * std::cos(theta[k]),
                       std::cos(eps) * std::sin(theta[k]), std::sin(eps));
    }
    for (int k = 0; k < half; ++k) {
      out.emplace_back(std::cos(eps) * std::cos(theta[k] + rho),
                       std::cos(eps) * std::sin(theta[k] + rho),
                       -std::sin(eps));
    }
    return out;
  };
  auto separation = [&](const std::vector<Vec3>& N) {
    double beta = kPi / 2.0;
    for (std::size_t i = 0; i < N.size(); ++i) {
      for (std::size_t j = i + 1; j < N.size(); ++j) {
        const double th = std::atan2(N[i].cross(N[j]).norm(), N[i].dot(N[j]));
        beta = std::min(beta, std::min(th, kPi - th));
      }
    }
    return beta;
  };
  double best_rho = 0.0, best_sep = -1.0;
  const int steps = 720;
  for (int s = 0; s < steps; ++s) {
    const double rho = 2.0 * kPi / half * s / steps;
    const double sep = separation(normals_for(rho));
    if (sep > best_sep + 1e-15) {
      best_sep = sep;
      best_rho = rho;
    }
  }
  const std::vector<Vec3> N = normals_for(best_rho);
  std::vector<double> ones(m, 1.0);
  const SurfaceData data = make_surface_data(N, ones, false);
  const VecN h = VecN::Constant(m, std::cos(eps));
  HalfspaceResult r = halfspace_intersection_3d(data, h);
  if (!r.inactive.empty()) {
    fail(ErrorKind::Internal, "steep example lost a facet");
  }
  SteepExample out;
  out.mesh = std::move(r.mesh);
  out.rotation = best_rho;
  out.apex_height = 1.0 / std::tan(eps);
  return out;
}

double steep_ratio_bound(double eps) {
  const double H = 1.0 / std::tan(eps);
  const double inner = 2.0 * kPi * H / 3.0;
  const double outer_surface = 4.0 * kPi * std::sqrt(4.0 + H * H);
  return inner / std::pow(outer_surface, 1.5);
}

}  // namespace facetforge
