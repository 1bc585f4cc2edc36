// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#include "facetforge/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "facetforge/error.hpp"

namespace facetforge {
namespace {

Eigen::MatrixXd normals_matrix(const SurfaceData& data) {
  Eigen::MatrixXd U(data.size(), 3);
  for (int i = 0; i < data.size(); ++i) {
    U.row(i) = data.entries[i].u.transpose();
  }
  return U;
}

VecN target_areas(const SurfaceData& data) {
  VecN S(data.size());
  for (int i = 0; i < data.size(); ++i) S(i) = data.entries[i].S;
  return S;
}

VecN areas_of(const HalfspaceResult& r, int m) {
  VecN A = VecN::Zero(m);
  for (std::size_t f = 0; f < r.mesh.facets.size(); ++f) {
    A(r.mesh.facet_label[f]) = r.mesh.areas[f];
  }
  return A;
}

// State of one iterate: P(h) with its areas and volume.
struct Eval {
  bool ok = false;
  HalfspaceResult hs;
  VecN A;
  double V = 0.0;
};

Eval evaluate(const SurfaceData& data, const VecN& h, const Tolerances& tol) {
  Eval e;
  try {
    e.hs = halfspace_intersection_3d(data, h, tol);
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::Empty) return e;
    throw;
  }
  e.A = areas_of(e.hs, data.size());
  e.V = e.hs.mesh.volume;
  e.ok = e.V > 0.0;
  return e;
}

// F(h) = <S, h> - log V(h) is convex; its minimizers are exactly the
// support vectors with A(h) proportional to S.
double objective(const VecN& S, const VecN& h, const Eval& e) {
  if (!e.ok) return std::numeric_limits<double>::infinity();
  return S.dot(h) - std::log(e.V);
}

double ratio_residual(const VecN& S, const Eval& e) {
  double r = 0.0;
  for (int i = 0; i < S.size(); ++i) {
    r = std::max(r, std::abs(e.A(i) / (e.V * S(i)) - 1.0));
  }
  return r;
}

double support_value(const PolytopeMesh& mesh, const Vec3& u) {
  double s = -std::numeric_limits<double>::infinity();
  for (const Vec3& v : mesh.vertices) s = std::max(s, u.dot(v));
  return s;
}

bool reactivated(const VecN& S, const Eval& e, int i) {
  if (!e.ok) return false;
  double mean = 0.0;
  for (int j = 0; j < S.size(); ++j) mean += e.A(j) / (e.V * S(j));
  mean /= static_cast<double>(S.size());
  return e.A(i) / (e.V * S(i)) >= 1e-3 * mean;
}

// Lowers h_i of a vanished facet until its area is a visible fraction of
// the target: geometric scan for a bracket, then bisection.
void reactivate(const SurfaceData& data, const VecN& S, VecN& h, Eval& e,
                int i, const Tolerances& tol) {
  const Vec3 u = data.entries[i].u;
  const double sigma = support_value(e.hs.mesh, u);
  const double diam = diameter(e.hs.mesh.vertices);
  double lo = 0.0;
  double hi = 1e-6 * diam;
  VecN trial = h;
  Eval te;
  for (int k = 0; k < 60; ++k) {
    trial(i) = sigma - hi;
    te = evaluate(data, trial, tol);
    if (reactivated(S, te, i)) break;
    if (!te.ok) fail(ErrorKind::NotConverged, "cannot reactivate facet");
    lo = hi;
    hi *= 2.0;
  }
  if (!reactivated(S, te, i)) {
    fail(ErrorKind::NotConverged, "cannot reactivate facet");
  }
  Eval best = te;
  double best_delta = hi;
  for (int k = 0; k < 30; ++k) {
    const double mid = 0.5 * (lo + hi);
    trial(i) = sigma - mid;
    Eval me = evaluate(data, trial, tol);
    if (reactivated(S, me, i)) {
      hi = mid;
      best = std::move(me);
      best_delta = mid;
    } else {
      lo = mid;
    }
  }
  h(i) = sigma - best_delta;
  e = std::move(best);
}

[[noreturn]] void not_converged(int iterations, double residual,
                                const std::string& why) {
  std::ostringstream os;
  os << why << " after " << iterations << " iterations, residual "
     << residual;
  Error err(ErrorKind::NotConverged, std::string("NotConverged: ") + os.str());
  err.iterations = iterations;
  err.residual = residual;
  throw err;
}

}  // namespace

FeasibilityReport check_feasible(const SurfaceData& data,
                                 const Tolerances& tol) {
  FeasibilityReport r;
  const int m = data.size();
  double total = 0.0;
  double largest = 0.0;
  for (const SurfaceEntry& e : data.entries) {
    r.sum_vector += e.S * e.u;
    total += e.S;
    largest = std::max(largest, e.S);
  }
  r.sum_norm = r.sum_vector.norm();
  if (m > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(normals_matrix(data));
    const auto& sv = svd.singularValues();
    for (int k = 0; k < sv.size(); ++k) {
      if (sv(k) > 1e-9 * sv(0)) ++r.span_rank;
    }
  }
  r.max_area_slack = (total - largest) - largest;
  r.max_area_ok = m >= 2 && r.max_area_slack > 0.0;
  r.feasible = m >= 4 && r.sum_norm <= tol.feasibility * total &&
               r.span_rank == 3 && r.max_area_ok;
  return r;
}

VecN facet_areas_at(const SurfaceData& data, const VecN& h,
                    const Tolerances& tol) {
  return areas_of(halfspace_intersection_3d(data, h, tol), data.size());
}

Eigen::MatrixXd area_jacobian(const SurfaceData& data, const VecN& h,
                              const Tolerances& tol) {
  const int m = data.size();
  const HalfspaceResult r = halfspace_intersection_3d(data, h, tol);
  if (!r.inactive.empty()) {
    Error err(ErrorKind::InactiveFacet,
              "InactiveFacet: facet " + std::to_string(r.inactive[0]) +
                  " has zero area");
    err.index = r.inactive[0];
    throw err;
  }
  const PolytopeMesh& mesh = r.mesh;
  std::map<std::pair<int, int>, std::vector<int>> edges;
  for (std::size_t f = 0; f < mesh.facets.size(); ++f) {
    const auto& cyc = mesh.facets[f];
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      int a = cyc[k], b = cyc[(k + 1) % cyc.size()];
      if (a > b) std::swap(a, b);
      edges[{a, b}].push_back(static_cast<int>(f));
    }
  }
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  for (const auto& [key, fs] : edges) {
    if (fs.size() != 2) continue;
    const int i = mesh.facet_label[fs[0]];
    const int j = mesh.facet_label[fs[1]];
    const Vec3& ui = data.entries[i].u;
    const Vec3& uj = data.entries[j].u;
    const double len = (mesh.vertices[key.first] - mesh.vertices[key.second]).norm();
    const double s = ui.cross(uj).norm();
    const double c = ui.dot(uj);
    const double w = len / s;
    J(i, j) += w;
    J(j, i) += w;
    J(i, i) -= c * w;
    J(j, j) -= c * w;
  }
  return J;
}

Eigen::MatrixXd area_jacobian_fd(const SurfaceData& data, const VecN& h,
                                 double step, const Tolerances& tol) {
  const int m = data.size();
  Eigen::MatrixXd J(m, m);
  for (int j = 0; j < m; ++j) {
    VecN hp = h, hm = h;
    hp(j) += step;
    hm(j) -= step;
    J.col(j) = (facet_areas_at(data, hp, tol) - facet_areas_at(data, hm, tol)) /
               (2.0 * step);
  }
  return J;
}

SolveResult solve_support(const SurfaceData& data, const SolveOptions& opt) {
  const Tolerances& tol = default_tolerances();
  validate(data, tol);
  const FeasibilityReport rep = check_feasible(data, tol);
  if (!rep.feasible) {
    std::ostringstream os;
    os << "surface data infeasible: |sum S_i u_i| = " << rep.sum_norm
       << ", span rank " << rep.span_rank << ", largest area "
       << (rep.max_area_ok ? "ok" : "too large");
    fail(ErrorKind::Infeasible, os.str());
  }
  const int m = data.size();
  const VecN S = target_areas(data);
  const Eigen::MatrixXd U = normals_matrix(data);

  VecN h = opt.h0 ? *opt.h0 : VecN::Ones(m);
  if (h.size() != m) fail(ErrorKind::InvalidInput, "h0 has wrong length");
  Eval e = evaluate(data, h, tol);
  if (!e.ok) fail(ErrorKind::InvalidInput, "initial support vector is empty");
  // Bring areas to the scale of the targets.
  const double lambda = std::sqrt(S.sum() / e.A.sum());
  h *= lambda;
  e = evaluate(data, h, tol);

  int iter = 0;
  double res = ratio_residual(S, e);
  for (; iter < opt.max_iter; ++iter) {
    // Reviving one facet can push out another. Neighbours may trade places
    // at the threshold, so later sweeps only insist on a positive area.
    for (int pass = 0; pass < 4 * m; ++pass) {
      int lost = -1;
      for (int i = 0; i < m && lost < 0; ++i) {
        if (pass < m ? !reactivated(S, e, i) : !(e.A(i) > 0.0)) lost = i;
      }
      if (lost < 0) break;
      reactivate(data, S, h, e, lost, tol);
    }
    for (int i = 0; i < m; ++i) {
      if (!(e.A(i) > 0.0)) {
        not_converged(iter, ratio_residual(S, e), "facet " + std::to_string(i) + " stays inactive");
      }
    }
    res = ratio_residual(S, e);
    if (res <= opt.tol) break;

    const VecN g = S - e.A / e.V;
    const Eigen::MatrixXd J =
        opt.finite_difference_jacobian
            ? area_jacobian_fd(data, h, 1e-6 * std::cbrt(e.V), tol)
            : area_jacobian(data, h, tol);
    const Eigen::MatrixXd H =
        -J / e.V + (e.A * e.A.transpose()) / (e.V * e.V);
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m + 3, m + 3);
    K.topLeftCorner(m, m) = H;
    K.topRightCorner(m, 3) = U;
    K.bottomLeftCorner(3, m) = U.transpose();
    VecN rhs = VecN::Zero(m + 3);
    rhs.head(m) = -g;
    const VecN d = K.fullPivLu().solve(rhs).head(m);

    const double f0 = objective(S, h, e);
    const double slope = g.dot(d);
    double step = 1.0;
    bool accepted = false;
    while (step >= std::ldexp(1.0, -20)) {
      const VecN trial = h + step * d;
      Eval te = evaluate(data, trial, tol);
      const double f1 = objective(S, trial, te);
      // Near the optimum the decrease of F drops below rounding; there the
      // area residual decides.
      const bool flat = std::abs(slope) <= 1e-10 * (1.0 + std::abs(f0));
      if (f1 <= f0 + 1e-4 * step * std::min(slope, 0.0) ||
          (flat && te.ok && ratio_residual(S, te) < res)) {
        h = trial;
        e = std::move(te);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      res = ratio_residual(S, e);
      if (res <= opt.tol) break;
      not_converged(iter + 1, res, "line search stalled");
    }
  }
  res = ratio_residual(S, e);
  if (res > opt.tol) not_converged(iter, res, "iteration limit reached");

  // Scale so that A = S, then move the volume centroid to the origin.
  h /= std::sqrt(e.V);
  e = evaluate(data, h, tol);
  const Vec3 c = volume_centroid(e.hs.mesh);
  h -= U * c;
  e = evaluate(data, h, tol);

  SolveResult out;
  out.h = h;
  out.mesh = std::move(e.hs.mesh);
  out.iterations = iter;
  out.residual = 0.0;
  for (int i = 0; i < m; ++i) {
    out.residual = std::max(out.residual, std::abs(e.A(i) - S(i)) / S(i));
  }
  return out;
}

SolveResult solve_support(const SurfaceData& data, double tol, int max_iter) {
  SolveOptions opt;
  opt.tol = tol;
  opt.max_iter = max_iter;
  return solve_support(data, opt);
}

}  // namespace facetforge
