// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#include "chebyshev_lp.hpp"

#include <cmath>
#include <limits>

#include "facetforge/error.hpp"

namespace facetforge::detail {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kPivotEps = 1e-11;

void pivot(MatrixXd& T, std::vector<int>& basis, int row, int col) {
  T.row(row) /= T(row, col);
  for (int i = 0; i < T.rows(); ++i) {
    if (i != row && T(i, col) != 0.0) T.row(i) -= T(i, col) * T.row(row);
  }
  basis[row] = col;
}

// Bland's rule simplex on a tableau already in canonical form for `basis`.
// Columns >= allowed never enter. Returns false if unbounded.
bool run_simplex(MatrixXd& T, std::vector<int>& basis, const VectorXd& cost,
                 int allowed) {
  const int k = static_cast<int>(T.rows());
  const int rhs = static_cast<int>(T.cols()) - 1;
  for (int iter = 0; iter < 10000; ++iter) {
    int enter = -1;
    for (int j = 0; j < allowed; ++j) {
      double r = cost(j);
      for (int i = 0; i < k; ++i) r -= cost(basis[i]) * T(i, j);
      if (r < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return true;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
      if (T(i, enter) > kPivotEps) {
        double ratio = T(i, rhs) / T(i, enter);
        if (ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && leave >= 0 &&
             basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return false;
    pivot(T, basis, leave, enter);
  }
  fail(ErrorKind::Internal, "simplex iteration limit reached");
}

}  // namespace

// Solves the dual  min h.y  s.t.  sum y_i u_i = 0, sum y_i = 1, y >= 0.
// The optimal basis names four tight constraints of the primal
// max r  s.t.  <u_i, x> + r <= h_i, which then fix (x, r).
ChebyshevCenter chebyshev_center(const std::vector<Eigen::Vector3d>& u,
                                 const VectorXd& h) {
  const int m = static_cast<int>(u.size());
  const int k = 4;
  MatrixXd T = MatrixXd::Zero(k, m + k + 1);
  for (int i = 0; i < m; ++i) {
    T(0, i) = u[i].x();
    T(1, i) = u[i].y();
    T(2, i) = u[i].z();
    T(3, i) = 1.0;
  }
  for (int r = 0; r < k; ++r) T(r, m + r) = 1.0;
  T(3, m + k) = 1.0;
  std::vector<int> basis = {m, m + 1, m + 2, m + 3};

  VectorXd phase1 = VectorXd::Zero(m + k);
  phase1.tail(k).setOnes();
  run_simplex(T, basis, phase1, m);

  // Drive remaining artificials out of the basis.
  std::vector<bool> redundant(k, false);
  for (int r = 0; r < k; ++r) {
    if (basis[r] < m) continue;
    int col = -1;
    double best = 1e-9;
    for (int j = 0; j < m; ++j) {
      if (std::abs(T(r, j)) > best) {
        best = std::abs(T(r, j));
        col = j;
      }
    }
    if (col >= 0) {
      pivot(T, basis, r, col);
    } else {
      redundant[r] = true;
    }
  }

  VectorXd phase2 = VectorXd::Zero(m + k);
  phase2.head(m) = h;
  if (!run_simplex(T, basis, phase2, m)) {
    fail(ErrorKind::Unbounded, "normals do not positively span R^3");
  }

  std::vector<int> tight;
  for (int r = 0; r < k; ++r) {
    if (!redundant[r] && basis[r] < m) tight.push_back(basis[r]);
  }
  Eigen::MatrixXd A(tight.size(), 4);
  VectorXd b(tight.size());
  for (std::size_t i = 0; i < tight.size(); ++i) {
    A.row(i) << u[tight[i]].transpose(), 1.0;
    b(i) = h(tight[i]);
  }
  VectorXd sol = A.completeOrthogonalDecomposition().solve(b);
  ChebyshevCenter out{sol.head<3>(), sol(3)};
  // Guard against a degenerate basis: the radius must respect every row.
  for (int i = 0; i < m; ++i) {
    out.radius = std::min(out.radius, h(i) - u[i].dot(out.center));
  }
  return out;
}

}  // namespace facetforge::detail
