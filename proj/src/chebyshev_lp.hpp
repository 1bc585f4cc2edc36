// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include <Eigen/Dense>

namespace facetforge::detail {

struct ChebyshevCenter {
  Eigen::Vector3d center;
  double radius;
};

// Largest ball inside { x : <u_i, x> <= h_i } for unit u_i. The caller
// guarantees the normals positively span R^3, so the optimum is finite.
// A negative radius means the intersection is empty.
ChebyshevCenter chebyshev_center(const std::vector<Eigen::Vector3d>& u,
                                 const Eigen::VectorXd& h);

}  // namespace facetforge::detail
