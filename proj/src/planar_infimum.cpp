// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#include "facetforge/planar_infimum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "facetforge/error.hpp"

namespace facetforge {
namespace {

constexpr int kMaxConvexSides = 14;
constexpr int kMaxSimpleSides = 12;

void check_input(const std::vector<double>& S, Geometry g) {
  const int m = static_cast<int>(S.size());
  if (m < 3) fail(ErrorKind::Infeasible, "need at least 3 sides");
  for (double s : S) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      fail(ErrorKind::InvalidInput, "side lengths must be positive");
    }
  }
  const double total = std::accumulate(S.begin(), S.end(), 0.0);
  const double largest = *std::max_element(S.begin(), S.end());
  if (!(largest < total - largest)) {
    fail(ErrorKind::Infeasible, "largest side is not shorter than the rest");
  }
  if (g == Geometry::Spherical && total > M_PI) {
    fail(ErrorKind::Infeasible, "spherical perimeter exceeds pi");
  }
}

bool is_triangle(double a, double b, double c) {
  return a <= b + c && b <= a + c && c <= a + b;
}

struct Best {
  double value = std::numeric_limits<double>::infinity();
  std::vector<int> cls;
  std::vector<int> sign;
  double triple[3] = {0, 0, 0};
  long long count = 0;

  void offer(const std::vector<int>& c, const std::vector<int>& s,
             const double t[3], Geometry g) {
    ++count;
    if (!is_triangle(t[0], t[1], t[2])) return;
    const double area = triangle_area_from_sides(t[0], t[1], t[2], g);
    if (area < value) {
      value = area;
      cls = c;
      sign = s;
      std::copy(t, t + 3, triple);
    }
  }
};

InfimumResult finish(const Best& best, const std::vector<double>& S,
                     Geometry g) {
  if (!std::isfinite(best.value)) {
    fail(ErrorKind::Internal, "no partition satisfies the triangle inequality");
  }
  InfimumResult out;
  out.value = best.value;
  out.candidates = best.count;
  PartitionCertificate& c = out.certificate;
  c.parts.assign(3, {});
  for (std::size_t i = 0; i < S.size(); ++i) c.parts[best.cls[i]].push_back(static_cast<int>(i));
  c.signs = best.sign;
  std::copy(best.triple, best.triple + 3, c.triple);
  c.area = best.value;
  c.geometry = g;
  return out;
}

// Enumerates class strings in restricted-growth order (lexicographic on
// the partition) with exactly three classes.
template <class Visit>
void enumerate_partitions(int m, Visit visit) {
  std::vector<int> cls(m, 0);
  auto rec = [&](auto&& self, int i, int used) -> void {
    if (m - i < 3 - used) return;
    if (i == m) {
      if (used == 3) visit(cls);
      return;
    }
    for (int c = 0; c <= std::min(used, 2); ++c) {
      cls[i] = c;
      self(self, i + 1, std::max(used, c + 1));
    }
  };
  rec(rec, 0, 0);
}

bool part_indecomposable(const std::vector<double>& v) {
  const int k = static_cast<int>(v.size());
  if (k < 2) return true;
  // Subsets containing element 0, excluding the full part.
  for (unsigned mask = 1; mask < (1u << k) - 1; mask += 2) {
    double a = 0.0, b = 0.0;
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i)) {
        a += v[i];
      } else {
        b += v[i];
      }
    }
    if (a > 0.0 && b > 0.0) return false;
  }
  return true;
}

}  // namespace

InfimumResult infimum_convex(const std::vector<double>& S, Geometry g,
                             bool cyclic) {
  check_input(S, g);
  const int m = static_cast<int>(S.size());
  Best best;
  const std::vector<int> plus(m, 1);
  if (cyclic) {
    std::vector<int> cls(m);
    for (int p1 = 0; p1 < m; ++p1) {
      for (int p2 = p1 + 1; p2 < m; ++p2) {
        for (int p3 = p2 + 1; p3 < m; ++p3) {
          double t[3] = {0, 0, 0};
          for (int i = 0; i < m; ++i) {
            cls[i] = (i >= p1 && i < p2) ? 0 : (i >= p2 && i < p3) ? 1 : 2;
            t[cls[i]] += S[i];
          }
          best.offer(cls, plus, t, g);
        }
      }
    }
    return finish(best, S, g);
  }
  if (m > kMaxConvexSides) {
    fail(ErrorKind::Unsupported, "exhaustive enumeration supports at most 14 sides");
  }
  enumerate_partitions(m, [&](const std::vector<int>& cls) {
    double t[3] = {0, 0, 0};
    for (int i = 0; i < m; ++i) t[cls[i]] += S[i];
    best.offer(cls, plus, t, g);
  });
  return finish(best, S, g);
}

InfimumResult infimum_simple(const std::vector<double>& S, Geometry g) {
  check_input(S, g);
  const int m = static_cast<int>(S.size());
  if (m > kMaxSimpleSides) {
    fail(ErrorKind::Unsupported, "signed enumeration supports at most 12 sides");
  }
  Best best;
  std::vector<int> sign(m, 1);
  enumerate_partitions(m, [&](const std::vector<int>& cls) {
    // The first index of each part keeps sign +; a negative sum is flipped.
    std::vector<int> free_idx;
    bool seen[3] = {false, false, false};
    for (int i = 0; i < m; ++i) {
      if (seen[cls[i]]) {
        free_idx.push_back(i);
      } else {
        seen[cls[i]] = true;
      }
    }
    const int f = static_cast<int>(free_idx.size());
    for (long long mask = 0; mask < (1LL << f); ++mask) {
      std::fill(sign.begin(), sign.end(), 1);
      for (int b = 0; b < f; ++b) {
        if (mask & (1LL << b)) sign[free_idx[b]] = -1;
      }
      double t[3] = {0, 0, 0};
      for (int i = 0; i < m; ++i) t[cls[i]] += sign[i] * S[i];
      bool flip[3];
      for (int c = 0; c < 3; ++c) {
        flip[c] = t[c] < 0.0;
        t[c] = std::abs(t[c]);
      }
      ++best.count;
      if (!is_triangle(t[0], t[1], t[2])) continue;
      const double area = triangle_area_from_sides(t[0], t[1], t[2], g);
      if (area < best.value) {
        best.value = area;
        best.cls = cls;
        best.sign = sign;
        for (int i = 0; i < m; ++i) {
          if (flip[cls[i]]) best.sign[i] = -best.sign[i];
        }
        std::copy(t, t + 3, best.triple);
      }
    }
  });
  InfimumResult out = finish(best, S, g);
  PartitionCertificate& c = out.certificate;
  if (out.value > 0.0) {
    c.indecomposable = true;
    for (const auto& part : c.parts) {
      std::vector<double> v;
      for (int i : part) v.push_back(c.signs[i] * S[i]);
      c.indecomposable = c.indecomposable && part_indecomposable(v);
    }
  }
  return out;
}

}  // namespace facetforge
