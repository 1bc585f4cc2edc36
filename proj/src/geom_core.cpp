// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#include "facetforge/geom_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>

#include "chebyshev_lp.hpp"
#include "facetforge/error.hpp"

namespace facetforge {
namespace {

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

Vec3 newell(const std::vector<Vec3>& pts, const std::vector<int>& cycle) {
  Vec3 n = Vec3::Zero();
  const Vec3& o = pts[cycle[0]];
  for (std::size_t k = 1; k + 1 < cycle.size(); ++k) {
    n += (pts[cycle[k]] - o).cross(pts[cycle[k + 1]] - o);
  }
  return n;
}

double bbox_diagonal(const std::vector<Vec3>& pts) {
  Vec3 lo = pts[0], hi = pts[0];
  for (const Vec3& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Hull facets as cycles of input indices, coplanar triangles merged and
// vertices lying in fewer than three facets removed.
struct HullTopology {
  std::vector<std::vector<int>> facets;
};

struct Tri {
  std::array<int, 3> v;
  Vec3 n;
  double d;
  bool alive;
};

class IncrementalHull {
 public:
  IncrementalHull(const std::vector<Vec3>& pts, double eps)
      : pts_(pts), eps_(eps) {}

  void add(int a, int b, int c) {
    Vec3 n = (pts_[b] - pts_[a]).cross(pts_[c] - pts_[a]);
    const double len = n.norm();
    if (len > 0.0) n /= len;
    const int id = static_cast<int>(tris_.size());
    tris_.push_back({{a, b, c}, n, n.dot(pts_[a]), true});
    owner_[edge_key(a, b)] = id;
    owner_[edge_key(b, c)] = id;
    owner_[edge_key(c, a)] = id;
  }

  double dist(int t, int p) const {
    return tris_[t].n.dot(pts_[p]) - tris_[t].d;
  }

  void insert(int p) {
    int seed = -1;
    double best = eps_;
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
      if (!tris_[t].alive) continue;
      const double d = dist(t, p);
      if (d > best) {
        best = d;
        seed = t;
      }
    }
    if (seed < 0) return;
    std::vector<int> visible{seed};
    std::vector<char> mark(tris_.size(), 0);
    mark[seed] = 1;
    for (std::size_t k = 0; k < visible.size(); ++k) {
      const Tri& t = tris_[visible[k]];
      for (int e = 0; e < 3; ++e) {
        const int nb = twin(t.v[e], t.v[(e + 1) % 3]);
        if (nb >= 0 && !mark[nb] && dist(nb, p) > eps_) {
          mark[nb] = 1;
          visible.push_back(nb);
        }
      }
    }
    std::vector<std::pair<int, int>> horizon;
    for (int id : visible) {
      const Tri& t = tris_[id];
      for (int e = 0; e < 3; ++e) {
        const int a = t.v[e], b = t.v[(e + 1) % 3];
        const int nb = twin(a, b);
        if (nb < 0 || !mark[nb]) horizon.emplace_back(a, b);
      }
    }
    for (int id : visible) {
      Tri& t = tris_[id];
      t.alive = false;
      for (int e = 0; e < 3; ++e) {
        auto it = owner_.find(edge_key(t.v[e], t.v[(e + 1) % 3]));
        if (it != owner_.end() && it->second == id) owner_.erase(it);
      }
    }
    for (auto [a, b] : horizon) add(a, b, p);
  }

  int twin(int a, int b) const {
    auto it = owner_.find(edge_key(b, a));
    return it == owner_.end() ? -1 : it->second;
  }

  const std::vector<Tri>& tris() const { return tris_; }

 private:
  const std::vector<Vec3>& pts_;
  double eps_;
  std::vector<Tri> tris_;
  std::unordered_map<std::uint64_t, int> owner_;
};

HullTopology hull_topology(const std::vector<Vec3>& pts, const Tolerances& tol,
                           double merge_rel) {
  const int n = static_cast<int>(pts.size());
  if (n < 4) fail(ErrorKind::DegenerateInput, "need at least 4 points");
  for (const Vec3& p : pts) {
    if (!p.allFinite()) fail(ErrorKind::InvalidInput, "non-finite point");
  }
  const double scale = bbox_diagonal(pts);
  if (!(scale > 0.0)) fail(ErrorKind::DegenerateInput, "all points coincide");

  int i0 = 0;
  for (int i = 1; i < n; ++i) {
    if (pts[i].x() < pts[i0].x()) i0 = i;
  }
  int i1 = i0;
  double best = -1.0;
  for (int i = 0; i < n; ++i) {
    const double d = (pts[i] - pts[i0]).squaredNorm();
    if (d > best) {
      best = d;
      i1 = i;
    }
  }
  const Vec3 dir = (pts[i1] - pts[i0]).normalized();
  int i2 = -1;
  best = tol.coplanar * scale;
  for (int i = 0; i < n; ++i) {
    const double d = (pts[i] - pts[i0]).cross(dir).norm();
    if (d > best) {
      best = d;
      i2 = i;
    }
  }
  if (i2 < 0) fail(ErrorKind::DegenerateInput, "points are collinear");
  const Vec3 pn = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]).normalized();
  int i3 = -1;
  best = tol.coplanar * scale;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(pn.dot(pts[i] - pts[i0]));
    if (d > best) {
      best = d;
      i3 = i;
    }
  }
  if (i3 < 0) fail(ErrorKind::DegenerateInput, "points are coplanar");

  IncrementalHull hull(pts, tol.visibility * scale);
  if (pn.dot(pts[i3] - pts[i0]) > 0.0) std::swap(i1, i2);
  hull.add(i0, i1, i2);
  hull.add(i0, i3, i1);
  hull.add(i1, i3, i2);
  hull.add(i2, i3, i0);
  for (int i = 0; i < n; ++i) {
    if (i != i0 && i != i1 && i != i2 && i != i3) hull.insert(i);
  }

  const std::vector<Tri>& tris = hull.tris();
  const int nt = static_cast<int>(tris.size());
  const double merge = merge_rel * scale;
  UnionFind uf(nt);
  for (int t = 0; t < nt; ++t) {
    if (!tris[t].alive) continue;
    for (int e = 0; e < 3; ++e) {
      const int nb = hull.twin(tris[t].v[e], tris[t].v[(e + 1) % 3]);
      if (nb < 0 || nb < t) continue;
      const Tri& a = tris[t];
      const Tri& b = tris[nb];
      if (a.n.dot(b.n) <= 0.0) continue;
      const int ca = a.v[(e + 2) % 3];
      int cb = b.v[0];
      for (int k = 0; k < 3; ++k) {
        if (b.v[k] != a.v[e] && b.v[k] != a.v[(e + 1) % 3]) cb = b.v[k];
      }
      if (std::abs(a.n.dot(pts[cb]) - a.d) <= merge &&
          std::abs(b.n.dot(pts[ca]) - b.d) <= merge) {
        uf.unite(t, nb);
      }
    }
  }

  std::unordered_map<int, std::vector<int>> groups;
  std::vector<int> order;
  for (int t = 0; t < nt; ++t) {
    if (!tris[t].alive) continue;
    const int r = uf.find(t);
    if (groups.find(r) == groups.end()) order.push_back(r);
    groups[r].push_back(t);
  }

  HullTopology topo;
  for (int r : order) {
    const std::vector<int>& members = groups[r];
    if (members.size() == 1) {
      const Tri& t = tris[members[0]];
      topo.facets.push_back({t.v[0], t.v[1], t.v[2]});
      continue;
    }
    std::unordered_map<int, int> next;
    int start = -1;
    std::size_t edges = 0;
    bool pinched = false;
    for (int id : members) {
      for (int e = 0; e < 3; ++e) {
        const int a = tris[id].v[e], b = tris[id].v[(e + 1) % 3];
        const int nb = hull.twin(a, b);
        if (nb >= 0 && uf.find(nb) == r) continue;
        if (next.count(a)) pinched = true;
        next[a] = b;
        if (start < 0) start = a;
        ++edges;
      }
    }
    std::vector<int> cycle;
    if (!pinched) {
      int v = start;
      do {
        cycle.push_back(v);
        auto it = next.find(v);
        if (it == next.end()) break;
        v = it->second;
      } while (v != start && cycle.size() <= edges);
    }
    if (pinched || cycle.size() != edges) {
      for (int id : members) {
        const Tri& t = tris[id];
        topo.facets.push_back({t.v[0], t.v[1], t.v[2]});
      }
    } else {
      topo.facets.push_back(std::move(cycle));
    }
  }

  std::vector<int> count(n, 0);
  for (const auto& f : topo.facets) {
    for (int v : f) ++count[v];
  }
  for (auto& f : topo.facets) {
    f.erase(std::remove_if(f.begin(), f.end(),
                           [&](int v) { return count[v] < 3; }),
            f.end());
  }
  return topo;
}

void facet_geometry(PolytopeMesh& mesh) {
  mesh.normals.assign(mesh.facets.size(), Vec3::Zero());
  mesh.areas.assign(mesh.facets.size(), 0.0);
  for (std::size_t f = 0; f < mesh.facets.size(); ++f) {
    const Vec3 nw = newell(mesh.vertices, mesh.facets[f]);
    const double len = nw.norm();
    mesh.areas[f] = 0.5 * len;
    mesh.normals[f] = len > 0.0 ? Vec3(nw / len) : Vec3::Zero();
  }
}

Vec3 vertex_centroid(const std::vector<Vec3>& vertices) {
  Vec3 c = Vec3::Zero();
  for (const Vec3& v : vertices) c += v;
  return c / static_cast<double>(vertices.size());
}

double fan_volume(const PolytopeMesh& mesh) {
  const Vec3 c = vertex_centroid(mesh.vertices);
  double vol = 0.0;
  for (std::size_t f = 0; f < mesh.facets.size(); ++f) {
    vol += mesh.areas[f] *
           mesh.normals[f].dot(mesh.vertices[mesh.facets[f][0]] - c) / 3.0;
  }
  return vol;
}

}  // namespace

int PolytopeMesh::num_edges() const {
  std::size_t total = 0;
  for (const auto& f : facets) total += f.size();
  return static_cast<int>(total / 2);
}

void validate(const SurfaceData& data, const Tolerances& tol) {
  const int m = data.size();
  for (int i = 0; i < m; ++i) {
    const SurfaceEntry& e = data.entries[i];
    if (!e.u.allFinite() || std::abs(e.u.norm() - 1.0) > tol.unit_normal) {
      fail(ErrorKind::InvalidInput,
           "normal " + std::to_string(i) + " is not a unit vector");
    }
    if (!(e.S > 0.0) || !std::isfinite(e.S)) {
      fail(ErrorKind::InvalidInput,
           "area " + std::to_string(i) + " is not positive");
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Vec3& a = data.entries[i].u;
      const Vec3& b = data.entries[j].u;
      if (std::atan2(a.cross(b).norm(), a.dot(b)) <= tol.normal_separation) {
        fail(ErrorKind::InvalidInput, "normals " + std::to_string(i) +
                                          " and " + std::to_string(j) +
                                          " coincide");
      }
    }
  }
}

SurfaceData make_surface_data(const std::vector<Vec3>& normals,
                              const std::vector<double>& areas,
                              bool normalize) {
  if (normals.size() != areas.size()) {
    fail(ErrorKind::InvalidInput, "normals and areas differ in length");
  }
  SurfaceData data;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    Vec3 u = normals[i];
    if (normalize) {
      const double len = u.norm();
      if (!(len > 0.0)) fail(ErrorKind::InvalidInput, "zero normal");
      u /= len;
    }
    data.entries.push_back({u, areas[i]});
  }
  return data;
}

PolytopeMesh convex_hull_3d(const std::vector<Vec3>& points,
                            const Tolerances& tol) {
  HullTopology topo = hull_topology(points, tol, tol.facet_merge);
  std::vector<int> remap(points.size(), -1);
  PolytopeMesh mesh;
  for (auto& f : topo.facets) {
    for (int& v : f) {
      if (remap[v] < 0) {
        remap[v] = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back(points[v]);
      }
      v = remap[v];
    }
  }
  mesh.facets = std::move(topo.facets);
  mesh.facet_label.assign(mesh.facets.size(), -1);
  refresh_geometry(mesh);
  return mesh;
}

HalfspaceResult halfspace_intersection_3d(const SurfaceData& data,
                                          const VecN& h,
                                          const Tolerances& tol) {
  const int m = data.size();
  if (h.size() != m) fail(ErrorKind::InvalidInput, "h has wrong length");
  if (!h.allFinite()) fail(ErrorKind::InvalidInput, "non-finite h");
  if (m < 4) fail(ErrorKind::Unbounded, "fewer than 4 halfspaces");

  std::vector<Vec3> u(m);
  for (int i = 0; i < m; ++i) u[i] = data.entries[i].u;

  Eigen::MatrixXd U(m, 3);
  for (int i = 0; i < m; ++i) U.row(i) = u[i].transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(U);
  if (svd.singularValues()(2) <= 1e-12 * svd.singularValues()(0)) {
    fail(ErrorKind::Unbounded, "normals do not span R^3");
  }
  try {
    HullTopology nh = hull_topology(u, tol, tol.facet_merge);
    for (const auto& f : nh.facets) {
      const Vec3 nw = newell(u, f);
      if (nw.norm() == 0.0) continue;
      if (nw.normalized().dot(u[f[0]]) <= 1e-12) {
        fail(ErrorKind::Unbounded, "normals lie in a closed halfspace");
      }
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DegenerateInput) {
      fail(ErrorKind::Unbounded, "normals lie in a closed halfspace");
    }
    throw;
  }

  const detail::ChebyshevCenter cc = detail::chebyshev_center(u, h);
  const double hscale = 1.0 + h.cwiseAbs().maxCoeff();
  if (!(cc.radius > 1e-12 * hscale)) {
    fail(ErrorKind::Empty, "halfspace intersection has empty interior");
  }
  const Vec3 c = cc.center;
  VecN hs(m);
  std::vector<Vec3> dual(m);
  for (int i = 0; i < m; ++i) {
    hs(i) = h(i) - u[i].dot(c);
    dual[i] = u[i] / hs(i);
  }

  // A tight merge keeps nearly concurrent planes apart, so every vertex is
  // the exact meet of its own planes and areas stay smooth in h.
  HullTopology dh = hull_topology(dual, tol, tol.dual_merge);

  // One primal vertex per dual facet.
  const int nf = static_cast<int>(dh.facets.size());
  std::vector<Vec3> pv(nf);
  std::vector<std::vector<int>> around(m);
  for (int f = 0; f < nf; ++f) {
    const auto& cyc = dh.facets[f];
    Eigen::MatrixXd A(cyc.size(), 3);
    VecN b(cyc.size());
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      A.row(k) = u[cyc[k]].transpose();
      b(k) = hs(cyc[k]);
      around[cyc[k]].push_back(f);
    }
    pv[f] = A.colPivHouseholderQr().solve(b);
  }

  double pscale = 0.0;
  for (const Vec3& p : pv) pscale = std::max(pscale, p.norm());

  HalfspaceResult out;
  PolytopeMesh& mesh = out.mesh;
  std::vector<int> remap(nf, -1);
  for (int i = 0; i < m; ++i) {
    std::vector<int>& ring = around[i];
    if (ring.size() < 3) {
      out.inactive.push_back(i);
      continue;
    }
    Vec3 e1 = u[i].unitOrthogonal();
    Vec3 e2 = u[i].cross(e1);
    Vec3 g = Vec3::Zero();
    for (int f : ring) g += pv[f];
    g /= static_cast<double>(ring.size());
    std::vector<double> ang(nf);
    for (int f : ring) {
      const Vec3 d = pv[f] - g;
      ang[f] = std::atan2(d.dot(e2), d.dot(e1));
    }
    std::sort(ring.begin(), ring.end(),
              [&](int a, int b) { return ang[a] < ang[b]; });
    Vec3 nw = Vec3::Zero();
    for (std::size_t k = 0; k < ring.size(); ++k) {
      nw += pv[ring[k]].cross(pv[ring[(k + 1) % ring.size()]]);
    }
    const double area = 0.5 * u[i].dot(nw);
    if (!(area > 1e-14 * pscale * pscale)) {
      out.inactive.push_back(i);
      continue;
    }
    std::vector<int> cyc;
    for (int f : ring) {
      if (remap[f] < 0) {
        remap[f] = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back(pv[f] + c);
      }
      cyc.push_back(remap[f]);
    }
    mesh.facets.push_back(std::move(cyc));
    mesh.normals.push_back(u[i]);
    mesh.areas.push_back(area);
    mesh.facet_label.push_back(i);
  }
  if (mesh.facets.size() < 4) {
    fail(ErrorKind::Empty, "halfspace intersection is degenerate");
  }
  const Vec3 g = vertex_centroid(mesh.vertices);
  double vol = 0.0;
  for (std::size_t f = 0; f < mesh.facets.size(); ++f) {
    const int i = mesh.facet_label[f];
    vol += mesh.areas[f] * (h(i) - u[i].dot(g)) / 3.0;
  }
  mesh.volume = vol;
  out.interior_point = c;
  out.inradius = cc.radius;
  return out;
}

void refresh_geometry(PolytopeMesh& mesh) {
  facet_geometry(mesh);
  mesh.volume = fan_volume(mesh);
}

MeshMetrics mesh_metrics(const PolytopeMesh& mesh) {
  MeshMetrics out;
  PolytopeMesh copy;
  copy.vertices = mesh.vertices;
  copy.facets = mesh.facets;
  facet_geometry(copy);
  out.areas = copy.areas;
  out.surface = std::accumulate(out.areas.begin(), out.areas.end(), 0.0);
  // Signed tetrahedron fan from the vertex centroid.
  const Vec3 c = vertex_centroid(mesh.vertices);
  double vol = 0.0;
  for (const auto& f : mesh.facets) {
    const Vec3 a = mesh.vertices[f[0]] - c;
    for (std::size_t k = 1; k + 1 < f.size(); ++k) {
      vol += a.dot((mesh.vertices[f[k]] - c).cross(mesh.vertices[f[k + 1]] - c));
    }
  }
  out.volume = vol / 6.0;
  out.diameter = diameter(mesh.vertices);
  return out;
}

Vec3 volume_centroid(const PolytopeMesh& mesh) {
  const Vec3 c = vertex_centroid(mesh.vertices);
  double vol = 0.0;
  Vec3 moment = Vec3::Zero();
  for (const auto& f : mesh.facets) {
    const Vec3 a = mesh.vertices[f[0]] - c;
    for (std::size_t k = 1; k + 1 < f.size(); ++k) {
      const Vec3 b = mesh.vertices[f[k]] - c;
      const Vec3 d = mesh.vertices[f[k + 1]] - c;
      const double v = a.dot(b.cross(d)) / 6.0;
      vol += v;
      moment += v * (a + b + d) / 4.0;
    }
  }
  if (vol == 0.0) return c;
  return c + moment / vol;
}

GwwReport gww_check(const PolytopeMesh& mesh) {
  const MeshMetrics mm = mesh_metrics(mesh);
  if (!(mm.diameter > 0.0) ||
      !(mm.volume > 1e-12 * mm.diameter * mm.surface)) {
    fail(ErrorKind::DegenerateInput, "mesh has no volume");
  }
  GwwReport r;
  r.lhs = mm.surface * mm.surface;
  r.rhs = M_PI * mm.diameter * 3.0 * mm.volume;
  r.holds = r.lhs > r.rhs;
  return r;
}

PolytopeMesh translated(const PolytopeMesh& mesh, const Vec3& shift) {
  PolytopeMesh out = mesh;
  for (Vec3& v : out.vertices) v += shift;
  return out;
}

PolytopeMesh scaled(const PolytopeMesh& mesh, double factor) {
  PolytopeMesh out = mesh;
  for (Vec3& v : out.vertices) v *= factor;
  for (double& a : out.areas) a *= factor * factor;
  out.volume *= factor * factor * factor;
  return out;
}

double diameter(const std::vector<Vec3>& points) {
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, (points[i] - points[j]).squaredNorm());
    }
  }
  return std::sqrt(best);
}

}  // namespace facetforge
