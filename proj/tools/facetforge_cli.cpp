// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "facetforge/error.hpp"
#include "facetforge/euclid.hpp"
#include "facetforge/geom_core.hpp"
#include "facetforge/mesh_io.hpp"
#include "facetforge/minkowski.hpp"
#include "facetforge/noneuclid.hpp"
#include "facetforge/oracle.hpp"
#include "facetforge/planar_infimum.hpp"
#include "facetforge/tetra.hpp"

using json = nlohmann::ordered_json;
using namespace facetforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitRejected = 2;
constexpr int kExitUsage = 64;

struct Globals {
  bool exact = false;
  std::optional<std::uint64_t> seed;
  std::string output;  // report path; stdout when empty
  std::string off;     // OFF export path
  std::string mesh_json;
};

void dump(std::ostream& os, const json& j, int digits) {
  switch (j.type()) {
    case json::value_t::object: {
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        os << (first ? "" : ", ") << json(it.key()).dump() << ": ";
        dump(os, it.value(), digits);
        first = false;
      }
      os << '}';
      break;
    }
    case json::value_t::array: {
      os << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ", ";
        dump(os, j[i], digits);
      }
      os << ']';
      break;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      os << (std::isfinite(v) ? format_number(v, digits) : "null");
      break;
    }
    default:
      os << j.dump();
  }
}

std::uint64_t resolve_seed(const Globals& g) {
  if (g.seed) return *g.seed;
  if (const char* env = std::getenv("FACETFORGE_SEED")) {
    std::size_t pos = 0;
    const std::string text(env);
    std::uint64_t v = 0;
    try {
      v = std::stoull(text, &pos, 10);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (text.empty() || pos != text.size() || text[0] == '-') {
      throw CLI::ValidationError("FACETFORGE_SEED", "must be a decimal unsigned 64-bit integer");
    }
    return v;
  }
  return kDefaultSeed;
}

json vec_json(const VecN& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

template <class T>
json list_json(const T& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x);
  return a;
}

json gww_json(const PolytopeMesh& mesh) {
  const GwwReport r = gww_check(mesh);
  return {{"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}};
}

void export_mesh(const Globals& g, const PolytopeMesh& mesh) {
  if (!g.off.empty()) write_text_file(g.off, mesh_to_off(mesh, 17));
  if (!g.mesh_json.empty()) write_text_file(g.mesh_json, mesh_to_json(mesh, 17));
}

PolytopeMesh load_mesh(const std::string& path) {
  const std::string text = read_text_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return mesh_from_json(text);
  return mesh_from_off(text);
}

SurfaceData load_surface(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("normals") || !j.contains("areas")) {
    fail(ErrorKind::InvalidInput, "expected {\"normals\": [[x,y,z],...], \"areas\": [...]}");
  }
  std::vector<Vec3> normals;
  std::vector<double> areas;
  try {
    for (const auto& n : j["normals"]) {
      if (n.size() != 3) fail(ErrorKind::InvalidInput, "normals must have 3 coordinates");
      normals.emplace_back(n[0].get<double>(), n[1].get<double>(), n[2].get<double>());
    }
    for (const auto& a : j["areas"]) areas.push_back(a.get<double>());
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("bad field type: ") + e.what());
  }
  if (normals.size() != areas.size()) {
    fail(ErrorKind::InvalidInput, "normals and areas differ in length");
  }
  const bool normalize = j.value("normalize", true);
  return make_surface_data(normals, areas, normalize);
}

json mesh_report(const PolytopeMesh& mesh) {
  json out;
  out["volume"] = mesh.volume;
  out["areas"] = list_json(mesh.areas);
  out["diameter"] = diameter(mesh.vertices);
  out["gww"] = gww_json(mesh);
  out["mesh"] = json::parse(mesh_to_json(mesh, 17));
  return out;
}

json tetra_json(const TetraConfig& c) {
  json out;
  out["geometry"] = to_string(c.geometry);
  out["case"] = to_string(c.which);
  out["targets"] = list_json(c.targets);
  out["areas"] = list_json(c.areas);
  out["max_residual"] = c.max_residual;
  out["t"] = c.t;
  out["x"] = c.x;
  out["phi"] = c.phi;
  json verts = json::array();
  for (const auto& v : c.vertices) verts.push_back(vec_json(v));
  out["vertices"] = verts;
  out["winding"] = c.winding;
  out["winding_check"] = c.winding_check;
  out["subdivisions"] = c.subdivisions;
  out["determinant"] = c.determinant;
  if (c.geometry == Geometry::Spherical) {
    out["witness"] = vec_json(c.witness);
    out["witness_margin"] = c.witness_margin;
  }
  return out;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Internal:
    case ErrorKind::NotConverged:
      return kExitInternal;
    default:
      return kExitRejected;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"facetforge: polytopes with prescribed facet areas"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  std::uint64_t seed_flag = 0;
  app.add_flag("--exact-print", g.exact, "print numbers with 17 significant digits");
  auto* seed_opt = app.add_option("--seed", seed_flag, "RNG seed (overrides FACETFORGE_SEED)");
  app.add_option("-o,--output", g.output, "write the JSON report here instead of stdout");

  std::function<json()> job;

  // minkowski
  auto* mk = app.add_subcommand("minkowski", "surface data feasibility and reconstruction");
  mk->require_subcommand(1);
  std::string mk_input;
  double mk_tol = 1e-11;
  int mk_iter = 200;
  bool mk_fd = false;
  auto* mk_check = mk->add_subcommand("check", "check the closing condition and span");
  mk_check->add_option("--input", mk_input, "JSON {normals, areas}")->required();
  mk_check->callback([&] {
    job = [&] {
      const SurfaceData d = load_surface(mk_input);
      const FeasibilityReport r = check_feasible(d);
      json out;
      out["feasible"] = r.feasible;
      out["sum_vector"] = vec_json(r.sum_vector);
      out["sum_norm"] = r.sum_norm;
      out["span_rank"] = r.span_rank;
      out["max_area_ok"] = r.max_area_ok;
      out["max_area_slack"] = r.max_area_slack;
      return out;
    };
  });
  auto* mk_solve = mk->add_subcommand("solve", "polytope with the given normals and areas");
  mk_solve->add_option("--input", mk_input, "JSON {normals, areas}")->required();
  mk_solve->add_option("--tol", mk_tol, "relative area tolerance");
  mk_solve->add_option("--max-iter", mk_iter, "Newton iteration limit");
  mk_solve->add_flag("--fd-jacobian", mk_fd, "finite-difference Jacobian");
  mk_solve->add_option("--off", g.off, "OFF export path");
  mk_solve->add_option("--mesh-json", g.mesh_json, "mesh JSON export path");
  mk_solve->callback([&] {
    job = [&] {
      const SurfaceData d = load_surface(mk_input);
      SolveOptions opt;
      opt.tol = mk_tol;
      opt.max_iter = mk_iter;
      opt.finite_difference_jacobian = mk_fd;
      const SolveResult r = solve_support(d, opt);
      export_mesh(g, r.mesh);
      json out = mesh_report(r.mesh);
      out["h"] = vec_json(r.h);
      out["iterations"] = r.iterations;
      out["residual"] = r.residual;
      return out;
    };
  });

  // shrink
  auto* sh = app.add_subcommand("shrink", "polytope with given facet areas and small volume");
  std::vector<double> sh_areas;
  double sh_target = 1e-3;
  sh->add_option("--areas", sh_areas, "facet areas")->required()->delimiter(',');
  sh->add_option("--target", sh_target, "volume target");
  sh->add_option("--off", g.off, "OFF export path");
  sh->add_option("--mesh-json", g.mesh_json, "mesh JSON export path");
  sh->callback([&] {
    job = [&] {
      const SmallVolumeResult r = build_small_volume_polytope(sh_areas, sh_target, resolve_seed(g));
      export_mesh(g, r.mesh);
      json out = mesh_report(r.mesh);
      out["target"] = sh_target;
      double worst = 0.0;
      for (std::size_t i = 0; i < r.order.size(); ++i) {
        const double want = sh_areas[r.order[i]];
        worst = std::max(worst, std::abs(r.mesh.areas[i] - want) / want);
      }
      out["order"] = list_json(r.order);
      out["max_relative_area_error"] = worst;
      out["needle_route"] = r.needle_route;
      if (r.needle_route) out["needle_eps"] = r.needle_eps;
      json hist = json::array();
      for (const TiltStep& s : r.history) {
        hist.push_back({{"alpha", s.alpha}, {"volume", s.volume}, {"solved", s.solved}});
      }
      out["history"] = hist;
      return out;
    };
  });

  // needle
  auto* nd = app.add_subcommand("needle", "needle tetrahedron or odd-dimensional needle simplex");
  double nd_eps = 0.1;
  int nd_k = 0;
  nd->add_option("--eps", nd_eps, "needle parameter")->required();
  nd->add_option("--k", nd_k, "simplex in R^(2k+1) instead of the tetrahedron");
  nd->add_option("--off", g.off, "OFF export path");
  nd->add_option("--mesh-json", g.mesh_json, "mesh JSON export path");
  nd->callback([&] {
    job = [&] {
      if (nd_k > 0) {
        const std::vector<VecN> v = needle_simplex_odd(nd_k, nd_eps);
        json out;
        json verts = json::array();
        for (const VecN& p : v) verts.push_back(vec_json(p));
        out["dimension"] = 2 * nd_k + 1;
        out["vertices"] = verts;
        out["volume"] = cayley_menger_volume(v);
        json facets = json::array();
        for (std::size_t skip = 0; skip < v.size(); ++skip) {
          std::vector<VecN> f;
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (i != skip) f.push_back(v[i]);
          }
          facets.push_back(cayley_menger_volume(f));
        }
        out["facet_volumes"] = facets;
        return out;
      }
      const PolytopeMesh mesh = needle_tetrahedron(nd_eps);
      export_mesh(g, mesh);
      json out = mesh_report(mesh);
      out["closed_form_volume"] = needle_volume(nd_eps);
      return out;
    };
  });

  // bounds
  auto* bd = app.add_subcommand("bounds", "volume bounds for steep polytopes");
  bd->require_subcommand(1);
  BoundInputs bin;
  std::string bd_mesh;
  bool bd_chain = false;
  auto add_bound_inputs = [&](CLI::App* c) {
    c->add_option("--eps", bin.eps, "tilt of the normals");
    c->add_option("--beta", bin.beta, "normal angle separation (n = 3)");
    c->add_option("--b", bin.b, "parallelotope volume bound (n > 3)");
    c->add_option("--n", bin.n, "dimension");
    c->add_option("--mesh", bd_mesh, "measure eps and beta from a mesh (JSON or OFF)");
  };
  auto resolve_bound_inputs = [&] {
    if (!bd_mesh.empty()) {
      const PolytopeMesh mesh = load_mesh(bd_mesh);
      const BoundInputs m = measure_bound_inputs(mesh);
      bin.eps = m.eps;
      bin.beta = m.beta;
      bin.n = m.n;
      bin.S = m.S;
    }
  };
  auto* bd_slope = bd->add_subcommand("slope", "tilt bound for intersection lines of facets");
  add_bound_inputs(bd_slope);
  bd_slope->callback([&] {
    job = [&] {
      resolve_bound_inputs();
      json out;
      out["eps"] = bin.eps;
      out["beta"] = bin.beta;
      out["slope_bound"] = slope_bound(bin);
      if (bin.n == 3 && bin.eps <= bin.beta / 2.0) {
        out["sharp_example_angle"] = slope_sharp_example_angle(bin.eps, bin.beta);
      }
      return out;
    };
  });
  auto* bd_vol = bd->add_subcommand("volume", "volume bound from facet areas");
  add_bound_inputs(bd_vol);
  bd_vol->add_option("--areas", bin.S, "facet areas")->delimiter(',');
  bd_vol->add_flag("--chain-only", bd_chain, "report the unsimplified bound only");
  bd_vol->callback([&] {
    job = [&] {
      resolve_bound_inputs();
      const VolumeBound v = facet_volume_bound(bin, bd_chain);
      json out;
      out["eps"] = bin.eps;
      out["beta"] = bin.beta;
      out["ratio"] = v.ratio;
      out["chain"] = v.chain;
      out["simplified"] = v.simplified;
      if (!bd_mesh.empty()) out["volume"] = load_mesh(bd_mesh).volume;
      return out;
    };
  });

  // infimum
  auto* inf = app.add_subcommand("infimum", "infimum of polygon areas with given sides");
  inf->require_subcommand(1);
  std::vector<double> inf_sides;
  std::string inf_geom = "euclidean";
  bool inf_cyclic = false;
  auto cert_json = [](const InfimumResult& r) {
    json out;
    out["value"] = r.value;
    out["candidates"] = r.candidates;
    const PartitionCertificate& c = r.certificate;
    json parts = json::array();
    for (const auto& p : c.parts) parts.push_back(list_json(p));
    out["parts"] = parts;
    out["signs"] = list_json(c.signs);
    out["triple"] = {c.triple[0], c.triple[1], c.triple[2]};
    out["area"] = c.area;
    out["geometry"] = to_string(c.geometry);
    return out;
  };
  auto* inf_convex = inf->add_subcommand("convex", "convex polygons");
  inf_convex->add_option("--sides", inf_sides, "side lengths")->required()->delimiter(',');
  inf_convex->add_option("--geometry", inf_geom, "euclidean|spherical|hyperbolic");
  inf_convex->add_flag("--cyclic", inf_cyclic, "parts must be arcs of the side cycle");
  inf_convex->callback([&] {
    job = [&] { return cert_json(infimum_convex(inf_sides, parse_geometry(inf_geom), inf_cyclic)); };
  });
  auto* inf_simple = inf->add_subcommand("simple", "simple polygons");
  inf_simple->add_option("--sides", inf_sides, "side lengths")->required()->delimiter(',');
  inf_simple->add_option("--geometry", inf_geom, "euclidean|spherical|hyperbolic");
  inf_simple->callback([&] {
    job = [&] {
      const InfimumResult r = infimum_simple(inf_sides, parse_geometry(inf_geom));
      json out = cert_json(r);
      if (r.value > 0.0) out["indecomposable"] = r.certificate.indecomposable;
      return out;
    };
  });

  // noneuclid
  auto* ne = app.add_subcommand("noneuclid", "triangle constructions in S^2 and H^2");
  ne->require_subcommand(1);
  double ne_x = 0.0, ne_t = 1.0, ne_S = 0.1, ne_a = 1.0, ne_b = 1.0;
  int ne_n = 3;
  std::string ne_geom = "hyperbolic";
  std::vector<double> ne_areas;
  std::vector<int> ne_k;
  auto* ne_f = ne->add_subcommand("f", "apex height for a prescribed area");
  ne_f->add_option("--x", ne_x, "foot position on the base");
  ne_f->add_option("--t", ne_t, "base length");
  ne_f->add_option("--S", ne_S, "area")->required();
  ne_f->add_option("--geometry", ne_geom, "spherical|hyperbolic");
  ne_f->callback([&] {
    job = [&] {
      const Geometry geo = parse_geometry(ne_geom);
      const double y = f_tS(ne_x, ne_t, ne_S, geo);
      json out;
      out["y"] = y;
      out["area_check"] = construction_area(ne_x, y, ne_t, geo);
      return out;
    };
  });
  auto* ne_h = ne->add_subcommand("h", "apex height over an endpoint, closed form");
  ne_h->add_option("--t", ne_t, "base length");
  ne_h->add_option("--S", ne_S, "area")->required();
  ne_h->add_option("--geometry", ne_geom, "spherical|hyperbolic");
  ne_h->callback([&] {
    job = [&] {
      const Geometry geo = parse_geometry(ne_geom);
      json out;
      out["h"] = h_tS(ne_t, ne_S, geo);
      out["root"] = f_tS(0.0, ne_t, ne_S, geo);
      if (geo == Geometry::Hyperbolic) out["cosh_h"] = std::cosh(h_tS(ne_t, ne_S, geo));
      return out;
    };
  });
  auto* ne_bkm = ne->add_subcommand("bkm", "largest triangle with two given sides");
  ne_bkm->add_option("--a", ne_a, "first side");
  ne_bkm->add_option("--b", ne_b, "second side");
  ne_bkm->add_option("--geometry", ne_geom, "euclidean|spherical|hyperbolic");
  ne_bkm->callback([&] {
    job = [&] {
      const BkmMax m = bkm_max(ne_a, ne_b, parse_geometry(ne_geom));
      return json{{"x_max", m.x_max}, {"gamma_max", m.gamma_max}, {"area_max", m.area_max}};
    };
  });
  auto* ne_check = ne->add_subcommand("check", "necessary conditions on facet areas");
  ne_check->add_option("--areas", ne_areas, "facet areas")->required()->delimiter(',');
  ne_check->add_option("--k", ne_k, "facets per facet (hyperbolic)")->delimiter(',');
  ne_check->add_option("--n", ne_n, "dimension");
  ne_check->add_option("--geometry", ne_geom, "euclidean|spherical|hyperbolic");
  ne_check->callback([&] {
    job = [&] {
      std::optional<std::vector<int>> k;
      if (!ne_k.empty()) k = ne_k;
      const NecessaryReport r = check_necessary(ne_areas, k, ne_n, parse_geometry(ne_geom));
      json checks = json::array();
      for (const NecessaryCheck& c : r.checks) {
        json e{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}};
        if (c.index >= 0) e["index"] = c.index;
        checks.push_back(e);
      }
      return json{{"all_pass", r.all_pass}, {"checks", checks}};
    };
  });

  // sphere
  auto* sp = app.add_subcommand("sphere", "spherical polygons and suspension");
  sp->require_subcommand(1);
  std::vector<double> sp_values;
  int sp_dim = 2;
  auto* sp_poly = sp->add_subcommand("polygon", "cyclic polygon on S^2");
  sp_poly->add_option("--sides", sp_values, "side lengths")->required()->delimiter(',');
  sp_poly->callback([&] {
    job = [&] {
      const SphericalPolygon p = spherical_polygon_from_sides(sp_values);
      json verts = json::array();
      for (const auto& v : p.vertices) verts.push_back(vec_json(v));
      json out;
      out["vertices"] = verts;
      out["side_lengths"] = list_json(p.side_lengths);
      out["circumradius"] = p.circumradius;
      out["area"] = p.area;
      out["closure_residual"] = p.closure_residual;
      out["center_inside"] = p.center_inside;
      return out;
    };
  });
  auto* sp_lift = sp->add_subcommand("lift", "facet measures of the suspension");
  sp_lift->add_option("--areas", sp_values, "facet measures")->required()->delimiter(',');
  sp_lift->add_option("--from-dim", sp_dim, "dimension of the facets before lifting");
  sp_lift->callback([&] {
    job = [&] {
      const std::vector<double> lifted = suspension_lift_areas(sp_values, sp_dim);
      const NecessaryReport r =
          check_necessary(lifted, std::nullopt, sp_dim + 1, Geometry::Spherical);
      return json{{"areas", list_json(lifted)}, {"from_dim", sp_dim}, {"checks_pass", r.all_pass}};
    };
  });

  // tetra
  auto* te = app.add_subcommand("tetra", "tetrahedra with prescribed face areas");
  te->require_subcommand(1);
  std::vector<double> te_areas;
  std::string te_geom = "hyperbolic";
  auto* te_solve = te->add_subcommand("solve", "solve for the face areas");
  te_solve->add_option("--areas", te_areas, "four non-decreasing face areas")->required()->delimiter(',');
  te_solve->add_option("--geometry", te_geom, "spherical|hyperbolic");
  te_solve->callback([&] {
    job = [&] {
      if (te_areas.size() != 4) fail(ErrorKind::InvalidInput, "need exactly four areas");
      std::array<double, 4> S;
      std::copy(te_areas.begin(), te_areas.end(), S.begin());
      return tetra_json(solve_tetra(S, parse_geometry(te_geom)));
    };
  });

  // oracle
  auto* orc = app.add_subcommand("oracle", "independent estimates");
  orc->require_subcommand(1);
  std::string orc_mesh, orc_geom = "euclidean";
  long long orc_samples = 1000000;
  int orc_trials = 10000;
  std::vector<double> orc_sides;
  auto* orc_mc = orc->add_subcommand("mc", "Monte Carlo volume of a mesh");
  orc_mc->add_option("--mesh", orc_mesh, "mesh file (JSON or OFF)")->required();
  orc_mc->add_option("--samples", orc_samples, "sample count");
  orc_mc->callback([&] {
    job = [&] {
      const PolytopeMesh mesh = load_mesh(orc_mesh);
      const McVolume r = mc_volume(mesh, orc_samples, resolve_seed(g));
      return json{{"estimate", r.estimate}, {"stderr", r.stderr_}, {"samples", r.samples},
                  {"inside", r.inside}, {"mesh_volume", mesh.volume}};
    };
  });
  auto* orc_sample = orc->add_subcommand("sample", "random convex polygons with given sides");
  orc_sample->add_option("--sides", orc_sides, "side lengths")->required()->delimiter(',');
  orc_sample->add_option("--geometry", orc_geom, "euclidean|spherical|hyperbolic");
  orc_sample->add_option("--trials", orc_trials, "polygon count");
  orc_sample->callback([&] {
    job = [&] {
      const PolygonSample r =
          sample_polygon_areas(orc_sides, parse_geometry(orc_geom), orc_trials, resolve_seed(g));
      return json{{"min_area", r.min_area}, {"max_area", r.max_area}, {"trials", r.trials},
                  {"moves", r.moves}};
    };
  });

  try {
    app.parse(argc, argv);
    if (seed_opt->count() > 0) g.seed = seed_flag;
    resolve_seed(g);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  const int digits = g.exact ? 17 : 12;
  json report;
  int code = kExitOk;
  try {
    report = job();
    report["status"] = "ok";
  } catch (const Error& e) {
    code = exit_code_for(e.kind());
    report = json{{"status", "error"}, {"error", to_string(e.kind())}, {"message", e.what()}};
    if (e.kind() == ErrorKind::NotConverged) {
      report["iterations"] = e.iterations;
      report["residual"] = e.residual;
    }
    if (e.index >= 0) report["index"] = e.index;
  } catch (const std::exception& e) {
    code = kExitInternal;
    report = json{{"status", "error"}, {"error", "Internal"}, {"message", e.what()}};
  }
  std::ostringstream os;
  dump(os, report, digits);
  os << '\n';
  if (g.output.empty()) {
    std::cout << os.str();
  } else {
    try {
      write_text_file(g.output, os.str());
    } catch (const std::exception& e) {
      std::cerr << e.what() << '\n';
      return kExitInternal;
    }
  }
  return code;
}
