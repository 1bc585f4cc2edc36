// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#include "facetforge/mesh_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "facetforge/error.hpp"

namespace facetforge {

std::string format_number(double value, int digits) {
  if (std::isnan(value)) return "null";
  if (std::isinf(value)) return value > 0 ? "1e999" : "-1e999";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

std::string mesh_to_off(const PolytopeMesh& mesh, int digits) {
  std::ostringstream os;
  os << "OFF\n"
     << mesh.vertices.size() << ' ' << mesh.facets.size() << ' '
     << mesh.num_edges() << '\n';
  for (const Vec3& v : mesh.vertices) {
    os << format_number(v.x(), digits) << ' ' << format_number(v.y(), digits)
       << ' ' << format_number(v.z(), digits) << '\n';
  }
  for (const auto& f : mesh.facets) {
    os << f.size();
    for (int i : f) os << ' ' << i;
    os << '\n';
  }
  return os.str();
}

PolytopeMesh mesh_from_off(const std::string& text) {
  std::istringstream is(text);
  std::string magic;
  is >> magic;
  if (magic != "OFF") fail(ErrorKind::InvalidInput, "missing OFF header");
  std::size_t nv = 0, nf = 0, ne = 0;
  if (!(is >> nv >> nf >> ne)) fail(ErrorKind::InvalidInput, "bad OFF counts");
  PolytopeMesh mesh;
  mesh.vertices.resize(nv);
  for (Vec3& v : mesh.vertices) {
    if (!(is >> v.x() >> v.y() >> v.z())) {
      fail(ErrorKind::InvalidInput, "truncated OFF vertex list");
    }
  }
  mesh.facets.resize(nf);
  for (auto& f : mesh.facets) {
    std::size_t k = 0;
    if (!(is >> k)) fail(ErrorKind::InvalidInput, "truncated OFF facet list");
    f.resize(k);
    for (int& i : f) {
      if (!(is >> i) || i < 0 || static_cast<std::size_t>(i) >= nv) {
        fail(ErrorKind::InvalidInput, "bad OFF facet index");
      }
    }
  }
  mesh.facet_label.assign(nf, -1);
  refresh_geometry(mesh);
  return mesh;
}

std::string mesh_to_json(const PolytopeMesh& mesh, int digits) {
  std::ostringstream os;
  os << "{\"vertices\": [";
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Vec3& v = mesh.vertices[i];
    os << (i ? ", " : "") << '[' << format_number(v.x(), digits) << ", "
       << format_number(v.y(), digits) << ", " << format_number(v.z(), digits)
       << ']';
  }
  os << "], \"facets\": [";
  for (std::size_t i = 0; i < mesh.facets.size(); ++i) {
    os << (i ? ", " : "") << '[';
    for (std::size_t k = 0; k < mesh.facets[i].size(); ++k) {
      os << (k ? ", " : "") << mesh.facets[i][k];
    }
    os << ']';
  }
  os << "], \"areas\": [";
  for (std::size_t i = 0; i < mesh.areas.size(); ++i) {
    os << (i ? ", " : "") << format_number(mesh.areas[i], digits);
  }
  os << "], \"volume\": " << format_number(mesh.volume, digits) << '}';
  return os.str();
}

PolytopeMesh mesh_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("mesh JSON: ") + e.what());
  }
  if (!j.contains("vertices") || !j.contains("facets")) {
    fail(ErrorKind::InvalidInput, "mesh JSON needs vertices and facets");
  }
  PolytopeMesh mesh;
  try {
    for (const auto& v : j.at("vertices")) {
      if (v.size() != 3) fail(ErrorKind::InvalidInput, "vertex needs 3 coords");
      mesh.vertices.emplace_back(v[0].get<double>(), v[1].get<double>(),
                                 v[2].get<double>());
    }
    for (const auto& f : j.at("facets")) {
      std::vector<int> cyc;
      for (const auto& i : f) {
        const int k = i.get<int>();
        if (k < 0 || static_cast<std::size_t>(k) >= mesh.vertices.size()) {
          fail(ErrorKind::InvalidInput, "facet index out of range");
        }
        cyc.push_back(k);
      }
      mesh.facets.push_back(std::move(cyc));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("mesh JSON: ") + e.what());
  }
  mesh.facet_label.assign(mesh.facets.size(), -1);
  refresh_geometry(mesh);
  return mesh;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) fail(ErrorKind::InvalidInput, "cannot write " + path);
  os << text;
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorKind::InvalidInput, "cannot read " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace facetforge
