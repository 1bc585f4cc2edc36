// Copyright 2026 The facetforge Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "facetforge/geom_core.hpp"

namespace facetforge {

// ASCII OFF. `digits` is the number of significant digits per coordinate.
std::string mesh_to_off(const PolytopeMesh& mesh, int digits = 17);
PolytopeMesh mesh_from_off(const std::string& text);

// {"vertices": [[x,y,z],...], "facets": [[i,...],...], "areas": [...],
//  "volume": v}
std::string mesh_to_json(const PolytopeMesh& mesh, int digits = 17);
PolytopeMesh mesh_from_json(const std::string& text);

std::string format_number(double value, int digits);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace facetforge
