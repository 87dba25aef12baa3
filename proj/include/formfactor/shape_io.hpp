// formfactor/shape_io.hpp
//
// Shape files: a JSON object {"name": str, "vertices": [[x,y,z], ...],
// "faces": [[i, j, k, ...], ...]} with 0-based indices, each face
// counterclockwise seen from outside. A file with exactly one face is a
// polygon.
#pragma once

#include "formfactor/shapes.hpp"

#include <string>

namespace ff {

/// Throws ParseError for malformed text.
[[nodiscard]] shapes::Figure parse_shape(const std::string& text);
[[nodiscard]] shapes::Figure read_shape_file(const std::string& path);
[[nodiscard]] std::string format_shape(const shapes::Figure& figure, const std::string& name = "");

} // namespace ff
