#pragma once

#include <iosfwd>
#include <string>

#include "gaze4d/core/mesh.hpp"

namespace gaze4d {

/// Loads a triangulated OBJ subset: `v x y z`, `vt u v`, `f a/b a/b a/b`
/// (1-based indices, optional ignored normal index). Positions in meters.
/// Vertices are split so UVs become per-vertex. Other line types are skipped.
/// Throws ParseError on malformed records; the result is not yet textured.
TexturedMesh load_obj(const std::string& path);
TexturedMesh load_obj_stream(std::istream& in, const std::string& origin);

/// Writes the geometry back out in the same subset (for generated scenes).
void save_obj(const TexturedMesh& mesh, const std::string& path);

}  // namespace gaze4d
