#include "gaze4d/core/obj_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "gaze4d/core/errors.hpp"

namespace gaze4d {

namespace {

struct FaceRef {
  int v = 0;   // 1-based position index
  int vt = 0;  // 1-based UV index
};

FaceRef parse_face_ref(const std::string& tok, const std::string& origin,
                       int line_no) {
  FaceRef ref;
  const size_t s1 = tok.find('/');
  if (s1 == std::string::npos) {
    throw ParseError(origin + ":" + std::to_string(line_no) +
                     ": face vertex without UV index (need v/vt)");
  }
  try {
    ref.v = std::stoi(tok.substr(0, s1));
    const size_t s2 = tok.find('/', s1 + 1);
    const std::string vt_str = s2 == std::string::npos
                                   ? tok.substr(s1 + 1)
                                   : tok.substr(s1 + 1, s2 - s1 - 1);
    if (vt_str.empty()) {
      throw ParseError(origin + ":" + std::to_string(line_no) +
                       ": face vertex without UV index");
    }
    ref.vt = std::stoi(vt_str);
  } catch (const std::invalid_argument&) {
    throw ParseError(origin + ":" + std::to_string(line_no) +
                     ": malformed face index '" + tok + "'");
  }
  return ref;
}

}  // namespace

TexturedMesh load_obj_stream(std::istream& in, const std::string& origin) {
  std::vector<Vec3f> positions;
  std::vector<Vec2f> uvs;
  TexturedMesh mesh;
  // Deduplicate (v, vt) pairs so UVs become per-vertex.
  std::map<std::pair<int, int>, uint32_t> corner_map;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      float x, y, z;
      if (!(ls >> x >> y >> z))
        throw ParseError(origin + ":" + std::to_string(line_no) +
                         ": malformed vertex");
      positions.emplace_back(x, y, z);
    } else if (tag == "vt") {
      float u, v;
      if (!(ls >> u >> v))
        throw ParseError(origin + ":" + std::to_string(line_no) +
                         ": malformed UV");
      uvs.emplace_back(u, v);
    } else if (tag == "f") {
      std::vector<std::string> toks;
      std::string tok;
      while (ls >> tok) toks.push_back(tok);
      if (toks.size() != 3)
        throw ParseError(origin + ":" + std::to_string(line_no) +
                         ": only triangulated faces are supported");
      std::array<uint32_t, 3> tri;
      for (int i = 0; i < 3; ++i) {
        FaceRef ref = parse_face_ref(toks[i], origin, line_no);
        if (ref.v < 1 || ref.v > static_cast<int>(positions.size()) ||
            ref.vt < 1 || ref.vt > static_cast<int>(uvs.size())) {
          throw ParseError(origin + ":" + std::to_string(line_no) +
                           ": face index out of range");
        }
        auto key = std::make_pair(ref.v, ref.vt);
        auto it = corner_map.find(key);
        if (it == corner_map.end()) {
          it = corner_map.emplace(key, static_cast<uint32_t>(mesh.vertices.size()))
                   .first;
          mesh.vertices.push_back(positions[ref.v - 1]);
          mesh.uv.push_back(uvs[ref.vt - 1]);
        }
        tri[i] = it->second;
      }
      mesh.triangles.push_back(tri);
    }
    // vn / o / g / s / usemtl / mtllib are skipped.
  }
  if (mesh.triangles.empty())
    throw ParseError(origin + ": no triangles found");
  return mesh;
}

TexturedMesh load_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open OBJ file: " + path);
  return load_obj_stream(in, path);
}

void save_obj(const TexturedMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write OBJ file: " + path);
  char buf[128];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "v %.9g %.9g %.9g\n", v.x(), v.y(), v.z());
    out << buf;
  }
  for (const auto& t : mesh.uv) {
    std::snprintf(buf, sizeof(buf), "vt %.9g %.9g\n", t.x(), t.y());
    out << buf;
  }
  for (const auto& f : mesh.triangles) {
    out << "f " << f[0] + 1 << '/' << f[0] + 1 << ' ' << f[1] + 1 << '/'
        << f[1] + 1 << ' ' << f[2] + 1 << '/' << f[2] + 1 << '\n';
  }
}

}  // namespace gaze4d
