// Copyright 2026 The cadseq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "cadseq/error.h"
#include "cadseq/mesh.h"

namespace cadseq {

Vec3 FaceAreaVector(const TriMesh& m, size_t face) {
  const auto [a, b, c] = m.Corners(face);
  return Cross(b - a, c - a);
}

double FaceArea(const TriMesh& m, size_t face) {
  return 0.5 * Length(FaceAreaVector(m, face));
}

Vec3 FaceNormal(const TriMesh& m, size_t face) {
  const Vec3 n = FaceAreaVector(m, face);
  const double len = Length(n);
  return len > 0 ? n / len : Vec3{};
}

double SurfaceArea(const TriMesh& m) {
  CompensatedSum sum;
  for (size_t f = 0; f < m.faces.size(); ++f) sum.Add(FaceArea(m, f));
  return sum.Value();
}

double SignedVolume(const TriMesh& m) {
  CompensatedSum sum;
  for (size_t f = 0; f < m.faces.size(); ++f) {
    const auto [a, b, c] = m.Corners(f);
    sum.Add(Dot(a, Cross(b, c)));
  }
  return sum.Value() / 6;
}

Aabb BoundingBox(const TriMesh& m) {
  if (m.faces.empty()) throw CadError(ErrorCode::EmptyMesh, "bounding box of empty mesh");
  Aabb box;
  for (const auto& f : m.faces) {
    for (int v : f) box.Extend(m.vertices[v]);
  }
  return box;
}

std::vector<std::string> CheckMeshInvariants(const TriMesh& m, double min_area) {
  std::vector<std::string> out;
  for (size_t i = 0; i < m.vertices.size(); ++i) {
    const Vec3 v = m.vertices[i];
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z)) {
      out.push_back("vertex " + std::to_string(i) + " is not finite");
    }
  }
  const int nv = static_cast<int>(m.vertices.size());
  for (size_t f = 0; f < m.faces.size(); ++f) {
    const auto& face = m.faces[f];
    if (std::any_of(face.begin(), face.end(), [&](int v) { return v < 0 || v >= nv; })) {
      out.push_back("face " + std::to_string(f) + " has an index out of range");
      continue;
    }
    if (FaceArea(m, f) <= min_area) {
      out.push_back("face " + std::to_string(f) + " is degenerate");
    }
  }
  return out;
}

TriMesh RemoveUnreferencedVertices(const TriMesh& m) {
  std::vector<int> remap(m.vertices.size(), -1);
  TriMesh out;
  out.faces.reserve(m.faces.size());
  for (const auto& f : m.faces) {
    std::array<int, 3> nf;
    for (int k = 0; k < 3; ++k) {
      int& r = remap[f[k]];
      if (r < 0) {
        r = static_cast<int>(out.vertices.size());
        out.vertices.push_back(m.vertices[f[k]]);
      }
      nf[k] = r;
    }
    out.faces.push_back(nf);
  }
  return out;
}

namespace {

struct CellKey {
  long long x, y, z;
  bool operator==(const CellKey&) const = default;
};
struct CellHash {
  size_t operator()(const CellKey& k) const {
    size_t h = std::hash<long long>()(k.x);
    h = h * 1000003u ^ std::hash<long long>()(k.y);
    h = h * 1000003u ^ std::hash<long long>()(k.z);
    return h;
  }
};

}  // namespace

TriMesh WeldVertices(const TriMesh& m, double tol) {
  // Grid hashing with cell size tol: any partner within tol sits in one of
  // the 27 neighbouring cells.
  const double cell = tol > 0 ? tol : 1e-300;
  std::unordered_map<CellKey, std::vector<int>, CellHash> grid;
  std::vector<int> rep(m.vertices.size());
  const double tol2 = tol * tol;
  for (size_t i = 0; i < m.vertices.size(); ++i) {
    const Vec3 p = m.vertices[i];
    const CellKey key{static_cast<long long>(std::floor(p.x / cell)),
                      static_cast<long long>(std::floor(p.y / cell)),
                      static_cast<long long>(std::floor(p.z / cell))};
    int found = -1;
    for (long long dx = -1; dx <= 1 && found < 0; ++dx) {
      for (long long dy = -1; dy <= 1 && found < 0; ++dy) {
        for (long long dz = -1; dz <= 1 && found < 0; ++dz) {
          auto it = grid.find({key.x + dx, key.y + dy, key.z + dz});
          if (it == grid.end()) continue;
          for (int j : it->second) {
            if (SquaredDistance(m.vertices[j], p) <= tol2) {
              found = j;
              break;
            }
          }
        }
      }
    }
    if (found >= 0) {
      rep[i] = found;
    } else {
      rep[i] = static_cast<int>(i);
      grid[key].push_back(static_cast<int>(i));
    }
  }
  TriMesh out;
  out.vertices = m.vertices;
  for (const auto& f : m.faces) {
    const std::array<int, 3> nf{rep[f[0]], rep[f[1]], rep[f[2]]};
    if (nf[0] == nf[1] || nf[1] == nf[2] || nf[0] == nf[2]) continue;
    out.faces.push_back(nf);
  }
  return RemoveUnreferencedVertices(out);
}

TriMesh FlipFaces(const TriMesh& m) {
  TriMesh out = m;
  for (auto& f : out.faces) std::swap(f[1], f[2]);
  return out;
}

TriMesh Concatenate(const TriMesh& a, const TriMesh& b) {
  TriMesh out = a;
  const int offset = static_cast<int>(a.vertices.size());
  out.vertices.insert(out.vertices.end(), b.vertices.begin(), b.vertices.end());
  for (const auto& f : b.faces) {
    out.faces.push_back({f[0] + offset, f[1] + offset, f[2] + offset});
  }
  return out;
}

TriMesh Transformed(const TriMesh& m, double scale, Vec3 translation) {
  TriMesh out = m;
  for (Vec3& v : out.vertices) v = v * scale + translation;
  return out;
}

void WriteObj(std::ostream& out, const TriMesh& m) {
  char buf[128];
  for (const Vec3& v : m.vertices) {
    std::snprintf(buf, sizeof(buf), "v %.9g %.9g %.9g\n", v.x, v.y, v.z);
    out << buf;
  }
  for (const auto& f : m.faces) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
}

std::string ObjString(const TriMesh& m) {
  std::ostringstream s;
  WriteObj(s, m);
  return s.str();
}

void SaveObj(const std::string& path, const TriMesh& m) {
  std::ofstream out(path);
  if (!out) throw CadError(ErrorCode::Io, "cannot write " + path);
  WriteObj(out, m);
  if (!out) throw CadError(ErrorCode::Io, "failed writing " + path);
}

TriMesh ReadObj(std::istream& in) {
  TriMesh m;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream s(line);
    std::string tag;
    if (!(s >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Vec3 v;
      if (!(s >> v.x >> v.y >> v.z)) {
        throw CadError(ErrorCode::ParseError, "bad vertex on line " + std::to_string(line_no));
      }
      m.vertices.push_back(v);
    } else if (tag == "f") {
      std::vector<int> poly;
      std::string ref;
      while (s >> ref) {
        int idx = 0;
        try {
          idx = std::stoi(ref.substr(0, ref.find('/')));
        } catch (const std::exception&) {
          throw CadError(ErrorCode::ParseError, "bad face on line " + std::to_string(line_no));
        }
        // Negative indices count back from the latest vertex.
        idx = idx < 0 ? static_cast<int>(m.vertices.size()) + idx : idx - 1;
        if (idx < 0 || idx >= static_cast<int>(m.vertices.size())) {
          throw CadError(ErrorCode::ParseError,
                         "face index out of range on line " + std::to_string(line_no));
        }
        poly.push_back(idx);
      }
      if (poly.size() < 3) {
        throw CadError(ErrorCode::ParseError, "face with fewer than 3 vertices on line " +
                                                  std::to_string(line_no));
      }
      for (size_t k = 1; k + 1 < poly.size(); ++k) {
        m.faces.push_back({poly[0], poly[k], poly[k + 1]});
      }
    }
  }
  return m;
}

TriMesh LoadObj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CadError(ErrorCode::Io, "cannot open " + path);
  return ReadObj(in);
}

}  // namespace cadseq
