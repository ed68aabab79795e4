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

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "cadseq/error.h"
#include "cadseq/recon.h"

namespace cadseq {

namespace {

void PutFloat(std::ostream& out, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  char bytes[4];
  for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(bytes, 4);
}

std::uint64_t GetLittleEndian(std::istream& in, int width) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), width)) {
    throw CadError(ErrorCode::ParseError, "PLY body is truncated");
  }
  std::uint64_t bits = 0;
  for (int i = width - 1; i >= 0; --i) bits = (bits << 8) | bytes[i];
  return bits;
}

double GetScalar(std::istream& in, bool is_double) {
  if (is_double) return std::bit_cast<double>(GetLittleEndian(in, 8));
  return std::bit_cast<float>(static_cast<std::uint32_t>(GetLittleEndian(in, 4)));
}

bool EndsWith(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

void WritePly(std::ostream& out, const PointCloud& pc) {
  out << "ply\nformat binary_little_endian 1.0\nelement vertex " << pc.size()
      << "\nproperty float x\nproperty float y\nproperty float z\n";
  if (pc.HasNormals()) out << "property float nx\nproperty float ny\nproperty float nz\n";
  out << "end_header\n";
  for (size_t i = 0; i < pc.size(); ++i) {
    for (int a = 0; a < 3; ++a) PutFloat(out, static_cast<float>(pc.points[i][a]));
    if (pc.HasNormals()) {
      for (int a = 0; a < 3; ++a) PutFloat(out, static_cast<float>(pc.normals[i][a]));
    }
  }
}

PointCloud ReadPly(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "ply") {
    throw CadError(ErrorCode::ParseError, "missing PLY magic");
  }
  size_t count = 0;
  bool in_vertex = false;
  std::vector<std::pair<std::string, bool>> props;  // name, is_double
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::string key;
    words >> key;
    if (key == "format") {
      std::string fmt;
      words >> fmt;
      if (fmt != "binary_little_endian") {
        throw CadError(ErrorCode::ParseError, "unsupported PLY format " + fmt);
      }
    } else if (key == "element") {
      std::string name;
      words >> name;
      in_vertex = name == "vertex";
      if (in_vertex) words >> count;
    } else if (key == "property" && in_vertex) {
      std::string type, name;
      words >> type >> name;
      if (type != "float" && type != "float32" && type != "double" && type != "float64") {
        throw CadError(ErrorCode::ParseError, "unsupported PLY property type " + type);
      }
      props.emplace_back(name, type == "double" || type == "float64");
    } else if (key == "end_header") {
      break;
    }
  }
  auto slot = [&](const std::string& name) {
    for (size_t i = 0; i < props.size(); ++i) {
      if (props[i].first == name) return static_cast<int>(i);
    }
    return -1;
  };
  const int px = slot("x"), py = slot("y"), pz = slot("z");
  const int nx = slot("nx"), ny = slot("ny"), nz = slot("nz");
  if (px < 0 || py < 0 || pz < 0) throw CadError(ErrorCode::ParseError, "PLY lacks x y z");
  const bool normals = nx >= 0 && ny >= 0 && nz >= 0;
  PointCloud pc;
  std::vector<double> row(props.size());
  for (size_t i = 0; i < count; ++i) {
    for (size_t k = 0; k < props.size(); ++k) row[k] = GetScalar(in, props[k].second);
    pc.points.push_back({row[px], row[py], row[pz]});
    if (normals) pc.normals.push_back({row[nx], row[ny], row[nz]});
  }
  return pc;
}

void WriteXyz(std::ostream& out, const PointCloud& pc) {
  char buf[160];
  for (size_t i = 0; i < pc.size(); ++i) {
    const Vec3 p = pc.points[i];
    if (pc.HasNormals()) {
      const Vec3 n = pc.normals[i];
      std::snprintf(buf, sizeof buf, "%.9g %.9g %.9g %.9g %.9g %.9g\n", p.x, p.y, p.z, n.x,
                    n.y, n.z);
    } else {
      std::snprintf(buf, sizeof buf, "%.9g %.9g %.9g\n", p.x, p.y, p.z);
    }
    out << buf;
  }
}

PointCloud ReadXyz(std::istream& in) {
  PointCloud pc;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream words(line);
    std::vector<double> v;
    double x;
    while (words >> x) v.push_back(x);
    if (!words.eof()) {
      throw CadError(ErrorCode::ParseError, "bad number on line " + std::to_string(line_no));
    }
    if (v.empty()) continue;
    if (v.size() != 3 && v.size() != 6) {
      throw CadError(ErrorCode::ParseError,
                     "expected 3 or 6 values on line " + std::to_string(line_no));
    }
    pc.points.push_back({v[0], v[1], v[2]});
    if (v.size() == 6) pc.normals.push_back({v[3], v[4], v[5]});
  }
  if (!pc.normals.empty() && pc.normals.size() != pc.points.size()) {
    throw CadError(ErrorCode::ParseError, "normals given for only some points");
  }
  return pc;
}

void SavePointCloud(const std::string& path, const PointCloud& pc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CadError(ErrorCode::Io, "cannot write " + path);
  if (EndsWith(path, ".ply")) {
    WritePly(out, pc);
  } else {
    WriteXyz(out, pc);
  }
  if (!out) throw CadError(ErrorCode::Io, "write failed for " + path);
}

PointCloud LoadPointCloud(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CadError(ErrorCode::Io, "cannot read " + path);
  return EndsWith(path, ".ply") ? ReadPly(in) : ReadXyz(in);
}

}  // namespace cadseq
