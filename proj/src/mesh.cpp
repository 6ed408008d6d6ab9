#include "fiberdyn/mesh.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "fiberdyn/error.hpp"

namespace fiberdyn {

namespace {

std::uint64_t edge_key(int a, int b) {
  return (std::uint64_t(std::uint32_t(a)) << 32) | std::uint32_t(b);
}

}  // namespace

SurfaceMesh icosphere(int level, double radius, const Vec3& center) {
  if (level < 0 || level > 8) throw Error(ErrorKind::InvalidArgument, "icosphere level must be in 0..8");
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "icosphere radius must be positive");
  const double t = 0.5 * (1.0 + std::sqrt(5.0));
  std::vector<Vec3> v = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                         {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                         {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : v) p.normalize();
  std::vector<std::array<int, 3>> f = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
      {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (auto& tri : f) {
    Vec3 nrm = (v[tri[1]] - v[tri[0]]).cross(v[tri[2]] - v[tri[0]]);
    if (nrm.dot(v[tri[0]] + v[tri[1]] + v[tri[2]]) < 0.0) std::swap(tri[1], tri[2]);
  }
  for (int l = 0; l < level; ++l) {
    std::map<std::uint64_t, int> mid;
    auto midpoint = [&](int a, int b) {
      std::uint64_t key = edge_key(std::min(a, b), std::max(a, b));
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      v.push_back((v[a] + v[b]).normalized());
      int id = int(v.size()) - 1;
      mid.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> g;
    g.reserve(f.size() * 4);
    for (const auto& tri : f) {
      int a = midpoint(tri[0], tri[1]);
      int b = midpoint(tri[1], tri[2]);
      int c = midpoint(tri[2], tri[0]);
      g.push_back({tri[0], a, c});
      g.push_back({tri[1], b, a});
      g.push_back({tri[2], c, b});
      g.push_back({a, b, c});
    }
    f.swap(g);
  }
  SurfaceMesh m;
  m.vertices.reserve(v.size());
  for (const auto& p : v) m.vertices.push_back(center + radius * p);
  m.triangles = std::move(f);
  m.closed = true;
  return m;
}

SurfaceMesh read_off(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next = [&](std::istringstream& ss) {
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      ss.clear();
      ss.str(line);
      return true;
    }
    return false;
  };
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::InvalidArgument, "OFF line " + std::to_string(lineno) + ": " + what);
  };
  std::istringstream ss;
  if (!next(ss)) fail("empty input");
  std::string first;
  ss >> first;
  if (first == "OFF") {
    std::string rest;
    if (!(ss >> rest)) {
      if (!next(ss)) fail("missing counts");
    } else {
      ss.clear();
      ss.str(line.substr(line.find("OFF") + 3));
    }
  } else {
    ss.clear();
    ss.str(line);
  }
  long nv = -1, nf = -1;
  if (!(ss >> nv >> nf) || nv < 0 || nf < 0) fail("expected vertex and face counts");
  SurfaceMesh m;
  m.vertices.reserve(nv);
  for (long i = 0; i < nv; ++i) {
    if (!next(ss)) fail("unexpected end of vertex list");
    Vec3 p;
    if (!(ss >> p[0] >> p[1] >> p[2]) || !p.allFinite()) fail("bad vertex");
    m.vertices.push_back(p);
  }
  for (long i = 0; i < nf; ++i) {
    if (!next(ss)) fail("unexpected end of face list");
    int k;
    std::array<int, 3> t;
    if (!(ss >> k) || k != 3) fail("only triangles are supported");
    if (!(ss >> t[0] >> t[1] >> t[2])) fail("bad face");
    for (int id : t)
      if (id < 0 || id >= nv) fail("face index out of range");
    m.triangles.push_back(t);
  }
  update_closed(m);
  return m;
}

void write_off(std::ostream& out, const SurfaceMesh& m) {
  auto old = out.precision(17);
  out << "OFF\n" << m.vertices.size() << ' ' << m.triangles.size() << " 0\n";
  for (const auto& p : m.vertices) out << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
  for (const auto& t : m.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out.precision(old);
}

OrientationReport check_orientation(const SurfaceMesh& m) {
  std::map<std::uint64_t, int> directed;
  for (const auto& t : m.triangles)
    for (int k = 0; k < 3; ++k) ++directed[edge_key(t[k], t[(k + 1) % 3])];
  OrientationReport r;
  for (const auto& [key, count] : directed) {
    int a = int(key >> 32), b = int(key & 0xffffffffu);
    auto it = directed.find(edge_key(b, a));
    int back = it == directed.end() ? 0 : it->second;
    if (count > 1) r.consistent = false;
    if (count + back > 2 && a < b) ++r.nonmanifold_edges;
    if (back == 0) ++r.boundary_edges;
  }
  if (r.nonmanifold_edges > 0) r.consistent = false;
  return r;
}

void update_closed(SurfaceMesh& m) {
  OrientationReport r = check_orientation(m);
  m.closed = !m.triangles.empty() && r.consistent && r.boundary_edges == 0;
}

SurfaceMesh flipped(const SurfaceMesh& m) {
  SurfaceMesh out = m;
  for (auto& t : out.triangles) std::swap(t[1], t[2]);
  return out;
}

std::pair<SurfaceMesh, SurfaceMesh> partition(const SurfaceMesh& m,
                                              const std::function<bool(const Vec3&)>& first) {
  SurfaceMesh a, b;
  a.vertices = b.vertices = m.vertices;
  for (const auto& t : m.triangles) {
    Vec3 c = (m.vertices[t[0]] + m.vertices[t[1]] + m.vertices[t[2]]) / 3.0;
    (first(c) ? a : b).triangles.push_back(t);
  }
  update_closed(a);
  update_closed(b);
  return {a, b};
}

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  // closest point by Voronoi regions of the triangle
  Vec3 ab = b - a, ac = c - a, ap = p - a;
  double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return ap.norm();
  Vec3 bp = p - b;
  double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return bp.norm();
  double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) return (p - (a + (d1 / (d1 - d3)) * ab)).norm();
  Vec3 cp = p - c;
  double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return cp.norm();
  double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) return (p - (a + (d2 / (d2 - d6)) * ac)).norm();
  double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0)
    return (p - (b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b))).norm();
  double denom = 1.0 / (va + vb + vc);
  return (p - (a + ab * (vb * denom) + ac * (vc * denom))).norm();
}

}  // namespace fiberdyn
