#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "fiberdyn/liealg.hpp"

namespace fiberdyn {

struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;  // counter-clockwise seen from the outside
  bool closed = false;
};

// Subdivided icosahedron projected to the sphere: 20 * 4^level triangles, outward.
SurfaceMesh icosphere(int level, double radius = 1.0, const Vec3& center = Vec3::Zero());

// OFF text: optional "OFF" header, "nv nf [ne]", vertex lines, "3 i j k" face lines.
// '#' starts a comment. Errors carry the line number.
SurfaceMesh read_off(std::istream& in);
void write_off(std::ostream& out, const SurfaceMesh& mesh);

struct OrientationReport {
  bool consistent = true;     // every shared edge is traversed once in each direction
  int boundary_edges = 0;
  int nonmanifold_edges = 0;  // used by more than two triangles
};
OrientationReport check_orientation(const SurfaceMesh& mesh);
// Recomputes the closed flag from the edge structure.
void update_closed(SurfaceMesh& mesh);

SurfaceMesh flipped(const SurfaceMesh& mesh);
// Splits triangles by a predicate on their centroid; the vertex list is shared.
std::pair<SurfaceMesh, SurfaceMesh> partition(const SurfaceMesh& mesh,
                                              const std::function<bool(const Vec3&)>& first);

// Euclidean distance from p to the closed triangle (a, b, c).
double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace fiberdyn
