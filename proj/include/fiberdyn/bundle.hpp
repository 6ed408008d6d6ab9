#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fiberdyn/liealg.hpp"

namespace fiberdyn {

enum class Patch { North, South };

// Half-width of the Dirac-string exclusion zone, measured in x3.
constexpr double kStringExclusion = 1e-6;

GroupPoint section_north(const Su2Vector& xhat);
// Mirror of the north section: rotation by pi about x1 applied on both sides.
GroupPoint section_south(const Su2Vector& xhat);
GroupPoint section(Patch patch, const Su2Vector& xhat);

// Coefficients A with A.dx = n eps_3ij x_i dx_j / (1 + x3) on the north patch and the
// regular mirror -n eps_3ij x_i dx_j / (1 - x3) on the south patch.
// The section pullback i n Tr[s3 s^-1 ds] equals -A.dx.
Su2Vector local_potential(Patch patch, const Su2Vector& xhat, double n);

// theta with s_a = s_b * su2_exp((0,0,-theta)), reported in (-2pi, 2pi].
double transition_angle(Patch a, Patch b, const Su2Vector& xhat);

struct WindingResult {
  double turns = 0.0;   // n * (total change of theta) / 2pi
  long winding = 0;     // nearest integer
  double deviation = 0.0;
};
// North/south transition traced counterclockwise around the equator.
WindingResult equator_winding(double n, int samples = 10000);

struct CapPatch {
  std::string id;
  Su2Vector center;
  double radius = 0.0;  // angular radius
  GroupPoint frame;     // maps the north pole to center
  std::function<double(const Su2Vector&)> gauge;  // optional chi, s -> s * su2_exp((0,0,chi))
};

class PatchCover {
 public:
  std::string id;
  std::vector<CapPatch> patches;

  std::size_t size() const { return patches.size(); }
  bool contains(std::size_t i, const Su2Vector& xhat) const;
  GroupPoint section(std::size_t i, const Su2Vector& xhat) const;
  double transition_angle(std::size_t a, std::size_t b, const Su2Vector& xhat) const;

  // Seeded uniform samples from the intersection of the listed patches.
  std::vector<Su2Vector> overlap_samples(const std::vector<std::size_t>& ids, int count,
                                         std::uint64_t seed) const;
  // Fraction of seeded uniform sphere samples lying in at least one patch.
  double coverage(int count, std::uint64_t seed) const;
};

PatchCover two_patch_cover();
PatchCover tetrahedral_cover(double radius = 1.3);
PatchCover with_gauge(PatchCover cover, const std::vector<std::function<double(const Su2Vector&)>>& chi);

struct MonopoleSource {
  double n = 1.0;
  Vec3 position = Vec3::Zero();
};

// Patch potential of the given sources at a point of the unit sphere.
Su2Vector cover_potential(const PatchCover& cover, std::size_t i,
                          const std::vector<MonopoleSource>& sources, const Su2Vector& xhat);

// f_ab on overlaps, antisymmetric in (a, b).
using TransitionFn = std::function<double(std::size_t, std::size_t, const Su2Vector&)>;

class LineTransitions {
 public:
  LineTransitions(PatchCover cover, std::vector<MonopoleSource> sources);

  double operator()(std::size_t a, std::size_t b, const Su2Vector& xhat) const;
  Su2Vector anchor(std::size_t a, std::size_t b) const;
  // Integral of (A_a - A_b).dx along geodesic arcs through the given points.
  double path_integral(std::size_t a, std::size_t b, const std::vector<Su2Vector>& points) const;

  TransitionFn fn() const;

 private:
  double anchor_value(std::size_t a, std::size_t b) const;

  PatchCover cover_;
  std::vector<MonopoleSource> sources_;
};

struct TripleSample {
  std::array<std::size_t, 3> patches{};
  std::vector<Su2Vector> points;
  std::vector<double> n_abc;
  std::vector<long> integers;
  double deviation = 0.0;   // max distance from the nearest integer
  double u1_defect = 0.0;   // max |g_ab g_bc g_ca - 1|
};

struct CocycleReport {
  std::string cover_id;
  double lambda_w = 0.0;
  std::vector<TripleSample> triples;
  double max_deviation = 0.0;
  double max_u1_defect = 0.0;
  bool violation = false;

  std::vector<long> integers() const;
};

CocycleReport cocycle_integers(const PatchCover& cover, const TransitionFn& f, double lambda_w,
                               int samples_per_triple = 8, std::uint64_t seed = 1,
                               double tolerance = 1e-6);

}  // namespace fiberdyn
