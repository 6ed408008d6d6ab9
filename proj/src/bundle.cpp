#include "fiberdyn/bundle.hpp"

#include <cmath>
#include <random>

#include "fiberdyn/error.hpp"
#include "gauss_legendre.hpp"

namespace fiberdyn {

namespace {

void require_unit(const Su2Vector& x) {
  if (!x.allFinite() || std::abs(x.norm() - 1.0) > 1e-9)
    throw Error(ErrorKind::InvalidArgument, "base point is not a unit vector");
}

Su2Vector north_potential(const Su2Vector& y, double n) {
  if (y[2] <= -1.0 + kStringExclusion)
    throw Error(ErrorKind::SingularSection, "north potential on its string");
  return n / (1.0 + y[2]) * Su2Vector(-y[1], y[0], 0.0);
}

const GroupPoint& half_turn_x() {
  static const GroupPoint g = su2_exp(Su2Vector(M_PI, 0.0, 0.0));
  return g;
}

double angle_of(const GroupPoint& g, const Su2Vector& xhat) {
  // g = exp(i s3 theta/2) means (w, c) = (cos theta/2, -sin theta/2).
  if (std::hypot(g.a(), g.b()) > 1e-8)
    throw Error(ErrorKind::Domain, "sections do not share a fiber at the given point");
  (void)xhat;
  return 2.0 * std::atan2(-g.c(), g.w());
}

Vec3 random_in_cap(std::mt19937_64& rng, const GroupPoint& frame, double radius) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double z = 1.0 - uni(rng) * (1.0 - std::cos(radius));
  double phi = 2.0 * M_PI * uni(rng);
  double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  return rotate_vector(frame, Vec3(rho * std::cos(phi), rho * std::sin(phi), z)).normalized();
}

Vec3 slerp(const Vec3& a, const Vec3& b, double t, Vec3* tangent) {
  double omega = std::acos(std::clamp(a.dot(b), -1.0, 1.0));
  if (omega < 1e-15) {
    if (tangent) *tangent = Vec3::Zero();
    return a;
  }
  double so = std::sin(omega);
  double ka = std::sin((1.0 - t) * omega) / so;
  double kb = std::sin(t * omega) / so;
  if (tangent)
    *tangent = (-omega * std::cos((1.0 - t) * omega) * a + omega * std::cos(t * omega) * b) / so;
  return ka * a + kb * b;
}

}  // namespace

GroupPoint section_north(const Su2Vector& xhat) {
  require_unit(xhat);
  if (xhat[2] <= -1.0 + kStringExclusion)
    throw Error(ErrorKind::SingularSection, "north section inside the south-pole exclusion zone");
  double alpha = std::sqrt(2.0 * (1.0 + xhat[2]));
  return GroupPoint(0.5 * alpha, -xhat[1] / alpha, xhat[0] / alpha, 0.0);
}

GroupPoint section_south(const Su2Vector& xhat) {
  require_unit(xhat);
  if (xhat[2] >= 1.0 - kStringExclusion)
    throw Error(ErrorKind::SingularSection, "south section inside the north-pole exclusion zone");
  return half_turn_x() * section_north(Su2Vector(xhat[0], -xhat[1], -xhat[2]));
}

GroupPoint section(Patch patch, const Su2Vector& xhat) {
  return patch == Patch::North ? section_north(xhat) : section_south(xhat);
}

Su2Vector local_potential(Patch patch, const Su2Vector& xhat, double n) {
  require_unit(xhat);
  if (patch == Patch::North) return north_potential(xhat, n);
  if (xhat[2] >= 1.0 - kStringExclusion)
    throw Error(ErrorKind::SingularSection, "south potential on its string");
  return -n / (1.0 - xhat[2]) * Su2Vector(-xhat[1], xhat[0], 0.0);
}

double transition_angle(Patch a, Patch b, const Su2Vector& xhat) {
  if (a == b) return 0.0;
  return angle_of(section(b, xhat).inverse() * section(a, xhat), xhat);
}

WindingResult equator_winding(double n, int samples) {
  WindingResult r;
  double total = 0.0;
  double prev = transition_angle(Patch::North, Patch::South, Su2Vector(1.0, 0.0, 0.0));
  for (int k = 1; k <= samples; ++k) {
    double phi = 2.0 * M_PI * k / samples;
    double cur = transition_angle(Patch::North, Patch::South,
                                  Su2Vector(std::cos(phi), std::sin(phi), 0.0));
    double d = std::remainder(cur - prev, 4.0 * M_PI);
    total += d;
    prev = cur;
  }
  r.turns = n * total / (2.0 * M_PI);
  r.winding = std::lround(r.turns);
  r.deviation = std::abs(r.turns - double(r.winding));
  return r;
}

bool PatchCover::contains(std::size_t i, const Su2Vector& xhat) const {
  const CapPatch& p = patches.at(i);
  return p.center.dot(xhat) > std::cos(p.radius);
}

GroupPoint PatchCover::section(std::size_t i, const Su2Vector& xhat) const {
  if (!contains(i, xhat)) throw Error(ErrorKind::Domain, "point outside patch " + patches[i].id);
  const CapPatch& p = patches[i];
  GroupPoint s = p.frame * section_north(rotate_vector(p.frame.inverse(), xhat).normalized());
  if (p.gauge) s = s * su2_exp(Su2Vector(0.0, 0.0, p.gauge(xhat)));
  return s;
}

double PatchCover::transition_angle(std::size_t a, std::size_t b, const Su2Vector& xhat) const {
  if (a == b) return 0.0;
  if (!contains(a, xhat) || !contains(b, xhat))
    throw Error(ErrorKind::Domain, "point outside the overlap");
  return angle_of(section(b, xhat).inverse() * section(a, xhat), xhat);
}

std::vector<Su2Vector> PatchCover::overlap_samples(const std::vector<std::size_t>& ids, int count,
                                                   std::uint64_t seed) const {
  std::vector<Su2Vector> out;
  if (ids.empty()) return out;
  std::size_t smallest = ids[0];
  for (auto i : ids)
    if (patches.at(i).radius < patches[smallest].radius) smallest = i;
  std::mt19937_64 rng(seed);
  const CapPatch& cap = patches[smallest];
  long tries = 0;
  const long max_tries = 2000000;
  while (int(out.size()) < count && tries < max_tries) {
    ++tries;
    Vec3 x = random_in_cap(rng, cap.frame, cap.radius);
    bool inside = true;
    for (auto i : ids) inside = inside && contains(i, x);
    if (inside) out.push_back(x);
  }
  return out;
}

double PatchCover::coverage(int count, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  int hit = 0;
  for (int k = 0; k < count; ++k) {
    Vec3 x(g(rng), g(rng), g(rng));
    x.normalize();
    for (std::size_t i = 0; i < size(); ++i)
      if (contains(i, x)) {
        ++hit;
        break;
      }
  }
  return double(hit) / count;
}

PatchCover two_patch_cover() {
  PatchCover c;
  c.id = "two-patch";
  double r = std::acos(-1.0 + kStringExclusion);
  c.patches.push_back({"North", Su2Vector(0, 0, 1), r, GroupPoint::identity(), {}});
  c.patches.push_back({"South", Su2Vector(0, 0, -1), r, half_turn_x(), {}});
  return c;
}

PatchCover tetrahedral_cover(double radius) {
  PatchCover c;
  c.id = "tetrahedral-caps";
  const double s = 1.0 / std::sqrt(3.0);
  const std::array<Vec3, 4> v{Vec3(s, s, s), Vec3(s, -s, -s), Vec3(-s, s, -s), Vec3(-s, -s, s)};
  for (int i = 0; i < 4; ++i)
    c.patches.push_back({"cap" + std::to_string(i), v[i], radius, section_north(v[i]), {}});
  return c;
}

PatchCover with_gauge(PatchCover cover,
                      const std::vector<std::function<double(const Su2Vector&)>>& chi) {
  if (chi.size() != cover.size())
    throw Error(ErrorKind::InvalidArgument, "one gauge function per patch required");
  for (std::size_t i = 0; i < cover.size(); ++i) cover.patches[i].gauge = chi[i];
  cover.id += "+gauge";
  return cover;
}

namespace {

struct SourceFrame {
  GroupPoint frame;
  Vec3 d;
  double dist;
};

SourceFrame source_frame(const CapPatch& p, const MonopoleSource& src, const Su2Vector& xhat) {
  if (src.position.isZero(0.0)) return {p.frame, xhat, 1.0};
  Vec3 r = xhat - src.position;
  Vec3 c = (p.center - src.position).normalized();
  return {section_north(c), r.normalized(), r.norm()};
}

GroupPoint source_section(const CapPatch& p, const MonopoleSource& src, const Su2Vector& xhat) {
  SourceFrame f = source_frame(p, src, xhat);
  GroupPoint s = f.frame * section_north(rotate_vector(f.frame.inverse(), f.d).normalized());
  if (p.gauge) s = s * su2_exp(Su2Vector(0.0, 0.0, p.gauge(xhat)));
  return s;
}

Vec3 sphere_gradient(const std::function<double(const Su2Vector&)>& chi, const Su2Vector& x) {
  const double h = 1e-6;
  Vec3 g;
  for (int i = 0; i < 3; ++i) {
    Vec3 e = Vec3::Unit(i);
    g[i] = (chi((x + h * e).normalized()) - chi((x - h * e).normalized())) / (2.0 * h);
  }
  return g - x * x.dot(g);
}

}  // namespace

Su2Vector cover_potential(const PatchCover& cover, std::size_t i,
                          const std::vector<MonopoleSource>& sources, const Su2Vector& xhat) {
  const CapPatch& p = cover.patches.at(i);
  if (!cover.contains(i, xhat)) throw Error(ErrorKind::Domain, "point outside patch " + p.id);
  Vec3 a = Vec3::Zero();
  double total_n = 0.0;
  for (const auto& src : sources) {
    SourceFrame f = source_frame(p, src, xhat);
    Vec3 y = rotate_vector(f.frame.inverse(), f.d).normalized();
    Vec3 ad = rotate_vector(f.frame, north_potential(y, src.n)) / f.dist;
    a += ad;
    total_n += src.n;
  }
  if (p.gauge) a -= total_n * sphere_gradient(p.gauge, xhat);
  return a - xhat * xhat.dot(a);
}

LineTransitions::LineTransitions(PatchCover cover, std::vector<MonopoleSource> sources)
    : cover_(std::move(cover)), sources_(std::move(sources)) {}

Su2Vector LineTransitions::anchor(std::size_t a, std::size_t b) const {
  Vec3 m = cover_.patches.at(a).center + cover_.patches.at(b).center;
  Vec3 x;
  if (m.norm() > 1e-6) {
    x = m.normalized();
  } else {
    const Vec3& c = cover_.patches[a].center;
    x = c.unitOrthogonal();
  }
  if (!cover_.contains(a, x) || !cover_.contains(b, x))
    throw Error(ErrorKind::Domain, "no anchor inside the overlap of " + cover_.patches[a].id +
                                       " and " + cover_.patches[b].id);
  return x;
}

double LineTransitions::anchor_value(std::size_t a, std::size_t b) const {
  Vec3 x = anchor(a, b);
  double v = 0.0;
  for (const auto& src : sources_) {
    GroupPoint g = source_section(cover_.patches[b], src, x).inverse() *
                   source_section(cover_.patches[a], src, x);
    v += src.n * angle_of(g, x);
  }
  return v;
}

double LineTransitions::path_integral(std::size_t a, std::size_t b,
                                      const std::vector<Su2Vector>& points) const {
  const auto& gl = gauss_legendre16();
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const Vec3& p = points[k];
    const Vec3& q = points[k + 1];
    double omega = std::acos(std::clamp(p.dot(q), -1.0, 1.0));
    int pieces = std::max(1, int(std::ceil(omega / 0.05)));
    for (int piece = 0; piece < pieces; ++piece) {
      double t0 = double(piece) / pieces;
      double t1 = double(piece + 1) / pieces;
      for (std::size_t g = 0; g < gl.nodes.size(); ++g) {
        double t = t0 + 0.5 * (t1 - t0) * (gl.nodes[g] + 1.0);
        Vec3 tangent;
        Vec3 x = slerp(p, q, t, &tangent).normalized();
        Vec3 da = cover_potential(cover_, a, sources_, x) - cover_potential(cover_, b, sources_, x);
        total += 0.5 * (t1 - t0) * gl.weights[g] * da.dot(tangent);
      }
    }
  }
  return total;
}

double LineTransitions::operator()(std::size_t a, std::size_t b, const Su2Vector& xhat) const {
  if (a == b) return 0.0;
  if (a > b) return -(*this)(b, a, xhat);
  if (!cover_.contains(a, xhat) || !cover_.contains(b, xhat))
    throw Error(ErrorKind::Domain, "point outside the overlap");
  return anchor_value(a, b) + path_integral(a, b, {anchor(a, b), xhat});
}

TransitionFn LineTransitions::fn() const {
  return [self = *this](std::size_t a, std::size_t b, const Su2Vector& x) { return self(a, b, x); };
}

std::vector<long> CocycleReport::integers() const {
  std::vector<long> out;
  for (const auto& t : triples) out.insert(out.end(), t.integers.begin(), t.integers.end());
  return out;
}

CocycleReport cocycle_integers(const PatchCover& cover, const TransitionFn& f, double lambda_w,
                               int samples_per_triple, std::uint64_t seed, double tolerance) {
  if (lambda_w == 0.0 || !std::isfinite(lambda_w))
    throw Error(ErrorKind::InvalidArgument, "lambda_w must be finite and nonzero");
  CocycleReport rep;
  rep.cover_id = cover.id;
  rep.lambda_w = lambda_w;
  std::uint64_t triple_seed = seed;
  for (std::size_t a = 0; a < cover.size(); ++a)
    for (std::size_t b = a + 1; b < cover.size(); ++b)
      for (std::size_t c = b + 1; c < cover.size(); ++c) {
        auto pts = cover.overlap_samples({a, b, c}, samples_per_triple, ++triple_seed);
        if (pts.empty()) continue;
        TripleSample t;
        t.patches = {a, b, c};
        for (const auto& x : pts) {
          double sum = f(a, b, x) + f(b, c, x) + f(c, a, x);
          double nabc = sum / (2.0 * M_PI * lambda_w);
          long k = std::lround(nabc);
          double phase = std::remainder(sum / lambda_w, 2.0 * M_PI);
          t.points.push_back(x);
          t.n_abc.push_back(nabc);
          t.integers.push_back(k);
          t.deviation = std::max(t.deviation, std::abs(nabc - double(k)));
          t.u1_defect = std::max(t.u1_defect, std::abs(std::polar(1.0, phase) - cplx(1.0, 0.0)));
        }
        rep.max_deviation = std::max(rep.max_deviation, t.deviation);
        rep.max_u1_defect = std::max(rep.max_u1_defect, t.u1_defect);
        rep.triples.push_back(std::move(t));
      }
  rep.violation = rep.max_deviation > tolerance;
  return rep;
}

}  // namespace fiberdyn
