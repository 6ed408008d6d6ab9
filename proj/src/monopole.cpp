#include <cmath>

#include "fiberdyn/dynamics.hpp"
#include "fiberdyn/error.hpp"

namespace fiberdyn {

namespace {

void check_exclusion(const Vec3& x, double r_min) {
  if (!x.allFinite()) throw Error(ErrorKind::InvalidArgument, "non-finite position");
  if (x.norm() < r_min) throw Error(ErrorKind::ExclusionZone, "particle entered r < r_min");
}

}  // namespace

MonopoleRate monopole_rhs(const MonopoleState& s, const MonopoleParams& p) {
  if (p.n == 0.0) return {s.v, Vec3::Zero()};  // free particle: no singular point
  check_exclusion(s.x, p.r_min);
  double r = s.x.norm();
  return {s.v, (p.n / (p.m * r * r * r)) * s.x.cross(s.v)};
}

Vec3 monopole_J(const MonopoleState& s, const MonopoleParams& p) {
  if (p.n == 0.0) return p.m * s.x.cross(s.v);
  check_exclusion(s.x, p.r_min);
  return p.m * s.x.cross(s.v) + p.n * s.x.normalized();
}

double monopole_energy(const MonopoleState& s, const MonopoleParams& p) {
  return 0.5 * p.m * s.v.squaredNorm();
}

State to_state(const MonopoleState& s) {
  State st;
  st.flat.resize(6);
  st.flat << s.x, s.v;
  return st;
}

MonopoleState monopole_from(const State& s) {
  return {s.flat.segment<3>(0), s.flat.segment<3>(3)};
}

System monopole_system(const MonopoleParams& p) {
  System sys;
  sys.name = "monopole";
  sys.rhs = [p](double, const State& y) {
    MonopoleRate r = monopole_rhs(monopole_from(y), p);
    Tangent k;
    k.flat.resize(6);
    k.flat << r.xdot, r.vdot;
    return k;
  };
  sys.flat_labels = {"x1", "x2", "x3", "v1", "v2", "v3"};
  return sys;
}

MagneticField homogeneous_field(const Vec3& b) {
  return [b](const Vec3&) { return FieldSample{b, Mat3::Zero()}; };
}

MagneticField linear_field(const Vec3& b, const Mat3& g) {
  return [b, g](const Vec3& x) { return FieldSample{b + g.transpose() * x, g}; };
}

MagneticField monopole_field(double g, double r_min) {
  return [g, r_min](const Vec3& x) {
    check_exclusion(x, r_min);
    double k = g / (4.0 * M_PI);
    double r = x.norm();
    double r3 = r * r * r;
    FieldSample f;
    f.B = k * x / r3;
    f.dB = k * (Mat3::Identity() / r3 - 3.0 * x * x.transpose() / (r3 * r * r));
    return f;
  };
}

}  // namespace fiberdyn
