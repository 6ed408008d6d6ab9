#include <cmath>

#include "fiberdyn/dynamics.hpp"
#include "fiberdyn/error.hpp"

namespace fiberdyn {

namespace {

FieldSample checked(const MagneticField& field, const Vec3& x) {
  if (!field) throw Error(ErrorKind::InvalidField, "no magnetic field supplied");
  FieldSample f = field(x);
  if (!f.B.allFinite() || !f.dB.allFinite())
    throw Error(ErrorKind::InvalidField, "non-finite magnetic field");
  return f;
}

}  // namespace

Vec3 spin_vector(const GroupPoint& s, double lambda) { return lambda * hopf_project(s); }

SpinRate spin_rhs(const SpinState& st, const SpinParams& p) {
  FieldSample f = checked(p.field, st.x);
  Vec3 S = spin_vector(st.s, p.lambda);
  SpinRate r;
  r.xdot = st.p / p.m;
  r.pdot = -p.mu * (f.dB * S);
  r.omega = p.mu * f.B;
  r.Sdot = p.mu * f.B.cross(S);
  return r;
}

double spin_energy(const SpinState& st, const SpinParams& p) {
  FieldSample f = checked(p.field, st.x);
  return st.p.squaredNorm() / (2.0 * p.m) + p.mu * spin_vector(st.s, p.lambda).dot(f.B);
}

State to_state(const SpinState& s) {
  State st;
  st.flat.resize(6);
  st.flat << s.x, s.p;
  st.group = {s.s};
  return st;
}

SpinState spin_from(const State& s) {
  return {s.flat.segment<3>(0), s.flat.segment<3>(3), s.group.at(0)};
}

System spin_system(const SpinParams& p) {
  System sys;
  sys.name = "spin";
  sys.trivialization = Trivialization::Right;
  sys.rhs = [p](double, const State& y) {
    SpinRate r = spin_rhs(spin_from(y), p);
    Tangent k;
    k.flat.resize(6);
    k.flat << r.xdot, r.pdot;
    k.group = {r.omega};
    return k;
  };
  sys.flat_labels = {"x1", "x2", "x3", "p1", "p2", "p3"};
  sys.group_labels = {"s"};
  return sys;
}

SpinMonopoleRate spin_monopole_rhs(const SpinMonopoleState& st, const SpinMonopoleParams& p) {
  FieldSample f = monopole_field(p.g, p.r_min)(st.x);
  Vec3 S = spin_vector(st.s, p.lambda);
  SpinMonopoleRate r;
  r.xdot = st.v;
  r.vdot = (-p.e * st.v.cross(f.B) - p.mu() * (f.dB * S)) / p.m;
  r.omega = p.mu() * f.B;
  return r;
}

Vec3 spin_monopole_J(const SpinMonopoleState& st, const SpinMonopoleParams& p) {
  if (st.x.norm() < p.r_min) throw Error(ErrorKind::ExclusionZone, "particle entered r < r_min");
  return p.m * st.x.cross(st.v) + p.n() * st.x.normalized() + spin_vector(st.s, p.lambda);
}

double spin_monopole_energy(const SpinMonopoleState& st, const SpinMonopoleParams& p) {
  FieldSample f = monopole_field(p.g, p.r_min)(st.x);
  return 0.5 * p.m * st.v.squaredNorm() + p.mu() * spin_vector(st.s, p.lambda).dot(f.B);
}

State to_state(const SpinMonopoleState& s) {
  State st;
  st.flat.resize(6);
  st.flat << s.x, s.v;
  st.group = {s.s};
  return st;
}

SpinMonopoleState spin_monopole_from(const State& s) {
  return {s.flat.segment<3>(0), s.flat.segment<3>(3), s.group.at(0)};
}

System spin_monopole_system(const SpinMonopoleParams& p) {
  System sys;
  sys.name = "spin_monopole";
  sys.trivialization = Trivialization::Right;
  sys.rhs = [p](double, const State& y) {
    SpinMonopoleRate r = spin_monopole_rhs(spin_monopole_from(y), p);
    Tangent k;
    k.flat.resize(6);
    k.flat << r.xdot, r.vdot;
    k.group = {r.omega};
    return k;
  };
  sys.flat_labels = {"x1", "x2", "x3", "v1", "v2", "v3"};
  sys.group_labels = {"s"};
  return sys;
}

}  // namespace fiberdyn
