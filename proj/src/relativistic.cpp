#include <cmath>

#include "fiberdyn/dynamics.hpp"
#include "fiberdyn/error.hpp"

namespace fiberdyn {

RelFreeState relfree_step(const RelFreeState& st, double dtau) {
  RelFreeState out = st;
  Vec4 zdot = frame_momentum(st.frame, st.m) / st.m;
  zdot /= std::sqrt(-minkowski_dot(zdot, zdot));
  out.z = st.z + dtau * zdot;
  out.tau = st.tau + dtau;
  return out;
}

Mat4 total_angular_momentum(const RelFreeState& st) {
  Vec4 p = frame_momentum(st.frame, st.m);
  return st.z * p.transpose() - p * st.z.transpose() + frame_spin(st.frame, st.lambda);
}

Vec4 pauli_lubanski(const RelFreeState& st) {
  Mat4 M = total_angular_momentum(st);
  Vec4 p = frame_momentum(st.frame, st.m);
  Vec4 w_low = Vec4::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double eps = levi_civita4(a, b, c, d);
          if (eps != 0.0) w_low[a] += 0.5 * eps * M(b, c) * p[d];
        }
  return minkowski() * w_low;
}

double pauli_lubanski_square(const RelFreeState& st) {
  Vec4 w = pauli_lubanski(st);
  return minkowski_dot(w, w);
}

Mat4 magnetic_field_tensor(const Vec3& b) {
  Mat4 f = Mat4::Zero();
  f(1, 2) = b[2];
  f(2, 1) = -b[2];
  f(2, 3) = b[0];
  f(3, 2) = -b[0];
  f(3, 1) = b[1];
  f(1, 3) = -b[1];
  return f;
}

BmtState bmt_from_frame(const LorentzFrame& frame, const Vec4& z, double m, double lambda) {
  RelFreeState rf{z, frame, m, lambda, 0.0};
  BmtState st;
  st.z = z;
  st.u = frame.matrix().col(0);
  st.W = pauli_lubanski(rf);
  return st;
}

BmtRate bmt_rhs(const BmtState& st, const BmtParams& p) {
  if (p.field_at)
    throw Error(ErrorKind::UnsupportedRegime, "BMT equations need a homogeneous field");
  if (!p.F.allFinite()) throw Error(ErrorKind::InvalidField, "non-finite field tensor");
  Mat4 fmix = minkowski() * p.F;  // F^a_b
  double c = p.c();
  Vec4 fw = fmix * st.W;
  double ufw = minkowski_dot(st.u, fw);
  BmtRate r;
  r.zdot = st.u;
  r.udot = (p.e / p.m) * (fmix * st.u);
  r.Wdot = -2.0 * c * fw - (2.0 * c + p.e / p.m) * ufw * st.u;
  return r;
}

double longitudinal_polarization(const BmtState& st) {
  Vec3 w = st.W.tail<3>();
  Vec3 u = st.u.tail<3>();
  double n = w.norm() * u.norm();
  if (n == 0.0) return 0.0;
  return w.dot(u) / n;
}

State to_state(const BmtState& s) {
  State st;
  st.flat.resize(13);
  st.flat << s.z, s.u, s.W, s.tau;
  return st;
}

BmtState bmt_from(const State& s) {
  return {s.flat.segment<4>(0), s.flat.segment<4>(4), s.flat.segment<4>(8), s.flat[12]};
}

System bmt_system(const BmtParams& p) {
  System sys;
  sys.name = "bmt";
  sys.rhs = [p](double, const State& y) {
    BmtRate r = bmt_rhs(bmt_from(y), p);
    Tangent k;
    k.flat.resize(13);
    k.flat << r.zdot, r.udot, r.Wdot, 1.0;
    return k;
  };
  // proper-time gauge: u.u = -1
  sys.project = [](State& y) {
    Vec4 u = y.flat.segment<4>(4);
    y.flat.segment<4>(4) = u / std::sqrt(-minkowski_dot(u, u));
  };
  sys.flat_labels = {"z0", "z1", "z2", "z3", "u0", "u1", "u2", "u3",
                     "W0", "W1", "W2", "W3", "tau"};
  return sys;
}

}  // namespace fiberdyn
