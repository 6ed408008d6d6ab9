#include <cmath>

#include "fiberdyn/dynamics.hpp"
#include "fiberdyn/error.hpp"

namespace fiberdyn {

namespace {

const cplx I(0.0, 1.0);

// omega with X = -i omega.sigma/2
Su2Vector from_antihermitian(const Mat2c& x) { return su2_components(2.0 * I * x); }

// Right-trivialized internal rate s' s^-1, optionally minus the gauge part ie xdot.A.
Su2Vector internal_rate(const KkState& st, const KkParams& p, const YmBackground* bg) {
  Su2Vector w = rotate_vector(st.s, st.omega);
  if (bg) {
    YmSample smp = bg->sample(st.x.tail<3>());
    Mat2c a = Mat2c::Zero();
    for (int i = 0; i < 3; ++i) {
      if (!smp.A[i].allFinite()) throw Error(ErrorKind::InvalidField, "non-finite gauge potential");
      a += (I * p.e * st.xdot[i + 1]) * smp.A[i];
    }
    w -= from_antihermitian(a);
  }
  return w;
}

}  // namespace

KkMomenta kk_momenta(const KkState& st, const KkParams& p, const YmBackground* bg) {
  Su2Vector w = internal_rate(st, p, bg);
  // Tr[Omega^2] = -|omega|^2 / 2
  double arg = -minkowski_dot(st.xdot, st.xdot) + 0.5 * p.lambda * w.squaredNorm();
  if (!(arg > 0.0))
    throw Error(ErrorKind::InconsistentSystem, "imaginary Lagrangian: the system is inconsistent");
  KkMomenta k;
  k.L = p.m * std::sqrt(arg);
  k.p = (p.m * p.m / k.L) * lower(st.xdot);
  // I_a = i (m^2 lambda / L) Tr[T(a) s' s^-1]
  k.I = (p.m * p.m * p.lambda / (k.L * std::sqrt(2.0))) * w;
  return k;
}

double kk_identity_residual(const KkState& st, const KkParams& p) {
  KkMomenta k = kk_momenta(st, p);
  return minkowski_dot(k.p, k.p) - k.I.squaredNorm() / p.lambda + p.m * p.m;
}

double kk_mass_squared(double casimir, const KkParams& p) {
  return p.m * p.m - casimir / p.lambda;
}

KkState kk_free_step(const KkState& st, const KkParams& p, double dtau) {
  kk_momenta(st, p);  // admissibility
  KkState out = st;
  out.x = st.x + dtau * st.xdot;
  out.s = st.s * su2_exp(dtau * st.omega);
  return out;
}

double kk_coupled_invariant(const KkState& st, const KkParams& p, const YmBackground& bg) {
  // p + e I.A is the kinetic momentum m^2 xdot / L
  KkMomenta k = kk_momenta(st, p, &bg);
  return minkowski_dot(k.p, k.p) - k.I.squaredNorm() / p.lambda + p.m * p.m;
}

double kk_effective_mass(const Mat2c& K, const KkParams& p) {
  double casimir = algebra_components(K).squaredNorm();
  double m2 = kk_mass_squared(casimir, p);
  if (!(m2 > 0.0)) throw Error(ErrorKind::InconsistentSystem, "effective mass squared not positive");
  return std::sqrt(m2);
}

KkState kk_state_from_wong(const RelWongState& w, const KkParams& p, const Mat2c& K,
                           const YmBackground& bg) {
  double M = kk_effective_mass(K, p);
  YmSample smp = bg.sample(w.z.tail<3>());
  Mat2c iso = isospin(w.s, K);
  Mat2c x = (-I / (M * p.lambda)) * iso;
  for (int i = 0; i < 3; ++i) x += (I * p.e * w.u[i + 1]) * smp.A[i];
  KkState st;
  st.x = w.z;
  st.xdot = w.u;
  st.s = w.s;
  st.omega = rotate_vector(w.s.inverse(), from_antihermitian(x));
  return st;
}

}  // namespace fiberdyn
