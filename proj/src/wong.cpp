#include <cmath>

#include "fiberdyn/bundle.hpp"
#include "fiberdyn/dynamics.hpp"
#include "fiberdyn/error.hpp"

namespace fiberdyn {

namespace {

const cplx I(0.0, 1.0);

double eps3(int a, int b, int c) {
  return 0.5 * (a - b) * (b - c) * (c - a);
}

Mat2c commutator(const Mat2c& a, const Mat2c& b) { return a * b - b * a; }

// omega with X = -i omega.sigma/2 for anti-hermitian traceless X
Su2Vector algebra_vector(const Mat2c& x) {
  Su2Vector w;
  for (int a = 0; a < 3; ++a) w[a] = (I * (x * pauli(a + 1)).trace()).real();
  return w;
}

YmSample checked_sample(const YmBackground& bg, const Vec3& x) {
  YmSample s = bg.sample(x);
  for (int i = 0; i < 3; ++i) {
    if (!s.A[i].allFinite()) throw Error(ErrorKind::InvalidField, "non-finite gauge potential");
    for (int k = 0; k < 3; ++k)
      if (!s.dA[k][i].allFinite())
        throw Error(ErrorKind::InvalidField, "non-finite potential derivative");
  }
  return s;
}

}  // namespace

const Mat2c& generator(int alpha) {
  static const std::array<Mat2c, 3> t = [] {
    std::array<Mat2c, 3> r;
    for (int a = 0; a < 3; ++a) r[a] = pauli(a + 1) / std::sqrt(2.0);
    return r;
  }();
  if (alpha < 1 || alpha > 3) throw Error(ErrorKind::InvalidArgument, "generator index out of range");
  return t[alpha - 1];
}

Vec3 algebra_components(const Mat2c& x) {
  Vec3 c;
  for (int a = 0; a < 3; ++a) c[a] = (x * generator(a + 1)).trace().real();
  return c;
}

YmSample hedgehog_potentials(const Vec3& x, double e, double r_min) {
  if (!x.allFinite()) throw Error(ErrorKind::InvalidArgument, "non-finite position");
  double r = x.norm();
  if (r < r_min) throw Error(ErrorKind::ExclusionZone, "hedgehog core r < r_min");
  double r2 = r * r;
  YmSample s;
  for (int i = 0; i < 3; ++i) {
    s.A[i] = Mat2c::Zero();
    for (int k = 0; k < 3; ++k) s.dA[k][i] = Mat2c::Zero();
    for (int a = 0; a < 3; ++a)
      for (int j = 0; j < 3; ++j) {
        double eps = eps3(a, i, j);
        if (eps == 0.0) continue;
        s.A[i] += (eps * x[j] / (2.0 * e * r2)) * pauli(a + 1);
        for (int k = 0; k < 3; ++k) {
          double d = (j == k ? 1.0 / r2 : 0.0) - 2.0 * x[j] * x[k] / (r2 * r2);
          s.dA[k][i] += (eps * d / (2.0 * e)) * pauli(a + 1);
        }
      }
  }
  return s;
}

YmBackground hedgehog_background(double e, double r_min) {
  return {"hedgehog", [e, r_min](const Vec3& x) { return hedgehog_potentials(x, e, r_min); }};
}

YmBackground zero_background() {
  return {"zero", [](const Vec3&) {
            YmSample s;
            for (int i = 0; i < 3; ++i) {
              s.A[i] = Mat2c::Zero();
              for (int k = 0; k < 3; ++k) s.dA[k][i] = Mat2c::Zero();
            }
            return s;
          }};
}

YmBackground abelian_background(std::function<Vec3(const Vec3&)> a,
                                std::function<Mat3(const Vec3&)> da, int alpha) {
  const Mat2c t = generator(alpha);
  return {"abelian", [a, da, t](const Vec3& x) {
            Vec3 av = a(x);
            Mat3 d = da(x);  // d(k, i) = d_k a_i
            YmSample s;
            for (int i = 0; i < 3; ++i) {
              s.A[i] = av[i] * t;
              for (int k = 0; k < 3; ++k) s.dA[k][i] = d(k, i) * t;
            }
            return s;
          }};
}

YmBackground gauge_transformed(const YmBackground& bg, const GaugeRotation& h, double e) {
  const Mat2c n = 0.5 * su2_matrix(h.axis.normalized());
  return {bg.id + "+gauge", [bg, h, e, n](const Vec3& x) {
            YmSample s = bg.sample(x);
            Mat2c g = h.at(x).matrix();
            Mat2c gi = g.adjoint();
            Vec3 df = h.grad(x);
            Mat3 ddf = h.hess(x);
            YmSample out;
            std::array<Mat2c, 3> rot;
            for (int i = 0; i < 3; ++i) {
              rot[i] = g * s.A[i] * gi;
              out.A[i] = rot[i] - (df[i] / e) * n;
            }
            for (int k = 0; k < 3; ++k)
              for (int i = 0; i < 3; ++i)
                out.dA[k][i] = -I * df[k] * commutator(n, rot[i]) + g * s.dA[k][i] * gi -
                               (ddf(k, i) / e) * n;
            return out;
          }};
}

std::array<std::array<Mat2c, 3>, 3> field_strength(const YmSample& s, double e) {
  std::array<std::array<Mat2c, 3>, 3> f;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      f[i][j] = s.dA[i][j] - s.dA[j][i] - I * e * commutator(s.A[i], s.A[j]);
  return f;
}

Mat2c isospin(const GroupPoint& s, const Mat2c& K) {
  Mat2c m = s.matrix();
  return m * K * m.adjoint();
}

double casimir_defect(const GroupPoint& s, const Mat2c& K) {
  Mat2c i = isospin(s, K);
  return std::abs((i * i).trace().real() - (K * K).trace().real());
}

WongRate wong_rhs(const WongState& st, const WongParams& p, const YmBackground& bg) {
  YmSample smp = checked_sample(bg, st.x);
  auto F = field_strength(smp, p.e);
  Mat2c iso = isospin(st.s, p.K);
  WongRate r;
  r.xdot = st.v;
  r.vdot = Vec3::Zero();
  Mat2c x = Mat2c::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r.vdot[i] -= (p.e / p.m) * (iso * F[i][j]).trace().real() * st.v[j];
    x += (I * p.e * st.v[i]) * smp.A[i];
  }
  r.omega = algebra_vector(x);
  return r;
}

State to_state(const WongState& s) {
  State st;
  st.flat.resize(6);
  st.flat << s.x, s.v;
  st.group = {s.s};
  return st;
}

WongState wong_from(const State& s) {
  return {s.flat.segment<3>(0), s.flat.segment<3>(3), s.group.at(0)};
}

System wong_system(const WongParams& p, const YmBackground& bg) {
  System sys;
  sys.name = "wong";
  sys.trivialization = Trivialization::Right;
  sys.rhs = [p, bg](double, const State& y) {
    WongRate r = wong_rhs(wong_from(y), p, bg);
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

double hedgehog_charge(const WongState& st, const Mat2c& K, bool* south) {
  Vec3 xh = st.x.normalized();
  bool use_south = xh[2] < 0.0;
  GroupPoint t = use_south ? section_south(xh) : section_north(xh);
  if (south) *south = use_south;
  Mat2c tm = t.matrix();
  Mat2c it = tm.adjoint() * isospin(st.s, K) * tm;
  return -0.5 * (pauli(3) * it).trace().real();
}

ReductionReport hedgehog_reduction_check(const Trajectory& traj, const WongParams& p,
                                         double monopole_dt, double r_min) {
  ReductionReport rep;
  if (traj.states.empty()) return rep;
  WongState w0 = wong_from(traj.states.front());
  rep.n0 = hedgehog_charge(w0, p.K);
  MonopoleParams mp{p.m, rep.n0, r_min};
  System mono = monopole_system(mp);
  State m = to_state(MonopoleState{w0.x, w0.v});
  double t_prev = traj.times.front();
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    WongState w = wong_from(traj.states[k]);
    double t = traj.times[k];
    if (t > t_prev) m = integrate_to(Method::RK4, mono, m, monopole_dt, t - t_prev);
    t_prev = t;
    ReductionSample s;
    s.t = t;
    s.n = hedgehog_charge(w, p.K, &s.south_patch);
    Mat2c iso = isospin(w.s, p.K);
    s.half_casimir = 0.5 * (iso * iso).trace().real();
    s.divergence = (w.x - m.flat.segment<3>(0)).norm();
    rep.n_drift = std::max(rep.n_drift, std::abs(s.n - rep.n0));
    rep.max_divergence = std::max(rep.max_divergence, s.divergence);
    if (s.n * s.n > s.half_casimir * (1.0 + 1e-12) + 1e-15) rep.inequality_holds = false;
    rep.samples.push_back(s);
  }
  return rep;
}

State to_state(const RelWongState& s) {
  State st;
  st.flat.resize(8);
  st.flat << s.z, s.u;
  st.group = {s.s};
  return st;
}

RelWongState rel_wong_from(const State& s) {
  return {s.flat.segment<4>(0), s.flat.segment<4>(4), s.group.at(0)};
}

System rel_wong_system(double M, double e, const Mat2c& K, const YmBackground& bg,
                       double internal_rate) {
  System sys;
  sys.name = "rel_wong";
  sys.trivialization = Trivialization::Right;
  sys.rhs = [M, e, K, bg, internal_rate](double, const State& y) {
    RelWongState st = rel_wong_from(y);
    Vec3 x = st.z.tail<3>();
    Vec3 u = st.u.tail<3>();
    YmSample smp = checked_sample(bg, x);
    auto F = field_strength(smp, e);
    Mat2c iso = isospin(st.s, K);
    Vec4 udot = Vec4::Zero();
    Mat2c gen = -I * internal_rate * iso;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) udot[i + 1] -= (e / M) * (iso * F[i][j]).trace().real() * u[j];
      gen += (I * e * u[i]) * smp.A[i];
    }
    Tangent k;
    k.flat.resize(8);
    k.flat << st.u, udot;
    k.group = {algebra_vector(gen)};
    return k;
  };
  sys.flat_labels = {"z0", "z1", "z2", "z3", "u0", "u1", "u2", "u3"};
  sys.group_labels = {"s"};
  return sys;
}

}  // namespace fiberdyn
