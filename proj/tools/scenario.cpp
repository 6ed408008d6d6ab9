#include "scenario.hpp"

#include <cmath>

#include "fiberdyn/error.hpp"

namespace fiberdyn::cli {

namespace {

GroupPoint initial_group(const Config& c) {
  if (c.has("initial.s") && c.has("initial.s_exp")) c.fail("initial.s_exp", "give either initial.s or initial.s_exp");
  if (c.has("initial.s")) {
    auto q = c.list("initial.s");
    if (q.size() != 4) c.fail("initial.s", "expected four quaternion components w,a,b,c");
    double n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
    if (std::abs(n - 1.0) > 1e-9) c.fail("initial.s", "quaternion must have unit norm");
    return GroupPoint(q[0], q[1], q[2], q[3]);
  }
  if (c.has("initial.s_exp")) return su2_exp(c.vec3("initial.s_exp"));
  return GroupPoint();
}

Method parse_method(const Config& c) {
  std::string m = c.str("stepper.method", "rk4");
  if (m == "rk4") return Method::RK4;
  if (m == "liegroup" || m == "liegroup_rk4") return Method::LieGroupRK4;
  c.fail("stepper.method", "expected rk4 or liegroup, got '" + m + "'");
}

Monitor monitor(const Config& c, const std::string& name, double tol,
                std::function<double(double, const State&)> f, bool drift = true) {
  return {name, std::move(f), c.num("monitor." + name + ".tolerance", tol), drift};
}

MagneticField field_from(const Config& c) {
  Vec3 b = c.vec3("system.params.field.B", Vec3::Zero());
  if (!c.has("system.params.field.gradient")) return homogeneous_field(b);
  auto g = c.list("system.params.field.gradient");
  if (g.size() != 9) c.fail("system.params.field.gradient", "expected nine numbers g(i,j), row-major");
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = g[3 * i + j];
  return linear_field(b, m);
}

void monopole_like(Scenario& s, const Config& c, bool free_particle) {
  MonopoleParams p;
  p.m = c.num("system.params.m", 1.0);
  p.n = free_particle ? 0.0 : c.num("system.params.n", 1.0);
  p.r_min = c.num("system.params.r_min", 1e-4);
  if (!(p.m > 0.0)) c.fail("system.params.m", "mass must be positive");
  s.r_min = p.r_min;
  s.system = monopole_system(p);
  s.initial = to_state(MonopoleState{c.vec3("initial.x"), c.vec3("initial.v")});
  auto st = [](const State& y) { return monopole_from(y); };
  s.stepper.monitors.push_back(monitor(c, "speed", 1e-7, [st](double, const State& y) { return st(y).v.norm(); }));
  if (free_particle) {
    s.stepper.monitors.push_back(monitor(c, "momentum", 1e-12, [st, p](double, const State& y) {
      return (p.m * st(y).v).norm();
    }));
    return;
  }
  for (int i = 0; i < 3; ++i)
    s.stepper.monitors.push_back(monitor(c, "J" + std::to_string(i + 1), 1e-6,
                                         [st, p, i](double, const State& y) { return monopole_J(st(y), p)[i]; }));
  s.stepper.monitors.push_back(monitor(
      c, "xhat_J_minus_n", 1e-12,
      [st, p](double, const State& y) {
        MonopoleState m = st(y);
        return m.x.normalized().dot(monopole_J(m, p)) - p.n;
      },
      false));
}

void spin(Scenario& s, const Config& c) {
  SpinParams p;
  p.m = c.num("system.params.m", 1.0);
  p.mu = c.num("system.params.mu", 1.0);
  p.lambda = c.num("system.params.lambda", 1.0);
  p.field = field_from(c);
  s.system = spin_system(p);
  s.initial = to_state(SpinState{c.vec3("initial.x", Vec3::Zero()), c.vec3("initial.p", Vec3::Zero()), initial_group(c)});
  s.stepper.monitors.push_back(monitor(c, "energy", 1e-8, [p](double, const State& y) { return spin_energy(spin_from(y), p); }));
  s.stepper.monitors.push_back(monitor(
      c, "spin_norm", 1e-12,
      [p](double, const State& y) { return spin_vector(y.group[0], p.lambda).squaredNorm() - p.lambda * p.lambda; },
      false));
}

void spin_monopole(Scenario& s, const Config& c) {
  SpinMonopoleParams p;
  p.m = c.num("system.params.m", 1.0);
  p.e = c.num("system.params.e", 1.0);
  p.g = c.num("system.params.g", 4.0 * M_PI);
  p.lambda = c.num("system.params.lambda", 0.5);
  p.r_min = c.num("system.params.r_min", 1e-4);
  s.r_min = p.r_min;
  s.system = spin_monopole_system(p);
  s.initial = to_state(SpinMonopoleState{c.vec3("initial.x"), c.vec3("initial.v"), initial_group(c)});
  for (int i = 0; i < 3; ++i)
    s.stepper.monitors.push_back(monitor(c, "J" + std::to_string(i + 1), 1e-6, [p, i](double, const State& y) {
      return spin_monopole_J(spin_monopole_from(y), p)[i];
    }));
  s.stepper.monitors.push_back(monitor(c, "energy", 1e-6, [p](double, const State& y) {
    return spin_monopole_energy(spin_monopole_from(y), p);
  }));
  s.stepper.monitors.push_back(monitor(
      c, "spin_norm", 1e-12,
      [p](double, const State& y) { return spin_vector(y.group[0], p.lambda).squaredNorm() - p.lambda * p.lambda; },
      false));
}

void bmt(Scenario& s, const Config& c) {
  BmtParams p;
  p.m = c.num("system.params.m", 1.0);
  p.e = c.num("system.params.e", 1.0);
  p.g_e = c.num("system.params.g_e", 2.0);
  p.F = magnetic_field_tensor(c.vec3("system.params.field.B", Vec3(0.0, 0.0, 1.0)));
  double lambda = c.num("system.params.lambda", 0.5);
  LorentzCoeffs w{};
  if (c.has("initial.frame")) {
    auto l = c.list("initial.frame");
    if (l.size() != 6) c.fail("initial.frame", "expected six generator coefficients (01,02,03,23,31,12)");
    for (int i = 0; i < 6; ++i) w[i] = l[i];
  }
  Vec3 z = c.vec3("initial.z", Vec3::Zero());
  s.system = bmt_system(p);
  s.initial = to_state(bmt_from_frame(lorentz_exp(w), Vec4(0.0, z[0], z[1], z[2]), p.m, lambda));
  s.stepper.monitors.push_back(monitor(
      c, "u_norm", 1e-8, [](double, const State& y) { Vec4 u = y.flat.segment<4>(4); return minkowski_dot(u, u) + 1.0; },
      false));
  s.stepper.monitors.push_back(monitor(
      c, "W_dot_u", 1e-8,
      [](double, const State& y) { return minkowski_dot(y.flat.segment<4>(4), y.flat.segment<4>(8)); }, false));
  s.stepper.monitors.push_back(monitor(c, "W_square", 1e-8, [](double, const State& y) {
    Vec4 W = y.flat.segment<4>(8);
    return minkowski_dot(W, W);
  }));
  if (p.g_e == 2.0)
    s.stepper.monitors.push_back(monitor(c, "longitudinal", 1e-8, [](double, const State& y) {
      return longitudinal_polarization(bmt_from(y));
    }));
}

void wong(Scenario& s, const Config& c) {
  WongParams p;
  p.m = c.num("system.params.m", 1.0);
  p.e = c.num("system.params.e", 1.0);
  Vec3 k = c.vec3("system.params.K", Vec3(0.0, 0.0, 1.0));
  p.K = k[0] * generator(1) + k[1] * generator(2) + k[2] * generator(3);
  s.r_min = c.num("system.params.r_min", 1e-4);
  std::string bg = c.str("system.params.background", "hedgehog");
  YmBackground b;
  if (bg == "hedgehog")
    b = hedgehog_background(p.e, s.r_min);
  else if (bg == "zero")
    b = zero_background();
  else
    c.fail("system.params.background", "expected hedgehog or zero, got '" + bg + "'");
  s.system = wong_system(p, b);
  s.wong = p;
  s.initial = to_state(WongState{c.vec3("initial.x"), c.vec3("initial.v"), initial_group(c)});
  s.stepper.monitors.push_back(monitor(
      c, "casimir", 1e-12, [p](double, const State& y) { return casimir_defect(y.group[0], p.K); }, false));
  s.stepper.monitors.push_back(monitor(c, "energy", 1e-8, [p](double, const State& y) {
    return 0.5 * p.m * y.flat.segment<3>(3).squaredNorm();
  }));
}

}  // namespace

std::string method_name(Method m) { return m == Method::RK4 ? "rk4" : "liegroup"; }

Scenario build_scenario(const Config& c, bool reject_unknown) {
  Scenario s;
  s.id = c.str("system.id");
  s.stepper.method = parse_method(c);
  s.stepper.dt = c.num("stepper.dt");
  s.stepper.t_end = c.num("stepper.t_end");
  s.stepper.record_every = int(c.integer("stepper.record_every", 1));
  if (!(s.stepper.dt > 0.0)) c.fail("stepper.dt", "must be positive");
  if (s.stepper.t_end < 0.0) c.fail("stepper.t_end", "must be non-negative");
  if (s.stepper.record_every < 1) c.fail("stepper.record_every", "must be at least 1");
  s.csv = c.str("output.csv", s.csv);
  s.report = c.str("output.report", s.report);
  s.seed = c.u64("seed", 0);

  if (s.id == "free")
    monopole_like(s, c, true);
  else if (s.id == "monopole")
    monopole_like(s, c, false);
  else if (s.id == "spin")
    spin(s, c);
  else if (s.id == "spin_monopole")
    spin_monopole(s, c);
  else if (s.id == "bmt")
    bmt(s, c);
  else if (s.id == "wong")
    wong(s, c);
  else
    c.fail("system.id", "unknown system '" + s.id + "' (free, monopole, spin, spin_monopole, bmt, wong)");
  if (reject_unknown) c.reject_unused();
  return s;
}

}  // namespace fiberdyn::cli
