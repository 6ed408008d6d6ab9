#include "fiberdyn/integrate.hpp"

#include <cmath>

#include "fiberdyn/error.hpp"

namespace fiberdyn {

namespace {

// dexp^{-1}_u(v) truncated after the double commutator, enough for order 4.
Su2Vector dexpinv(const Su2Vector& u, const Su2Vector& v) {
  Su2Vector uv = u.cross(v);
  return v - 0.5 * uv + u.cross(uv) / 12.0;
}

// Quaternion derivative of W s (right) or s W (left), W = (0, w/2).
std::array<double, 4> quat_rate(const std::array<double, 4>& q, const Su2Vector& w,
                                Trivialization tr) {
  double x = 0.5 * w[0], y = 0.5 * w[1], z = 0.5 * w[2];
  if (tr == Trivialization::Right) {
    return {-x * q[1] - y * q[2] - z * q[3], x * q[0] + y * q[3] - z * q[2],
            -x * q[3] + y * q[0] + z * q[1], x * q[2] - y * q[1] + z * q[0]};
  }
  return {-q[1] * x - q[2] * y - q[3] * z, q[0] * x + q[2] * z - q[3] * y,
          q[0] * y - q[1] * z + q[3] * x, q[0] * z + q[1] * y - q[2] * x};
}

Tangent eval(const System& sys, double t, const State& y) {
  try {
    Tangent k = sys.rhs(t, y);
    if (k.flat.size() != y.flat.size() || k.group.size() != y.group.size())
      throw Error(ErrorKind::InvalidFunction, "rhs returned a tangent of the wrong shape");
    return k;
  } catch (const Error& e) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " [stage at t=%.17g]", t);
    throw Error(e.kind(), std::string(e.what()) + buf);
  }
}

GroupPoint advance(const GroupPoint& s, const Su2Vector& theta, Trivialization tr) {
  return tr == Trivialization::Right ? su2_exp(theta) * s : s * su2_exp(theta);
}

}  // namespace

State rk4_step(const System& sys, const State& y, double t, double dt) {
  // The flattened system is q' = W(q/|q|) q on raw quaternions; stages keep raw
  // components and the rhs sees their normalized images.
  using Quat = std::array<double, 4>;
  const std::size_t ng = y.group.size();
  std::vector<Quat> q0(ng);
  for (std::size_t i = 0; i < ng; ++i) q0[i] = y.group[i].q();

  auto as_state = [&](const Eigen::VectorXd& flat, const std::vector<Quat>& q) {
    State s;
    s.flat = flat;
    for (const auto& c : q) s.group.emplace_back(c[0], c[1], c[2], c[3]);
    return s;
  };
  auto rates = [&](const std::vector<Quat>& q, const Tangent& k) {
    std::vector<Quat> r(ng);
    for (std::size_t i = 0; i < ng; ++i) r[i] = quat_rate(q[i], k.group[i], sys.trivialization);
    return r;
  };
  auto shifted = [&](const std::vector<Quat>& r, double c) {
    std::vector<Quat> q(ng);
    for (std::size_t i = 0; i < ng; ++i)
      for (int j = 0; j < 4; ++j) q[i][j] = q0[i][j] + c * r[i][j];
    return q;
  };

  Tangent k1 = eval(sys, t, y);
  auto r1 = rates(q0, k1);
  auto qa = shifted(r1, 0.5 * dt);
  Tangent k2 = eval(sys, t + 0.5 * dt, as_state(y.flat + 0.5 * dt * k1.flat, qa));
  auto r2 = rates(qa, k2);
  auto qb = shifted(r2, 0.5 * dt);
  Tangent k3 = eval(sys, t + 0.5 * dt, as_state(y.flat + 0.5 * dt * k2.flat, qb));
  auto r3 = rates(qb, k3);
  auto qc = shifted(r3, dt);
  Tangent k4 = eval(sys, t + dt, as_state(y.flat + dt * k3.flat, qc));
  auto r4 = rates(qc, k4);

  std::vector<Quat> qn(ng);
  for (std::size_t i = 0; i < ng; ++i)
    for (int j = 0; j < 4; ++j)
      qn[i][j] = q0[i][j] + dt / 6.0 * (r1[i][j] + 2.0 * r2[i][j] + 2.0 * r3[i][j] + r4[i][j]);
  return as_state(y.flat + dt / 6.0 * (k1.flat + 2.0 * k2.flat + 2.0 * k3.flat + k4.flat), qn);
}

State liegroup_step(const System& sys, const State& y, double t, double dt) {
  const std::size_t ng = y.group.size();
  const Trivialization tr = sys.trivialization;
  // Right: s = exp(Theta) s0, Theta' = dexpinv(Theta, w).  Left: s = s0 exp(Theta),
  // Theta' = dexpinv(-Theta, W).
  auto corrected = [&](const std::vector<Su2Vector>& theta, const std::vector<Su2Vector>& w) {
    std::vector<Su2Vector> k(ng);
    for (std::size_t i = 0; i < ng; ++i)
      k[i] = dexpinv(tr == Trivialization::Right ? theta[i] : Su2Vector(-theta[i]), w[i]);
    return k;
  };
  auto stage = [&](const Eigen::VectorXd& dflat, const std::vector<Su2Vector>& theta) {
    State s;
    s.flat = y.flat + dflat;
    for (std::size_t i = 0; i < ng; ++i) s.group.push_back(advance(y.group[i], theta[i], tr));
    return s;
  };
  auto scaled = [&](const std::vector<Su2Vector>& k, double c) {
    std::vector<Su2Vector> r(ng);
    for (std::size_t i = 0; i < ng; ++i) r[i] = c * k[i];
    return r;
  };

  Tangent t1 = eval(sys, t, y);
  auto k1 = t1.group;  // dexpinv at Theta = 0 is the identity

  auto th2 = scaled(k1, 0.5 * dt);
  Tangent t2 = eval(sys, t + 0.5 * dt, stage(0.5 * dt * t1.flat, th2));
  auto k2 = corrected(th2, t2.group);

  auto th3 = scaled(k2, 0.5 * dt);
  Tangent t3 = eval(sys, t + 0.5 * dt, stage(0.5 * dt * t2.flat, th3));
  auto k3 = corrected(th3, t3.group);

  auto th4 = scaled(k3, dt);
  Tangent t4 = eval(sys, t + dt, stage(dt * t3.flat, th4));
  auto k4 = corrected(th4, t4.group);

  State out;
  out.flat = y.flat + dt / 6.0 * (t1.flat + 2.0 * t2.flat + 2.0 * t3.flat + t4.flat);
  for (std::size_t i = 0; i < ng; ++i) {
    Su2Vector theta = dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    out.group.push_back(advance(y.group[i], theta, tr));
  }
  return out;
}

State step(Method method, const System& sys, const State& y, double t, double dt) {
  State s = method == Method::RK4 ? rk4_step(sys, y, t, dt) : liegroup_step(sys, y, t, dt);
  if (sys.project) sys.project(s);
  return s;
}

bool InvariantReport::passed() const {
  if (halted) return false;
  for (const auto& m : monitors)
    if (!m.passed()) return false;
  return true;
}

namespace {

long step_count(double dt, double t_end) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidArgument, "dt must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end))
    throw Error(ErrorKind::InvalidArgument, "t_end must be >= 0");
  return long(std::ceil(t_end / dt - 1e-9));
}

}  // namespace

RunResult run(const System& sys, const State& initial, const StepperConfig& config) {
  const long n = step_count(config.dt, config.t_end);
  if (config.record_every < 1) throw Error(ErrorKind::InvalidArgument, "record_every must be >= 1");

  RunResult res;
  auto& rep = res.report;
  for (const auto& m : config.monitors) {
    MonitorResult r;
    r.name = m.name;
    r.tolerance = m.tolerance;
    r.initial = m.drift ? m.value(0.0, initial) : 0.0;
    rep.monitors.push_back(r);
  }
  auto record = [&](double t, const State& s) {
    res.trajectory.times.push_back(t);
    res.trajectory.states.push_back(s);
    for (std::size_t i = 0; i < config.monitors.size(); ++i) {
      double d = std::abs(config.monitors[i].value(t, s) - rep.monitors[i].initial);
      if (!(d <= rep.monitors[i].max_drift)) rep.monitors[i].max_drift = d;
      if (!(d <= rep.monitors[i].tolerance) && !rep.monitors[i].first_violation)
        rep.monitors[i].first_violation = t;
    }
  };

  State y = initial;
  double t = 0.0;
  record(t, y);
  for (long k = 0; k < n; ++k) {
    double h = std::min(config.dt, config.t_end - t);
    if (k == n - 1) h = config.t_end - t;
    try {
      y = step(config.method, sys, y, t, h);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ExclusionZone || e.kind() == ErrorKind::InvalidField) {
        rep.halted = true;
        rep.halt_reason = std::string(e.what()) + " (step " + std::to_string(k) + ")";
        break;
      }
      throw Error(e.kind(), std::string(e.what()) + " (step " + std::to_string(k) + ")");
    }
    t = (k == n - 1) ? config.t_end : (k + 1) * config.dt;
    ++rep.steps;
    if ((k + 1) % config.record_every == 0 || k == n - 1) record(t, y);
  }
  rep.t_final = res.trajectory.times.back();
  if (rep.halted && res.trajectory.times.back() != t) {
    res.trajectory.times.push_back(t);
    res.trajectory.states.push_back(y);
    rep.t_final = t;
  }
  return res;
}

State integrate_to(Method method, const System& sys, const State& initial, double dt, double t_end) {
  const long n = step_count(dt, t_end);
  State y = initial;
  double t = 0.0;
  for (long k = 0; k < n; ++k) {
    double h = (k == n - 1) ? t_end - t : dt;
    y = step(method, sys, y, t, h);
    t = (k == n - 1) ? t_end : (k + 1) * dt;
  }
  return y;
}

}  // namespace fiberdyn
