#include <doctest.h>

#include <cmath>

#include "fiberdyn/bundle.hpp"
#include "fiberdyn/dynamics.hpp"
#include "fiberdyn/error.hpp"
#include "fiberdyn/integrate.hpp"

using namespace fiberdyn;

// Reference values: tests/oracle/dynamics_oracle.py

namespace {

System oscillator() {
  System sys;
  sys.name = "oscillator";
  sys.rhs = [](double, const State& y) {
    Tangent k;
    k.flat.resize(2);
    k.flat << y.flat[1], -y.flat[0];
    return k;
  };
  return sys;
}

State osc0() {
  State s;
  s.flat.resize(2);
  s.flat << 1.0, 0.0;
  return s;
}

// pure rotation s' = w s with constant w: exact answer exp(t w) s0
System rotor(const Su2Vector& w) {
  System sys;
  sys.name = "rotor";
  sys.rhs = [w](double, const State&) {
    Tangent k;
    k.flat.resize(0);
    k.group = {w};
    return k;
  };
  return sys;
}

double ratio(double a, double b, double c) { return (a - b) / (b - c); }

}  // namespace

TEST_CASE("RK4 oscillator Richardson ratios match the oracle") {
  auto xf = [](double dt) { return integrate_to(Method::RK4, oscillator(), osc0(), dt, 10.0).flat[0]; };
  CHECK(std::abs(ratio(xf(0.1), xf(0.05), xf(0.025)) - 14.815019815658705) < 1e-6);
  CHECK(std::abs(ratio(xf(0.02), xf(0.01), xf(0.005)) - 15.782752163683579) < 1e-3);
  CHECK(std::abs(xf(1e-3) - std::cos(10.0)) < 1e-11);
}

TEST_CASE("Lie-group step is exact for a constant rotation") {
  Su2Vector w(0.3, -1.2, 0.8);
  State s0;
  s0.flat.resize(0);
  s0.group = {su2_exp(Su2Vector(0.1, 0.2, 0.3))};
  State y = integrate_to(Method::LieGroupRK4, rotor(w), s0, 0.1, 5.0);
  GroupPoint ref = su2_exp(5.0 * w) * s0.group[0];
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(y.group[0].q()[i] - ref.q()[i]));
  CHECK(d < 1e-13);
  CHECK(y.group[0].norm_defect() < 1e-14);
  SUBCASE("left trivialization") {
    System sys = rotor(w);
    sys.trivialization = Trivialization::Left;
    State yl = integrate_to(Method::LieGroupRK4, sys, s0, 0.1, 5.0);
    GroupPoint refl = s0.group[0] * su2_exp(5.0 * w);
    double dl = 0.0;
    for (int i = 0; i < 4; ++i) dl = std::max(dl, std::abs(yl.group[0].q()[i] - refl.q()[i]));
    CHECK(dl < 1e-13);
  }
}

TEST_CASE("both steppers keep the spin length on a long run") {
  SpinParams p;
  p.mu = 1.0;
  p.lambda = 0.5;
  Mat3 g = Mat3::Zero();
  g(0, 0) = 0.3;
  g(2, 2) = -0.3;
  p.field = linear_field(Vec3(0.4, 0.1, 1.0), g);
  SpinState st{Vec3(0.2, -0.1, 0.3), Vec3(0.1, 0.2, 0.0), section_north(Vec3(0.6, 0.0, 0.8))};
  State a = integrate_to(Method::RK4, spin_system(p), to_state(st), 0.05, 50.0);
  State b = integrate_to(Method::LieGroupRK4, spin_system(p), to_state(st), 0.05, 50.0);
  CHECK(b.group[0].norm_defect() < 1e-13);
  CHECK(a.group[0].norm_defect() < 1e-13);
  CHECK(std::abs(spin_vector(a.group[0], p.lambda).squaredNorm() - p.lambda * p.lambda) < 1e-13);
  double S2 = spin_vector(b.group[0], p.lambda).squaredNorm();
  CHECK(std::abs(S2 - p.lambda * p.lambda) < 1e-13);
}

TEST_CASE("both steppers are fourth order on the charge-monopole") {
  MonopoleParams p;
  State y0 = to_state(MonopoleState{Vec3(1, 0, 0), Vec3(0, 1, 0.3)});
  for (Method m : {Method::RK4, Method::LieGroupRK4}) {
    auto xf = [&](double dt) { return integrate_to(m, monopole_system(p), y0, dt, 2.0).flat[0]; };
    double r = ratio(xf(0.04), xf(0.02), xf(0.01));
    CHECK(r > 14.0);
    CHECK(r < 18.0);
  }
}

TEST_CASE("run") {
  StepperConfig cfg;
  cfg.dt = 0.1;
  SUBCASE("zero length") {
    cfg.t_end = 0.0;
    RunResult r = run(oscillator(), osc0(), cfg);
    CHECK(r.trajectory.states.size() == 1);
    CHECK(r.report.steps == 0);
    CHECK(r.report.passed());
  }
  SUBCASE("final step is shortened to land on t_end") {
    cfg.t_end = 1.05;
    cfg.record_every = 3;
    RunResult r = run(oscillator(), osc0(), cfg);
    CHECK(r.report.steps == 11);
    CHECK(r.trajectory.times.back() == 1.05);
    CHECK(r.trajectory.times.size() == 5);
    CHECK(std::abs(r.trajectory.states.back().flat[0] - std::cos(1.05)) < 1e-6);
  }
  SUBCASE("monitor flags a drift") {
    cfg.t_end = 10.0;
    cfg.dt = 0.5;
    cfg.monitors.push_back({"energy", [](double, const State& y) { return y.flat.squaredNorm(); }, 1e-8});
    RunResult r = run(oscillator(), osc0(), cfg);
    CHECK_FALSE(r.report.passed());
    CHECK(r.report.monitors[0].first_violation.has_value());
    CHECK(r.report.monitors[0].max_drift > 1e-8);
  }
  SUBCASE("halts at the exclusion zone") {
    MonopoleParams p{1.0, 1.0, 0.5};
    StepperConfig c;
    c.dt = 0.01;
    c.t_end = 5.0;
    RunResult r = run(monopole_system(p), to_state(MonopoleState{Vec3(2, 0, 0), Vec3(-1, 0, 0)}), c);
    CHECK(r.report.halted);
    CHECK(r.report.halt_reason.find("r < r_min") != std::string::npos);
    CHECK(r.report.t_final < 2.0);
    CHECK_FALSE(r.report.passed());
  }
  SUBCASE("bad arguments") {
    cfg.dt = 0.0;
    cfg.t_end = 1.0;
    CHECK_THROWS_AS(run(oscillator(), osc0(), cfg), Error);
    cfg.dt = 0.1;
    cfg.record_every = 0;
    CHECK_THROWS_AS(run(oscillator(), osc0(), cfg), Error);
    cfg.record_every = 1;
    cfg.t_end = -1.0;
    CHECK_THROWS_AS(run(oscillator(), osc0(), cfg), Error);
  }
  SUBCASE("wrong tangent shape") {
    System sys = oscillator();
    sys.rhs = [](double, const State&) {
      Tangent k;
      k.flat.resize(3);
      k.flat.setZero();
      return k;
    };
    cfg.t_end = 1.0;
    CHECK_THROWS_AS(run(sys, osc0(), cfg), Error);
  }
}

TEST_CASE("property: runs are deterministic") {
  SpinMonopoleParams p;
  SpinMonopoleState st{Vec3(1.5, 0.2, -0.3), Vec3(0.1, 0.6, 0.2), section_north(Vec3(0.6, 0, 0.8))};
  StepperConfig cfg;
  cfg.method = Method::LieGroupRK4;
  cfg.dt = 1e-2;
  cfg.t_end = 5.0;
  RunResult a = run(spin_monopole_system(p), to_state(st), cfg);
  RunResult b = run(spin_monopole_system(p), to_state(st), cfg);
  REQUIRE(a.trajectory.states.size() == b.trajectory.states.size());
  bool same = true;
  for (std::size_t k = 0; k < a.trajectory.states.size(); ++k) {
    same = same && (a.trajectory.states[k].flat.array() == b.trajectory.states[k].flat.array()).all();
    same = same && a.trajectory.states[k].group[0].q() == b.trajectory.states[k].group[0].q();
  }
  CHECK(same);
}
