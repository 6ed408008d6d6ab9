// Acceptance run: one line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fiberdyn/bundle.hpp"
#include "fiberdyn/canonical.hpp"
#include "fiberdyn/dynamics.hpp"
#include "fiberdyn/error.hpp"
#include "fiberdyn/fluxaction.hpp"
#include "fiberdyn/grassmann.hpp"
#include "fiberdyn/integrate.hpp"

using namespace fiberdyn;

namespace {

struct Line {
  std::string what;
  double value;
  double limit;
  bool ok;
};

struct Criterion {
  std::string id;
  double runtime_limit;  // seconds, 0 = none
  std::vector<Line> lines;
  void below(const std::string& what, double v, double limit) { lines.push_back({what, v, limit, v <= limit}); }
  void within(const std::string& what, double v, double lo, double hi) {
    lines.push_back({what + " in [" + fmt(lo) + ", " + fmt(hi) + "]", v, hi, v >= lo && v <= hi});
  }
  void flag(const std::string& what, bool ok) { lines.push_back({what, ok ? 1.0 : 0.0, 1.0, ok}); }
  static std::string fmt(double x) {
    char b[32];
    std::snprintf(b, sizeof b, "%g", x);
    return b;
  }
};

Mat2c su2_element(const Vec3& k) { return k[0] * generator(1) + k[1] * generator(2) + k[2] * generator(3); }

double state_distance(const State& a, const State& b) {
  double d = (a.flat - b.flat).cwiseAbs().maxCoeff();
  for (std::size_t i = 0; i < a.group.size(); ++i)
    for (int k = 0; k < 4; ++k) d = std::max(d, std::abs(a.group[i].q()[k] - b.group[i].q()[k]));
  return d;
}

double richardson(Method m, const System& sys, const State& y0, double dt, double T) {
  State a = integrate_to(m, sys, y0, dt, T);
  State b = integrate_to(m, sys, y0, dt / 2, T);
  State c = integrate_to(m, sys, y0, dt / 4, T);
  return state_distance(a, b) / state_distance(b, c);
}

// A1
void charge_monopole(Criterion& c) {
  MonopoleParams p{1.0, 1.0, 1e-4};
  MonopoleState s0{Vec3(1, 0, 0), Vec3(0, 1, 0.3)};
  StepperConfig cfg;
  cfg.method = Method::RK4;
  cfg.dt = 1e-3;
  cfg.t_end = 10.0;
  RunResult r = run(monopole_system(p), to_state(s0), cfg);
  Vec3 J0 = monopole_J(s0, p);
  double dJ = 0.0, xJ = 0.0, dv = 0.0;
  for (const auto& y : r.trajectory.states) {
    MonopoleState s = monopole_from(y);
    Vec3 J = monopole_J(s, p);
    dJ = std::max(dJ, (J - J0).cwiseAbs().maxCoeff());
    xJ = std::max(xJ, std::abs(s.x.normalized().dot(J) - p.n));
    dv = std::max(dv, std::abs(s.v.norm() - s0.v.norm()));
  }
  c.flag("run completed without halting", !r.report.halted);
  c.below("max |J(t) - J(0)|", dJ, 1e-6);
  c.below("max |xhat.J - n|", xJ, 1e-12);
  c.below("max ||v(t)| - |v(0)||", dv, 1e-7);
}

// A2
void lorentz(Criterion& c) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double shell = 0.0, spin = 0.0, transverse = 0.0, flow = 0.0, pl = 0.0;
  for (int k = 0; k < 1000; ++k) {
    RelFreeState st;
    st.frame = lorentz_exp({u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)});
    st.z = Vec4(u(rng), u(rng), u(rng), u(rng));
    st.m = 0.5 + std::abs(u(rng));
    st.lambda = 0.2 + std::abs(u(rng));
    Vec4 p = frame_momentum(st.frame, st.m);
    Mat4 S = frame_spin(st.frame, st.lambda);
    shell = std::max(shell, std::abs(minkowski_dot(p, p) + st.m * st.m));
    spin = std::max(spin, std::abs(0.5 * lower_both(S).cwiseProduct(S).sum() - st.lambda * st.lambda));
    transverse = std::max(transverse, (lower(p).transpose() * S).cwiseAbs().maxCoeff());
    Mat4 M0 = total_angular_momentum(st);
    Vec4 W0 = pauli_lubanski(st);
    RelFreeState later = st;
    for (int i = 0; i < 100; ++i) later = relfree_step(later, 0.05);
    flow = std::max(flow, (total_angular_momentum(later) - M0).cwiseAbs().maxCoeff() / (1.0 + M0.cwiseAbs().maxCoeff()));
    pl = std::max(pl, (pauli_lubanski(later) - W0).cwiseAbs().maxCoeff() / (1.0 + W0.cwiseAbs().maxCoeff()));
  }
  c.below("mass shell p.p + m^2", shell, 1e-10);
  c.below("spin square S.S/2 - lambda^2", spin, 1e-10);
  c.below("transversality p_a S^ab", transverse, 1e-10);
  c.below("free flow: M^ab change relative to |M|", flow, 1e-13);
  c.below("free flow: W^a change relative to |W|", pl, 1e-13);
}

// A3
void hedgehog(Criterion& c) {
  WongParams p{1.0, 1.0, su2_element(Vec3(0, 0, 0.8))};
  WongState s0{Vec3(1, 0.2, 0.3), Vec3(0, 0.8, 0.2), su2_exp(Su2Vector(0.6, -0.4, 0.3))};
  StepperConfig cfg;
  cfg.method = Method::LieGroupRK4;
  cfg.dt = 1e-4;
  cfg.t_end = 5.0;
  cfg.record_every = 100;
  RunResult r = run(wong_system(p, hedgehog_background(p.e)), to_state(s0), cfg);
  ReductionReport rep = hedgehog_reduction_check(r.trajectory, p, 1e-4);
  c.flag("run completed without halting", !r.report.halted);
  c.below("n drift", rep.n_drift, 1e-8);
  c.flag("n^2 <= Tr I^2 / 2 at every sample", rep.inequality_holds);
  c.below("divergence from the monopole system", rep.max_divergence, 1e-4);
}

// A4
void casimir(Criterion& c) {
  // hedgehog, and a constant non-abelian potential whose field is pure commutator
  std::vector<std::pair<std::string, YmBackground>> bgs;
  bgs.push_back({"hedgehog", hedgehog_background(1.0)});
  bgs.push_back({"constant", {"constant", [](const Vec3&) {
                                YmSample s;
                                s.A = {0.7 * generator(1), -0.4 * generator(2), 0.5 * generator(3) + 0.2 * generator(1)};
                                for (auto& row : s.dA)
                                  for (auto& a : row) a = Mat2c::Zero();
                                return s;
                              }}});
  for (const auto& [name, bg] : bgs) {
    WongParams p{1.0, 1.0, su2_element(Vec3(0.3, -0.5, 0.8))};
    System sys = wong_system(p, bg);
    State y = to_state(WongState{Vec3(1, 0.2, 0.3), Vec3(0, 0.8, 0.2), su2_exp(Su2Vector(0.6, -0.4, 0.3))});
    double worst = 0.0, t = 0.0;
    const double dt = 1e-3;
    const long steps = 1000000;
    bool halted = false;
    for (long k = 0; k < steps; ++k) {
      try {
        y = step(Method::LieGroupRK4, sys, y, t, dt);
      } catch (const Error&) {
        halted = true;
        break;
      }
      t += dt;
      worst = std::max(worst, casimir_defect(y.group[0], p.K));
    }
    c.flag(name + ": 10^6 steps completed", !halted);
    c.below(name + ": max |Tr I^2 - Tr K^2|", worst, 1e-12);
  }
}

// A5
void kaluza_klein(Criterion& c) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int admissible = 0;
  double worst = 0.0;
  while (admissible < 1000) {
    KkParams p{0.5 + std::abs(u(rng)), (admissible % 2 ? 1.0 : -1.0) * (0.5 + std::abs(u(rng))), 1.0};
    KkState st;
    st.xdot = Vec4(1.0, 0.6 * u(rng), 0.6 * u(rng), 0.6 * u(rng));
    st.x = Vec4(u(rng), u(rng), u(rng), u(rng));
    st.s = su2_exp(Su2Vector(3 * u(rng), 3 * u(rng), 3 * u(rng)));
    st.omega = Su2Vector(u(rng), u(rng), u(rng));
    KkMomenta m;
    try {
      m = kk_momenta(st, p);
    } catch (const Error&) {
      continue;
    }
    ++admissible;
    worst = std::max(worst, std::abs(kk_identity_residual(st, p)) / (p.m * p.m + m.I.squaredNorm() / std::abs(p.lambda)));
  }
  c.below("mass-shell identity over 1000 admissible states (relative)", worst, 1e-10);

  KkParams p{1.0, -3.0, 1.0};
  Mat2c K = su2_element(Vec3(0.2, -0.1, 0.6));
  double M = kk_effective_mass(K, p);
  YmBackground bg = hedgehog_background(p.e);
  RelWongState w;
  Vec3 v(0.1, 0.5, 0.2);
  w.u = Vec4(std::sqrt(1.0 + v.squaredNorm()), v[0], v[1], v[2]);
  w.z = Vec4(0.0, 1.0, 0.2, 0.3);
  w.s = su2_exp(Su2Vector(0.3, 0.2, -0.1));
  StepperConfig cfg;
  cfg.method = Method::LieGroupRK4;
  cfg.dt = 1e-3;
  cfg.t_end = 5.0;
  cfg.record_every = 10;
  RunResult r = run(rel_wong_system(M, p.e, K, bg, 1.0 / (M * p.lambda)), to_state(w), cfg);
  double inv = 0.0;
  for (const auto& y : r.trajectory.states)
    inv = std::max(inv, std::abs(kk_coupled_invariant(kk_state_from_wong(rel_wong_from(y), p, K, bg), p, bg)));
  c.flag("coupled run completed without halting", !r.report.halted);
  c.below("coupled invariant along t in [0, 5]", inv, 1e-8);
}

// A6
void brackets(Criterion& c) {
  Chart chart;
  chart.h = 1e-5;
  BracketSuite b = bracket_suite(chart, 100, 6);
  c.below("i T(a) s = (ds/dxi_b) N(b,a)", b.at_h.n_identity, 1e-6);
  c.below("{t_a, s} = i T(a) s", b.at_h.t_s, 1e-6);
  c.below("{t_a, t_b} = eps_abc t_c", b.at_h.t_t, 1e-6);
  c.below("{phi, t_i}", b.phi_t, 1e-6);
  c.within("smallest residual ratio under h -> h/2", b.min_tightening, 3.0, 5.0);
  c.within("largest residual ratio under h -> h/2", b.max_tightening, 3.0, 5.0);
}

// A7
void grassmann(Criterion& c) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  auto odd = [&](int k) {
    GrassmannElement x(k);
    for (std::uint32_t m = 0; m < x.size(); ++m)
      if (__builtin_popcount(m) & 1) x[m] = cplx(g(rng), g(rng));
    return x;
  };
  double prec = 0.0, polar = 0.0;
  for (int i = 0; i < 100; ++i) {
    OddTriple f{odd(6), odd(6), odd(6)};
    prec = std::max(prec, precession_consistency(Vec3(g(rng), g(rng), g(rng)), g(rng), f));
    Vec3 xhat = Vec3(g(rng), g(rng), g(rng)).normalized();
    polar = std::max(polar, polar_identity_check(xhat, f, 0.2 + std::abs(g(rng)), 0.2 + std::abs(g(rng))));
  }
  c.below("precession consistency", prec, 1e-12);
  c.below("polar identity", polar, 1e-12);
}

// A8
void flux_quantization(Criterion& c) {
  SurfaceMesh sphere = icosphere(5);
  c.flag("unit sphere has >= 20000 triangles", sphere.triangles.size() >= 20000);
  double f = flux(monopole_field_form(1.0), sphere);
  c.below("unit sphere flux vs -4 pi n (relative)", std::abs(f / (-4.0 * M_PI) - 1.0), 1e-3);
  c.below("non-enclosing sphere flux", std::abs(flux(monopole_field_form(1.0), icosphere(5, 1.0, Vec3(3, 0, 0)))), 1e-6);
  c.flag("[1, sqrt 2] incommensurable", !quantization_check({1.0, std::sqrt(2.0)}).commensurable);
  c.flag("[1, 3/7] commensurable", quantization_check({1.0, 3.0 / 7.0}).commensurable);
}

// A9
void cocycle(Criterion& c) {
  PatchCover caps = tetrahedral_cover(1.3);
  LineTransitions f(caps, {{1.0, Vec3::Zero()}});
  CocycleReport r = cocycle_integers(caps, f.fn(), 2.0, 8, 9);
  c.flag("four triple overlaps sampled", r.triples.size() == 4);
  c.below("n_abc distance from integers", r.max_deviation, 1e-6);
  c.flag("equatorial winding = 2n (n = 1)", equator_winding(1.0).winding == 2);
}

// A10
void path_action_check(Criterion& c) {
  MonopoleParams p;
  double eg = 4.0 * M_PI * p.n;
  auto curve = [&](double dt, std::vector<Vec3>& x, std::vector<double>& t) {
    int nt = int(std::round(1.0 / dt)) + 1;
    State y = to_state(MonopoleState{Vec3(1, 0, 0), Vec3(0, 1, 0.3)});
    for (int j = 0; j < nt; ++j) {
      t.push_back(j * dt);
      x.push_back(y.flat.head<3>());
      y = integrate_to(Method::RK4, monopole_system(p), y, dt / 10, dt);
    }
  };
  std::vector<Vec3> xa, xb;
  std::vector<double> ta, tb;
  curve(1e-2, xa, ta);
  curve(5e-3, xb, tb);
  double ga = euler_lagrange_gradient(xa, ta, p, eg, 101).max_norm;
  double gb = euler_lagrange_gradient(xb, tb, p, eg, 201).max_norm;
  c.below("EL gradient at (dt, dsigma) = (1e-2, 1e-2)", ga, 1e-3);
  c.within("EL gradient ratio under joint halving", ga / gb, 3.5, 4.5);
  double wu = weil_unit(eg, icosphere(5));
  PathSheet a = build_sheet(xa, ta, 101, SheetConstruction::Radial, Vec3(0, 0, -1));
  PathSheet b = build_sheet(xa, ta, 101, SheetConstruction::GeodesicCap, Vec3(0, 0, -1));
  double d = (path_action(a, p, eg) - path_action(b, p, eg)) / wu;
  c.below("sheet swap: distance of dS / weil unit from an integer", std::abs(d - std::round(d)), 1e-3);
}

// A11
void bmt(Criterion& c) {
  BmtParams p;
  p.g_e = 2.0;
  p.F = magnetic_field_tensor(Vec3(0, 0, 1));
  BmtState st;
  double rap = 0.5;
  st.u = Vec4(std::cosh(rap), std::sinh(rap) * 0.6, 0.0, std::sinh(rap) * 0.8);
  Vec3 w(0.1, 0.3, -0.2);
  st.W = Vec4(w.dot(st.u.tail<3>()) / st.u[0], w[0], w[1], w[2]);
  auto trace = [&](double dt) {
    StepperConfig cfg;
    cfg.dt = dt;
    cfg.t_end = 100.0;
    cfg.record_every = int(std::round(0.1 / dt));
    return run(bmt_system(p), to_state(st), cfg).trajectory;
  };
  Trajectory a = trace(1e-3), ref = trace(1e-4);
  double P0 = longitudinal_polarization(st);
  bool aligned = a.times.size() == ref.times.size();
  for (std::size_t k = 0; aligned && k < a.times.size(); ++k) aligned = std::abs(a.times[k] - ref.times[k]) < 1e-9;
  c.flag("reference samples aligned", aligned);
  if (!aligned) return;
  double vs_ref = 0.0, drift = 0.0, norm = 0.0;
  for (std::size_t k = 0; k < a.states.size(); ++k) {
    BmtState s = bmt_from(a.states[k]);
    double P = longitudinal_polarization(s);
    vs_ref = std::max(vs_ref, std::abs(P - longitudinal_polarization(bmt_from(ref.states[k]))));
    drift = std::max(drift, std::abs(P - P0));
    norm = std::max(norm, std::abs(minkowski_dot(s.u, s.u) + 1.0));
  }
  c.below("longitudinal polarization, dt vs dt/10", vs_ref, 1e-8);
  c.below("longitudinal polarization drift from tau = 0", drift, 1e-8);
  c.below("|zdot.zdot + 1|", norm, 1e-8);
}

// A12
void order(Criterion& c) {
  MonopoleParams mp;
  State m0 = to_state(MonopoleState{Vec3(1, 0, 0), Vec3(0, 1, 0.3)});
  SpinParams sp;
  sp.mu = 0.8;
  sp.lambda = 0.5;
  Mat3 g = Mat3::Zero();
  g(0, 0) = 0.1;
  g(1, 1) = -0.05;
  g(2, 2) = -0.05;
  sp.field = linear_field(Vec3(0, 0, 1), g);
  State s0 = to_state(SpinState{Vec3(0.2, 0, 0), Vec3(0, 0.3, 0.1), su2_exp(Su2Vector(0.4, 0.3, 0))});
  for (Method m : {Method::RK4, Method::LieGroupRK4}) {
    std::string name = m == Method::RK4 ? "rk4" : "liegroup";
    c.within(name + ", monopole", richardson(m, monopole_system(mp), m0, 0.04, 2.0), 14.0, 18.0);
    c.within(name + ", spin", richardson(m, spin_system(sp), s0, 0.2, 10.0), 14.0, 18.0);
  }
}

}  // namespace

int main() {
  struct Entry {
    std::string id;
    std::string title;
    double runtime_limit;
    std::function<void(Criterion&)> body;
  };
  std::vector<Entry> entries{
      {"A1", "charge-monopole conservation", 1.0, charge_monopole},
      {"A2", "Lorentz-group identities", 1.0, lorentz},
      {"A3", "hedgehog reduction", 30.0, hedgehog},
      {"A4", "Casimir exactness", 0.0, casimir},
      {"A5", "Kaluza-Klein identity", 0.0, kaluza_klein},
      {"A6", "canonical brackets", 10.0, brackets},
      {"A7", "Grassmann identities", 1.0, grassmann},
      {"A8", "flux and quantization", 0.0, flux_quantization},
      {"A9", "cocycle integrality", 0.0, cocycle},
      {"A10", "path-space action", 0.0, path_action_check},
      {"A11", "BMT polarization", 0.0, bmt},
      {"A12", "integrator order", 0.0, order},
  };
  int failed = 0;
  for (const auto& e : entries) {
    Criterion c{e.id, e.runtime_limit, {}};
    auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
      e.body(c);
    } catch (const std::exception& ex) {
      error = ex.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = error.empty();
    for (const auto& l : c.lines) ok = ok && l.ok;
    bool in_time = e.runtime_limit == 0.0 || secs < e.runtime_limit;
    ok = ok && in_time;
    if (!ok) ++failed;
    std::printf("%-4s %s  %s (%.2f s", e.id.c_str(), ok ? "PASS" : "FAIL", e.title.c_str(), secs);
    if (e.runtime_limit > 0.0) std::printf(", limit %g s", e.runtime_limit);
    std::printf(")\n");
    for (const auto& l : c.lines)
      std::printf("       %s %s: %.3e (limit %.3g)\n", l.ok ? "ok  " : "FAIL", l.what.c_str(), l.value, l.limit);
    if (!error.empty()) std::printf("       FAIL exception: %s\n", error.c_str());
  }
  std::printf("%d of %zu criteria passed\n", int(entries.size()) - failed, entries.size());
  return failed == 0 ? 0 : 1;
}
