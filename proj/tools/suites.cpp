#include "suites.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "fiberdyn/bundle.hpp"
#include "fiberdyn/canonical.hpp"
#include "fiberdyn/dynamics.hpp"
#include "fiberdyn/error.hpp"
#include "fiberdyn/fluxaction.hpp"
#include "fiberdyn/grassmann.hpp"

namespace fiberdyn::cli {

bool SuiteReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.passed; });
}

void SuiteReport::add(const std::string& identity, double residual, double tolerance) {
  items.push_back({identity, residual, tolerance, residual <= tolerance});
}

void SuiteReport::add_flag(const std::string& identity, bool ok) {
  items.push_back({identity, ok ? 0.0 : 1.0, 0.0, ok});
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"brackets", "grassmann", "cocycle", "flux", "identities"};
  return names;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "identities") return identities_suite(seed);
  if (name == "brackets") return brackets_suite(seed);
  if (name == "grassmann") return grassmann_suite(seed);
  if (name == "flux") return flux_suite(seed);
  if (name == "cocycle") return cocycle_suite(seed);
  throw Error(ErrorKind::Config, "unknown suite '" + name + "'");
}

SuiteReport identities_suite(std::uint64_t seed) {
  SuiteReport r{"identities", seed, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double mass = 0.0, spin = 0.0, transverse = 0.0, pl = 0.0, orth = 0.0, flow = 0.0;
  double qnorm = 0.0, homo = 0.0, lorentz_chain = 0.0, lorentz_scaled = 0.0;
  for (int k = 0; k < 1000; ++k) {
    LorentzCoeffs w;
    for (auto& c : w) c = u(rng);
    double m = 0.5 + std::abs(u(rng)), lambda = 0.2 + std::abs(u(rng));
    LorentzFrame L = lorentz_exp(w);
    orth = std::max(orth, L.orthogonality_defect());
    Vec4 p = lower(frame_momentum(L, m));
    Mat4 S = frame_spin(L, lambda);  // upper
    Mat4 Sl = lower_both(S);
    mass = std::max(mass, std::abs(minkowski_dot(frame_momentum(L, m), frame_momentum(L, m)) + m * m));
    spin = std::max(spin, std::abs(0.5 * (Sl.cwiseProduct(S)).sum() - lambda * lambda));
    transverse = std::max(transverse, (p.transpose() * S).cwiseAbs().maxCoeff());

    RelFreeState st{Vec4(u(rng), u(rng), u(rng), u(rng)), L, m, lambda, 0.0};
    pl = std::max(pl, std::abs(pauli_lubanski_square(st) - m * m * lambda * lambda));
    Mat4 M0 = total_angular_momentum(st);
    RelFreeState moved = st;
    for (int i = 0; i < 100; ++i) moved = relfree_step(moved, 0.05);
    flow = std::max(flow, (total_angular_momentum(moved) - M0).cwiseAbs().maxCoeff());

    // long compositions
    GroupPoint s;
    LorentzFrame chain, bounded;
    Vec3 v(u(rng), u(rng), u(rng));
    for (int i = 0; i < 100; ++i) {
      GroupPoint a = su2_exp(Vec3(u(rng), u(rng), u(rng)));
      GroupPoint b = su2_exp(Vec3(u(rng), u(rng), u(rng)));
      s = s * a;
      homo = std::max(homo, (rotate_vector(a * b, v) - rotate_vector(a, rotate_vector(b, v))).norm());
      LorentzCoeffs small, mild;
      for (auto& c : small) c = 0.3 * u(rng);
      for (int j = 0; j < 6; ++j) mild[j] = (j < 3 ? 0.02 : 1.0) * u(rng);
      chain = chain * lorentz_exp(small);
      bounded = bounded * lorentz_exp(mild);
    }
    qnorm = std::max(qnorm, s.norm_defect());
    lorentz_chain = std::max(lorentz_chain, bounded.orthogonality_defect());
    // rounding in L^T eta L scales with |L|^2
    double scale = chain.matrix().cwiseAbs().maxCoeff();
    lorentz_scaled = std::max(lorentz_scaled, chain.orthogonality_defect() / (scale * scale));
  }
  r.add("p.p + m^2", mass, 1e-10);
  r.add("S_ab S^ab / 2 - lambda^2", spin, 1e-10);
  r.add("p_a S^ab", transverse, 1e-10);
  r.add("W.W - m^2 lambda^2", pl, 1e-10);
  r.add("Lorentz orthogonality", orth, 1e-10);
  r.add("Lorentz orthogonality after 100 compositions (total rapidity <= 3.5)", lorentz_chain, 1e-10);
  r.add("Lorentz orthogonality after 100 random compositions, relative to |L|^2", lorentz_scaled, 1e-14);
  r.add("quaternion norm after 100 compositions", qnorm, 1e-12);
  r.add("rotation homomorphism", homo, 1e-12);
  r.add("free-flow M^ab drift", flow, 1e-12);
  return r;
}

SuiteReport brackets_suite(std::uint64_t seed) {
  SuiteReport r{"brackets", seed, {}};
  Chart chart;
  BracketSuite b = bracket_suite(chart, 100, seed);
  r.add("i T(a) s = (ds/dxi_b) N(b,a)", b.at_h.n_identity, 1e-6);
  r.add("{t_a, s} = i T(a) s", b.at_h.t_s, 1e-6);
  r.add("{t_a, t_b} = eps_abc t_c", b.at_h.t_t, 1e-6);
  r.add("{phi, t_i} = 0", b.phi_t, 1e-6);
  r.add("{phi_i, phi_j} = eps_ijk (phi_k - S_k)", b.spin_algebra, 1e-6);
  // ratio of residuals under h -> h/2, expected 4
  r.add("h^2 tightening (min ratio, |ratio - 4|)", std::abs(b.min_tightening - 4.0), 1.0);
  r.add("h^2 tightening (max ratio, |ratio - 4|)", std::abs(b.max_tightening - 4.0), 1.0);
  PhasePoint p;
  p.xi = Vec3(0.4, -0.3, 0.2);
  ConstraintReport half = constraint_checks(chart, p, 0.5);
  ConstraintReport third = constraint_checks(chart, p, 1.0 / 3.0);
  r.add_flag("Dirac flag: 2n integer for n = 1/2", half.dirac_integer);
  r.add_flag("Dirac flag: 2n non-integer for n = 1/3", !third.dirac_integer);
  return r;
}

namespace {

OddTriple random_odd(std::mt19937_64& rng, int k) {
  std::normal_distribution<double> g;
  OddTriple f{GrassmannElement(k), GrassmannElement(k), GrassmannElement(k)};
  for (auto& x : f)
    for (std::uint32_t m = 0; m < x.size(); ++m)
      if (std::popcount(m) & 1) x[m] = cplx(g(rng), g(rng));
  return f;
}

GrassmannElement random_homogeneous(std::mt19937_64& rng, int k, int parity) {
  std::normal_distribution<double> g;
  GrassmannElement x(k);
  for (std::uint32_t m = 0; m < x.size(); ++m)
    if ((std::popcount(m) & 1) == parity) x[m] = cplx(g(rng), g(rng));
  return x;
}

}  // namespace

SuiteReport grassmann_suite(std::uint64_t seed) {
  SuiteReport r{"grassmann", seed, {}};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  double prec = 0.0, polar = 0.0, assoc = 0.0, graded = 0.0;
  for (int i = 0; i < 100; ++i) {
    OddTriple f = random_odd(rng, 6);
    Vec3 B(g(rng), g(rng), g(rng));
    prec = std::max(prec, precession_consistency(B, g(rng), f));
    Vec3 xhat = Vec3(g(rng), g(rng), g(rng)).normalized();
    polar = std::max(polar, polar_identity_check(xhat, f, 0.2 + std::abs(g(rng)), 0.2 + std::abs(g(rng))));
    int pa = i % 2, pb = (i / 2) % 2;
    GrassmannElement a = random_homogeneous(rng, 6, pa), b = random_homogeneous(rng, 6, pb),
                     c = random_homogeneous(rng, 6, 1);
    assoc = std::max(assoc, ((a * b) * c - a * (b * c)).max_abs());
    double sign = (pa && pb) ? -1.0 : 1.0;
    graded = std::max(graded, (a * b - (b * a) * cplx(sign)).max_abs());
  }
  r.add("precession: dS/dt = mu eps B S", prec, 1e-12);
  r.add("polar identity", polar, 1e-12);
  r.add("associativity", assoc, 1e-12);
  r.add("graded commutativity", graded, 1e-12);
  return r;
}

SuiteReport flux_suite(std::uint64_t seed) {
  SuiteReport r{"flux", seed, {}};
  const double n = 1.0;
  SurfaceMesh sphere = icosphere(5);
  double f = flux(monopole_field_form(n), sphere);
  r.add("outward unit sphere flux = -4 pi n (relative)", std::abs(f / (-4.0 * M_PI * n) - 1.0), 1e-3);
  r.add("sphere not enclosing the monopole", std::abs(flux(monopole_field_form(n), icosphere(5, 1.0, Vec3(3.0, 0.0, 0.0)))), 1e-6);
  r.add("orientation flip negates flux", std::abs(flux(monopole_field_form(n), flipped(sphere)) + f), 1e-12);
  auto [north, south] = partition(sphere, [](const Vec3& c) { return c[2] > 0.1; });
  r.add("flux additivity over a partition",
        std::abs(flux(monopole_field_form(n), north) + flux(monopole_field_form(n), south) - f), 1e-12);
  MonopoleParams mp{1.0, n, 1e-4};
  TwoForm restricted = fixed_velocity_restriction(monopole_phase_form(mp), Vec3(0.3, -0.2, 0.5));
  r.add("phase-space form at fixed v equals the F-form",
        std::abs(flux(restricted, icosphere(3, 1.5, Vec3(0.2, 0.1, 0.0))) -
                 flux(monopole_field_form(n), icosphere(3, 1.5, Vec3(0.2, 0.1, 0.0)))),
        1e-12);
  auto q1 = quantization_check({1.0, std::sqrt(2.0)});
  r.add_flag("[1, sqrt 2] incommensurable", !q1.commensurable);
  auto q2 = quantization_check({1.0, 3.0 / 7.0});
  r.add_flag("[1, 3/7] commensurable", q2.commensurable);
  r.add("[1, 3/7] lambda_w = 2/7", q2.lambda_w ? std::abs(*q2.lambda_w - 2.0 / 7.0) : 1.0, 1e-12);
  auto q3 = quantization_check({1.0});
  r.add("[1] lambda_w = 2", q3.lambda_w ? std::abs(*q3.lambda_w - 2.0) : 1.0, 1e-12);
  double eg = 4.0 * M_PI * n;
  r.add("weil unit = -eg (relative)", std::abs(weil_unit(eg, sphere) / (-eg) - 1.0), 1e-3);
  return r;
}

SuiteReport cocycle_suite(std::uint64_t seed) {
  SuiteReport r{"cocycle", seed, {}};
  PatchCover caps = tetrahedral_cover(1.3);
  r.add("tetrahedral cover coverage deficit", 1.0 - caps.coverage(20000, seed), 0.0);
  LineTransitions f(caps, {{1.0, Vec3::Zero()}});
  CocycleReport rep = cocycle_integers(caps, f.fn(), 2.0, 8, seed);
  r.add("n_abc distance from integers (n = 1, lambda_w = 2)", rep.max_deviation, 1e-6);
  r.add("U(1) cocycle g_ab g_bc g_ca = 1", rep.max_u1_defect, 1e-9);
  WindingResult w = equator_winding(1.0);
  r.add_flag("equatorial winding = 2n", w.winding == 2);
  LineTransitions f2(caps, {{1.0, Vec3::Zero()}, {std::sqrt(2.0), Vec3(0.3, 0.1, 0.2)}});
  CocycleReport bad = cocycle_integers(caps, f2.fn(), 2.0, 8, seed);
  r.add_flag("incommensurate pair (1, sqrt 2) reported as a violation", bad.violation);
  return r;
}

}  // namespace fiberdyn::cli
