#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "fiberdyn/liealg.hpp"

namespace fiberdyn {

// Exponential chart on SU(2): s(xi) = exp(i T(r) xi_r) with T(r) = sigma_r / 2.
// This is su2_exp(-xi). The dynamics basis sigma_r / sqrt 2 differs by a
// factor sqrt 2 in the coordinates: xi_here = xi_dyn * sqrt 2.
struct Chart {
  std::string group = "SU(2)";
  int dim = 3;
  double h = 1e-5;  // finite-difference step
};

struct PhasePoint {
  Vec3 xi = Vec3::Zero();
  Vec3 pi = Vec3::Zero();
};

GroupPoint chart_point(const Vec3& xi);
Vec3 chart_log(const GroupPoint& s);  // principal, |xi| < pi on the chart

// N(b, a) = d f_b / d eps_a at eps = 0, where s(f(eps)) = exp(i T(a) eps_a) s(xi).
Mat3 n_matrix(const Chart& chart, const Vec3& xi);
// t_a = -pi_b N(b, a)
Vec3 t_functions(const Chart& chart, const PhasePoint& point);

using PhaseFunction = std::function<double(const Vec3& xi, const Vec3& pi)>;
// Central differences with step h in all six phase-space directions.
double poisson_bracket(const PhaseFunction& F, const PhaseFunction& G, const PhasePoint& point,
                       double h);

// Residuals of the bracket identities at one phase point. All finite
// differences run in quad precision; only the results are rounded to double.
struct BracketResiduals {
  double n_identity = 0.0;  // i T(a) s = (ds/dxi_b) N(b, a)
  double t_s = 0.0;         // {t_a, s} = i T(a) s
  double t_t = 0.0;         // {t_a, t_b} = eps_abc t_c
  double max() const;
};
BracketResiduals bracket_residuals(const Chart& chart, const PhasePoint& point);

struct ConstraintReport {
  double phi = 0.0;           // xhat . t - n
  double phi_t = 0.0;         // max_i |{phi, t_i}|
  double spin_algebra = 0.0;  // max |{phi_i, phi_j} - eps_ijk (phi_k - S_k)|
  bool dirac_integer = false; // 2n integer
};
// S = lambda hopf_project(s) in the spin constraints phi_i = t_i - S_i.
ConstraintReport constraint_checks(const Chart& chart, const PhasePoint& point, double n,
                                   double lambda = 1.0);

struct BracketSuite {
  int samples = 0;
  double h = 0.0;
  BracketResiduals at_h;
  BracketResiduals at_half_h;
  double phi_t = 0.0;
  double phi_t_half = 0.0;
  double spin_algebra = 0.0;
  double spin_algebra_half = 0.0;
  // worst-case ratio residual(h) / residual(h/2) over the three bracket identities
  double min_tightening = 0.0;
  double max_tightening = 0.0;
};
// Seeded points with |xi| < 2.5 and momenta in [-1, 1]^3.
BracketSuite bracket_suite(const Chart& chart, int samples, std::uint64_t seed);

}  // namespace fiberdyn
