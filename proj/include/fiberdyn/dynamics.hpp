#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "fiberdyn/integrate.hpp"
#include "fiberdyn/liealg.hpp"

namespace fiberdyn {

// ---------------------------------------------------------------- charge-monopole

struct MonopoleParams {
  double m = 1.0;
  double n = 1.0;  // eg / 4pi
  double r_min = 1e-4;
};

struct MonopoleState {
  Vec3 x = Vec3::Zero();
  Vec3 v = Vec3::Zero();
};

struct MonopoleRate {
  Vec3 xdot;
  Vec3 vdot;
};

MonopoleRate monopole_rhs(const MonopoleState& state, const MonopoleParams& p);
Vec3 monopole_J(const MonopoleState& state, const MonopoleParams& p);
double monopole_energy(const MonopoleState& state, const MonopoleParams& p);

System monopole_system(const MonopoleParams& p);
State to_state(const MonopoleState& s);
MonopoleState monopole_from(const State& s);

// ---------------------------------------------------------------- magnetic fields

struct FieldSample {
  Vec3 B = Vec3::Zero();
  Mat3 dB = Mat3::Zero();  // dB(i, j) = d_i B_j
};
using MagneticField = std::function<FieldSample(const Vec3&)>;

MagneticField homogeneous_field(const Vec3& b);
// B_j = b_j + sum_i g(i, j) x_i
MagneticField linear_field(const Vec3& b, const Mat3& g);
// B = (g / 4pi) x / r^3
MagneticField monopole_field(double g, double r_min);

// ---------------------------------------------------------------- spinning particle

struct SpinParams {
  double m = 1.0;
  double mu = 1.0;
  double lambda = 1.0;
  MagneticField field = homogeneous_field(Vec3::Zero());
};

struct SpinState {
  Vec3 x = Vec3::Zero();
  Vec3 p = Vec3::Zero();
  GroupPoint s;
};

struct SpinRate {
  Vec3 xdot;
  Vec3 pdot;
  Su2Vector omega;  // s' = (-i omega.sigma/2) s
  Vec3 Sdot;
};

Vec3 spin_vector(const GroupPoint& s, double lambda);
SpinRate spin_rhs(const SpinState& state, const SpinParams& p);
double spin_energy(const SpinState& state, const SpinParams& p);

System spin_system(const SpinParams& p);
State to_state(const SpinState& s);
SpinState spin_from(const State& s);

// Spinning charge in the monopole field, gyromagnetic ratio 2 (mu = e/m).
struct SpinMonopoleParams {
  double m = 1.0;
  double e = 1.0;
  double g = 4.0 * M_PI;
  double lambda = 0.5;
  double r_min = 1e-4;
  double n() const { return e * g / (4.0 * M_PI); }
  double mu() const { return e / m; }
};

struct SpinMonopoleState {
  Vec3 x = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  GroupPoint s;
};

struct SpinMonopoleRate {
  Vec3 xdot;
  Vec3 vdot;
  Su2Vector omega;
};

SpinMonopoleRate spin_monopole_rhs(const SpinMonopoleState& state, const SpinMonopoleParams& p);
// m x cross v + n xhat + S
Vec3 spin_monopole_J(const SpinMonopoleState& state, const SpinMonopoleParams& p);
double spin_monopole_energy(const SpinMonopoleState& state, const SpinMonopoleParams& p);

System spin_monopole_system(const SpinMonopoleParams& p);
State to_state(const SpinMonopoleState& s);
SpinMonopoleState spin_monopole_from(const State& s);

// ---------------------------------------------------------------- relativistic spin

struct RelFreeState {
  Vec4 z = Vec4::Zero();
  LorentzFrame frame;
  double m = 1.0;
  double lambda = 1.0;
  double tau = 0.0;
};

RelFreeState relfree_step(const RelFreeState& state, double dtau);
Mat4 total_angular_momentum(const RelFreeState& state);  // M^ab
Vec4 pauli_lubanski(const RelFreeState& state);          // W^a, upper index
double pauli_lubanski_square(const RelFreeState& state);

struct BmtParams {
  double m = 1.0;
  double e = 1.0;
  double g_e = 2.0;
  Mat4 F = Mat4::Zero();  // F_ab, both indices down
  // Set only to describe a non-homogeneous field, which the BMT limit does not cover.
  std::function<Mat4(const Vec4&)> field_at;
  double c() const { return -e * g_e / (4.0 * m); }
};

struct BmtState {
  Vec4 z = Vec4::Zero();
  Vec4 u = Vec4(1.0, 0.0, 0.0, 0.0);
  Vec4 W = Vec4::Zero();  // Pauli-Lubanski vector, upper index
  double tau = 0.0;
};

struct BmtRate {
  Vec4 zdot;
  Vec4 udot;
  Vec4 Wdot;
};

Mat4 magnetic_field_tensor(const Vec3& b);  // F_ij = eps_ijk B_k, F_0i = 0
BmtState bmt_from_frame(const LorentzFrame& frame, const Vec4& z, double m, double lambda);
BmtRate bmt_rhs(const BmtState& state, const BmtParams& p);
// Cosine between the lab-frame spatial parts of W and u.
double longitudinal_polarization(const BmtState& state);

System bmt_system(const BmtParams& p);
State to_state(const BmtState& s);
BmtState bmt_from(const State& s);

// ---------------------------------------------------------------- Yang-Mills backgrounds

// Generators T(a) = sigma_a / sqrt 2 with Tr[T(a) T(b)] = delta_ab, a in 1..3.
const Mat2c& generator(int alpha);
Vec3 algebra_components(const Mat2c& x);  // x^a = Tr[x T(a)]

struct YmSample {
  std::array<Mat2c, 3> A;                 // A_i, hermitian
  std::array<std::array<Mat2c, 3>, 3> dA;  // dA[k][i] = d_k A_i
};

struct YmBackground {
  std::string id;
  std::function<YmSample(const Vec3&)> sample;
};

YmSample hedgehog_potentials(const Vec3& x, double e, double r_min = 1e-4);
YmBackground hedgehog_background(double e, double r_min = 1e-4);
YmBackground zero_background();
// A_i = a_i(x) T(alpha)
YmBackground abelian_background(std::function<Vec3(const Vec3&)> a,
                                std::function<Mat3(const Vec3&)> da, int alpha);

// h(x) = exp(-i f(x) axis.sigma/2) with analytic derivatives of f.
struct GaugeRotation {
  Vec3 axis = Vec3::UnitZ();
  std::function<double(const Vec3&)> f;
  std::function<Vec3(const Vec3&)> grad;
  std::function<Mat3(const Vec3&)> hess;
  GroupPoint at(const Vec3& x) const { return su2_exp(f(x) * axis); }
};
// A' = h A h^-1 + (i/e) h dh^-1
YmBackground gauge_transformed(const YmBackground& bg, const GaugeRotation& h, double e);

// F_ij = d_i A_j - d_j A_i - ie [A_i, A_j]
std::array<std::array<Mat2c, 3>, 3> field_strength(const YmSample& s, double e);

// ---------------------------------------------------------------- Wong particle

struct WongParams {
  double m = 1.0;
  double e = 1.0;
  Mat2c K = Mat2c::Zero();
};

struct WongState {
  Vec3 x = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  GroupPoint s;
};

struct WongRate {
  Vec3 xdot;
  Vec3 vdot;
  Su2Vector omega;  // s' = (-i omega.sigma/2) s = ie v.A s
};

Mat2c isospin(const GroupPoint& s, const Mat2c& K);  // s K s^-1
double casimir_defect(const GroupPoint& s, const Mat2c& K);
WongRate wong_rhs(const WongState& state, const WongParams& p, const YmBackground& bg);

System wong_system(const WongParams& p, const YmBackground& bg);
State to_state(const WongState& s);
WongState wong_from(const State& s);

struct ReductionSample {
  double t = 0.0;
  double n = 0.0;
  double half_casimir = 0.0;  // (1/2) Tr I^2
  double divergence = 0.0;
  bool south_patch = false;
};

struct ReductionReport {
  std::vector<ReductionSample> samples;
  double n0 = 0.0;
  double n_drift = 0.0;
  bool inequality_holds = true;
  double max_divergence = 0.0;
};

double hedgehog_charge(const WongState& state, const Mat2c& K, bool* south = nullptr);
ReductionReport hedgehog_reduction_check(const Trajectory& traj, const WongParams& p,
                                         double monopole_dt, double r_min = 1e-4);

// Relativistic Wong particle of mass M in a static background (A_0 = 0).
// The isospin frame may carry an extra internal rotation s' += -i rate I s.
struct RelWongState {
  Vec4 z = Vec4::Zero();
  Vec4 u = Vec4(1.0, 0.0, 0.0, 0.0);
  GroupPoint s;
};

System rel_wong_system(double M, double e, const Mat2c& K, const YmBackground& bg,
                       double internal_rate = 0.0);
State to_state(const RelWongState& s);
RelWongState rel_wong_from(const State& s);

// ---------------------------------------------------------------- Kaluza-Klein particle

struct KkParams {
  double m = 1.0;
  double lambda = 1.0;
  double e = 1.0;
};

struct KkState {
  Vec4 x = Vec4::Zero();
  Vec4 xdot = Vec4(1.0, 0.0, 0.0, 0.0);
  GroupPoint s;
  Su2Vector omega = Su2Vector::Zero();  // s^-1 s' = -i omega.sigma/2
};

struct KkMomenta {
  double L = 0.0;
  Vec4 p = Vec4::Zero();  // p_a, lower index
  Vec3 I = Vec3::Zero();  // components along T(a)
};

// Uses the covariant derivative when a background is given.
KkMomenta kk_momenta(const KkState& state, const KkParams& p, const YmBackground* bg = nullptr);
double kk_identity_residual(const KkState& state, const KkParams& p);
double kk_mass_squared(double casimir, const KkParams& p);
KkState kk_free_step(const KkState& state, const KkParams& p, double dtau);
double kk_coupled_invariant(const KkState& state, const KkParams& p, const YmBackground& bg);
// KK data carried by a relativistic Wong state with isospin frame s and I = s K s^-1.
KkState kk_state_from_wong(const RelWongState& w, const KkParams& p, const Mat2c& K,
                           const YmBackground& bg);
double kk_effective_mass(const Mat2c& K, const KkParams& p);

}  // namespace fiberdyn
