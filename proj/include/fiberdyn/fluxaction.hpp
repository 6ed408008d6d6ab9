#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fiberdyn/bundle.hpp"
#include "fiberdyn/dynamics.hpp"
#include "fiberdyn/mesh.hpp"

namespace fiberdyn {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

// Singular point of a form with its exclusion radius.
struct Singularity {
  Vec3 position = Vec3::Zero();
  double radius = 1e-4;
};

struct TwoForm {
  std::string id;
  std::function<double(const Vec3& p, const Vec3& u, const Vec3& v)> eval;
  std::vector<Singularity> singular;
};

struct PhaseTwoForm {
  std::string id;
  std::function<double(const Vec6& p, const Vec6& u, const Vec6& v)> eval;
  std::vector<Singularity> singular;  // in x-space
};

// F(u, v) = -sum_k n_k (x - p_k).(u x v) / |x - p_k|^3
TwoForm monopole_field_form(const std::vector<MonopoleSource>& sources, double r_min = 1e-4);
TwoForm monopole_field_form(double n, double r_min = 1e-4);

// Inverse of the charge-monopole Poisson tensor, coordinates (x, v):
// w(U, V) = F(U_x, V_x) - m U_x.V_v + m U_v.V_x
PhaseTwoForm monopole_phase_form(const MonopoleParams& p);
Mat6 monopole_phase_matrix(const MonopoleParams& p, const Vec3& x);
Mat6 monopole_poisson_tensor(const MonopoleParams& p, const Vec3& x);
// Pullback to x-space along x -> (x, v0).
TwoForm fixed_velocity_restriction(const PhaseTwoForm& form, const Vec3& v0);

// Midpoint rule over oriented triangles, pairwise summation.
double flux(const TwoForm& form, const SurfaceMesh& mesh);

struct QuantizationResult {
  bool commensurable = false;
  std::optional<double> lambda_w;
  std::vector<std::pair<long long, long long>> ratios;  // n_i / n_ref as p/q
};
QuantizationResult quantization_check(const std::vector<double>& charges, double tol = 1e-9,
                                      long long max_denominator = 1000000);

// ---------------------------------------------------------------- path space

enum class SheetConstruction { Radial, GeodesicCap };

// gamma[i][j] at (sigma_i, t_j); gamma[0][j] = xi0, gamma[last][j] = x(t_j).
struct PathSheet {
  std::vector<double> sigma;
  std::vector<double> t;
  std::vector<std::vector<Vec3>> gamma;
  std::vector<std::string> warnings;
};

Vec3 sheet_point(const Vec3& x, const Vec3& xi0, double sigma, SheetConstruction c,
                 bool* perturbed = nullptr);
PathSheet build_sheet(const std::vector<Vec3>& curve, const std::vector<double>& times,
                      int n_sigma, SheetConstruction c, const Vec3& xi0 = Vec3::UnitX(),
                      double r_min = 1e-4);

// -(eg/4pi) gammahat.(d_sigma gammahat x d_t gammahat), one central-difference cell at a time.
double interaction_action(const PathSheet& sheet, double eg);
double kinetic_action(const std::vector<Vec3>& curve, const std::vector<double>& times, double m);
double path_action(const PathSheet& sheet, const MonopoleParams& p, double eg);

// Closed-surface value of the interaction density: the flux of
// -(eg/4pi) x.(u x v)/|x|^3 over the mesh.
TwoForm action_density_form(double eg, double r_min = 1e-4);
double weil_unit(double eg, const SurfaceMesh& sphere);

struct EulerLagrangeReport {
  std::vector<double> node_gradient;  // |dS/dx_j| / dt for interior nodes
  double max_norm = 0.0;
};
// Varies each interior boundary node, regenerating its sheet column.
EulerLagrangeReport euler_lagrange_gradient(const std::vector<Vec3>& curve,
                                            const std::vector<double>& times,
                                            const MonopoleParams& p, double eg, int n_sigma,
                                            SheetConstruction c = SheetConstruction::Radial,
                                            const Vec3& xi0 = Vec3::UnitX(), double h = 1e-6);

}  // namespace fiberdyn
