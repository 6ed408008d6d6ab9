#include "fiberdyn/fluxaction.hpp"

#include <cmath>
#include <numeric>

#include "fiberdyn/error.hpp"

namespace fiberdyn {

namespace {

Mat3 cross_matrix(const Vec3& x) {  // E(i, j) = eps_ijk x_k
  Mat3 e;
  e << 0.0, x[2], -x[1], -x[2], 0.0, x[0], x[1], -x[0], 0.0;
  return e;
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

void check_singular(const std::vector<Singularity>& sing, const Vec3& a, const Vec3& b,
                    const Vec3& c) {
  for (const auto& s : sing)
    if (point_triangle_distance(s.position, a, b, c) < s.radius)
      throw Error(ErrorKind::SingularSurface, "surface enters the exclusion ball of a singular point");
}

// One sheet cell from its four corners, ordered (sigma, t).
double cell(const Vec3& g00, const Vec3& g10, const Vec3& g01, const Vec3& g11) {
  Vec3 a = g00.normalized(), b = g10.normalized(), c = g01.normalized(), d = g11.normalized();
  Vec3 mid = (a + b + c + d).normalized();
  Vec3 ds = 0.5 * (b + d - a - c);
  Vec3 dt = 0.5 * (c + d - a - b);
  return mid.dot(ds.cross(dt));
}

double column_pair(const std::vector<Vec3>& left, const std::vector<Vec3>& right) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < left.size(); ++i)
    s += cell(left[i], left[i + 1], right[i], right[i + 1]);
  return s;
}

std::optional<std::pair<long long, long long>> rationalize(double r, double tol, long long qmax) {
  long long h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  double x = r;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(x);
    if (std::abs(a) > 1e15) break;
    long long ai = (long long)a;
    long long h = ai * h1 + h2;
    long long k = ai * k1 + k2;
    if (k > qmax) break;
    if (std::abs(double(k) * r - double(h)) <= tol) return std::make_pair(h, k);
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    double frac = x - a;
    if (frac < 1e-300) break;
    x = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace

TwoForm monopole_field_form(const std::vector<MonopoleSource>& sources, double r_min) {
  TwoForm f;
  f.id = "monopole";
  for (const auto& s : sources) f.singular.push_back({s.position, r_min});
  f.eval = [sources](const Vec3& x, const Vec3& u, const Vec3& v) {
    double r = 0.0;
    Vec3 uv = u.cross(v);
    for (const auto& s : sources) {
      Vec3 d = x - s.position;
      double len = d.norm();
      r -= s.n * d.dot(uv) / (len * len * len);
    }
    return r;
  };
  return f;
}

TwoForm monopole_field_form(double n, double r_min) {
  return monopole_field_form(std::vector<MonopoleSource>{{n, Vec3::Zero()}}, r_min);
}

Mat6 monopole_phase_matrix(const MonopoleParams& p, const Vec3& x) {
  double r = x.norm();
  Mat6 w = Mat6::Zero();
  w.topLeftCorner<3, 3>() = -p.n * cross_matrix(x) / (r * r * r);
  w.topRightCorner<3, 3>() = -p.m * Mat3::Identity();
  w.bottomLeftCorner<3, 3>() = p.m * Mat3::Identity();
  return w;
}

Mat6 monopole_poisson_tensor(const MonopoleParams& p, const Vec3& x) {
  double r = x.norm();
  Mat6 P = Mat6::Zero();
  P.topRightCorner<3, 3>() = Mat3::Identity() / p.m;
  P.bottomLeftCorner<3, 3>() = -Mat3::Identity() / p.m;
  P.bottomRightCorner<3, 3>() = -p.n * cross_matrix(x) / (p.m * p.m * r * r * r);
  return P;
}

PhaseTwoForm monopole_phase_form(const MonopoleParams& p) {
  PhaseTwoForm f;
  f.id = "monopole-phase";
  f.singular.push_back({Vec3::Zero(), p.r_min});
  f.eval = [p](const Vec6& z, const Vec6& u, const Vec6& v) {
    return u.dot(monopole_phase_matrix(p, z.head<3>()) * v);
  };
  return f;
}

TwoForm fixed_velocity_restriction(const PhaseTwoForm& form, const Vec3& v0) {
  TwoForm f;
  f.id = form.id + "|v";
  f.singular = form.singular;
  auto eval = form.eval;
  f.eval = [eval, v0](const Vec3& x, const Vec3& u, const Vec3& v) {
    Vec6 z, a, b;
    z << x, v0;
    a << u, Vec3::Zero();
    b << v, Vec3::Zero();
    return eval(z, a, b);
  };
  return f;
}

double flux(const TwoForm& form, const SurfaceMesh& mesh) {
  std::vector<double> part(mesh.triangles.size());
  for (std::size_t k = 0; k < mesh.triangles.size(); ++k) {
    const auto& t = mesh.triangles[k];
    const Vec3& a = mesh.vertices[t[0]];
    const Vec3& b = mesh.vertices[t[1]];
    const Vec3& c = mesh.vertices[t[2]];
    check_singular(form.singular, a, b, c);
    double v = 0.5 * form.eval((a + b + c) / 3.0, b - a, c - a);
    if (!std::isfinite(v)) throw Error(ErrorKind::SingularSurface, "non-finite form value on surface");
    part[k] = v;
  }
  return pairwise_sum(part.data(), part.size());
}

QuantizationResult quantization_check(const std::vector<double>& charges, double tol,
                                      long long max_denominator) {
  QuantizationResult r;
  double ref = 0.0;
  for (double n : charges)
    if (n != 0.0 && std::isfinite(n)) {
      ref = n;
      break;
    }
  for (double n : charges)
    if (!std::isfinite(n)) return r;
  if (ref == 0.0) {
    r.commensurable = true;  // no charge: no condition
    return r;
  }
  long long lcm = 1;
  for (double n : charges) {
    auto pq = rationalize(n / ref, tol, max_denominator);
    if (!pq) return r;
    r.ratios.push_back(*pq);
    lcm = std::lcm(lcm, pq->second);
  }
  long long g = 0;
  for (const auto& [p, q] : r.ratios) g = std::gcd(g, std::abs(p) * (lcm / q));
  r.commensurable = true;
  r.lambda_w = 2.0 * std::abs(ref) * double(g) / double(lcm);
  return r;
}

Vec3 sheet_point(const Vec3& x, const Vec3& xi0, double sigma, SheetConstruction c,
                 bool* perturbed) {
  Vec3 a = xi0.normalized();
  Vec3 b = x.normalized();
  double radius = (1.0 - sigma) * xi0.norm() + sigma * x.norm();
  if (perturbed) *perturbed = false;
  if (c == SheetConstruction::Radial) {
    if (1.0 + a.dot(b) < 1e-14) {
      Vec3 o = a.unitOrthogonal();
      b = (b + 1e-8 * o).normalized();
      if (perturbed) *perturbed = true;
    }
    return radius * ((1.0 - sigma) * a + sigma * b).normalized();
  }
  Vec3 perp = b - b.dot(a) * a;
  double pn = perp.norm();
  if (pn < 1e-12)
    throw Error(ErrorKind::SingularSurface, "great-circle sheet undefined on the reference axis");
  double phi = std::atan2(pn, b.dot(a));
  double big = 2.0 * M_PI - phi;
  Vec3 e = -perp / pn;
  return radius * (std::cos(sigma * big) * a + std::sin(sigma * big) * e);
}

PathSheet build_sheet(const std::vector<Vec3>& curve, const std::vector<double>& times,
                      int n_sigma, SheetConstruction c, const Vec3& xi0, double r_min) {
  if (curve.size() != times.size() || curve.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "sheet needs at least two matched curve samples");
  if (n_sigma < 2) throw Error(ErrorKind::InvalidArgument, "sheet needs n_sigma >= 2");
  PathSheet s;
  s.t = times;
  s.sigma.resize(n_sigma);
  for (int i = 0; i < n_sigma; ++i) s.sigma[i] = double(i) / (n_sigma - 1);
  s.gamma.assign(n_sigma, std::vector<Vec3>(curve.size()));
  for (std::size_t j = 0; j < curve.size(); ++j) {
    for (int i = 0; i < n_sigma; ++i) {
      bool pert = false;
      Vec3 g = i == 0 ? xi0 : i == n_sigma - 1 ? curve[j] : sheet_point(curve[j], xi0, s.sigma[i], c, &pert);
      if (pert && i == 1)
        s.warnings.push_back("antipodal sample at t = " + std::to_string(times[j]) + " perturbed by 1e-8");
      if (g.norm() < r_min) throw Error(ErrorKind::SingularSurface, "sheet enters r < r_min");
      s.gamma[i][j] = g;
    }
  }
  return s;
}

double interaction_action(const PathSheet& sheet, double eg) {
  double total = 0.0;
  const std::size_t nt = sheet.t.size();
  std::vector<Vec3> left(sheet.sigma.size()), right(sheet.sigma.size());
  for (std::size_t j = 0; j + 1 < nt; ++j) {
    for (std::size_t i = 0; i < sheet.sigma.size(); ++i) {
      left[i] = sheet.gamma[i][j];
      right[i] = sheet.gamma[i][j + 1];
    }
    total += column_pair(left, right);
  }
  return -eg / (4.0 * M_PI) * total;
}

double kinetic_action(const std::vector<Vec3>& curve, const std::vector<double>& times, double m) {
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < curve.size(); ++j)
    s += 0.5 * m * (curve[j + 1] - curve[j]).squaredNorm() / (times[j + 1] - times[j]);
  return s;
}

double path_action(const PathSheet& sheet, const MonopoleParams& p, double eg) {
  std::vector<Vec3> curve = sheet.gamma.back();
  return kinetic_action(curve, sheet.t, p.m) + interaction_action(sheet, eg);
}

TwoForm action_density_form(double eg, double r_min) {
  TwoForm f = monopole_field_form(eg / (4.0 * M_PI), r_min);
  f.id = "action-density";
  return f;
}

double weil_unit(double eg, const SurfaceMesh& sphere) {
  if (!sphere.closed) throw Error(ErrorKind::InvalidArgument, "weil unit needs a closed surface");
  return flux(action_density_form(eg), sphere);
}

EulerLagrangeReport euler_lagrange_gradient(const std::vector<Vec3>& curve,
                                            const std::vector<double>& times,
                                            const MonopoleParams& p, double eg, int n_sigma,
                                            SheetConstruction c, const Vec3& xi0, double h) {
  PathSheet sheet = build_sheet(curve, times, n_sigma, c, xi0, p.r_min);
  const std::size_t nt = curve.size();
  auto column = [&](const Vec3& x) {
    std::vector<Vec3> col(n_sigma);
    for (int i = 0; i < n_sigma; ++i)
      col[i] = i == 0 ? xi0 : i == n_sigma - 1 ? x : sheet_point(x, xi0, sheet.sigma[i], c);
    return col;
  };
  std::vector<std::vector<Vec3>> cols(nt);
  for (std::size_t j = 0; j < nt; ++j) {
    cols[j].resize(n_sigma);
    for (int i = 0; i < n_sigma; ++i) cols[j][i] = sheet.gamma[i][j];
  }
  const double k = -eg / (4.0 * M_PI);
  auto local = [&](std::size_t j, const Vec3& x) {
    std::vector<Vec3> cj = column(x);
    double kin = 0.5 * p.m * (x - curve[j - 1]).squaredNorm() / (times[j] - times[j - 1]) +
                 0.5 * p.m * (curve[j + 1] - x).squaredNorm() / (times[j + 1] - times[j]);
    return kin + k * (column_pair(cols[j - 1], cj) + column_pair(cj, cols[j + 1]));
  };
  EulerLagrangeReport rep;
  for (std::size_t j = 1; j + 1 < nt; ++j) {
    Vec3 g;
    for (int a = 0; a < 3; ++a) {
      Vec3 d = Vec3::Zero();
      d[a] = h;
      g[a] = (local(j, curve[j] + d) - local(j, curve[j] - d)) / (2.0 * h);
    }
    double dt = 0.5 * (times[j + 1] - times[j - 1]);
    rep.node_gradient.push_back(g.norm() / dt);
    rep.max_norm = std::max(rep.max_norm, rep.node_gradient.back());
  }
  return rep;
}

}  // namespace fiberdyn
