#include "fiberdyn/canonical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include <boost/multiprecision/float128.hpp>

#include "fiberdyn/error.hpp"

namespace fiberdyn {

namespace {

using Quad = boost::multiprecision::float128;

template <class R>
using V3 = std::array<R, 3>;
template <class R>
using Q4 = std::array<R, 4>;
template <class R>
using M3 = std::array<std::array<R, 3>, 3>;

double eps3(int a, int b, int c) { return 0.5 * (a - b) * (b - c) * (c - a); }

template <class R>
Q4<R> mul(const Q4<R>& p, const Q4<R>& r) {
  return {p[0] * r[0] - p[1] * r[1] - p[2] * r[2] - p[3] * r[3],
          p[0] * r[1] + p[1] * r[0] + p[2] * r[3] - p[3] * r[2],
          p[0] * r[2] - p[1] * r[3] + p[2] * r[0] + p[3] * r[1],
          p[0] * r[3] + p[1] * r[2] - p[2] * r[1] + p[3] * r[0]};
}

// s(xi) = exp(i xi.sigma/2) = (cos |xi|/2, -sin(|xi|/2) xi/|xi|)
template <class R>
Q4<R> point(const V3<R>& xi) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  R th = sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
  R k = th == 0 ? R(0.5) : R(sin(th / 2) / th);
  return {cos(th / 2), -k * xi[0], -k * xi[1], -k * xi[2]};
}

template <class R>
V3<R> log(const Q4<R>& q) {
  using std::atan2;
  using std::sqrt;
  R qn = sqrt(q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  if (qn == 0) return {R(0), R(0), R(0)};
  R k = -2 * atan2(qn, q[0]) / qn;
  return {k * q[1], k * q[2], k * q[3]};
}

template <class R>
V3<R> unit(int a, R scale) {
  V3<R> e{R(0), R(0), R(0)};
  e[a] = scale;
  return e;
}

template <class R>
M3<R> nmat(const V3<R>& xi, R h) {
  Q4<R> s = point(xi);
  M3<R> n;
  for (int a = 0; a < 3; ++a) {
    // exp(i T(a) eps) is the chart point eps e_a
    V3<R> fp = log(mul(point(unit<R>(a, h)), s));
    V3<R> fm = log(mul(point(unit<R>(a, -h)), s));
    for (int b = 0; b < 3; ++b) n[b][a] = (fp[b] - fm[b]) / (2 * h);
  }
  return n;
}

template <class R>
V3<R> tfun(const V3<R>& xi, const V3<R>& pi, R h) {
  M3<R> n = nmat(xi, h);
  V3<R> t{R(0), R(0), R(0)};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) t[a] -= pi[b] * n[b][a];
  return t;
}

template <class R>
V3<R> hopf(const Q4<R>& q) {
  // rotate e3 by q: u + w t + q x t with t = 2 q x e3
  V3<R> t{2 * q[2], -2 * q[1], R(0)};
  return {q[0] * t[0] + (q[2] * t[2] - q[3] * t[1]),
          q[0] * t[1] + (q[3] * t[0] - q[1] * t[2]),
          1 + q[0] * t[2] + (q[1] * t[1] - q[2] * t[0])};
}

// Everything the identities need at one phase point.
struct Sample {
  Q4<Quad> q;
  V3<Quad> t;
  V3<Quad> xh;
};

Sample evaluate(const V3<Quad>& xi, const V3<Quad>& pi, Quad h) {
  Sample s;
  s.q = point(xi);
  s.t = tfun(xi, pi, h);
  s.xh = hopf(s.q);
  return s;
}

// Samples at the point and at +-h along each of the six coordinates.
struct Stencil {
  Quad h;
  Sample c;
  std::array<Sample, 6> plus, minus;
  V3<Quad> xi, pi;

  Stencil(const PhasePoint& p, double hd) : h(hd) {
    for (int i = 0; i < 3; ++i) {
      xi[i] = p.xi[i];
      pi[i] = p.pi[i];
    }
    c = evaluate(xi, pi, h);
    for (int k = 0; k < 6; ++k) {
      V3<Quad> x = xi, y = pi;
      (k < 3 ? x[k] : y[k - 3]) += h;
      plus[k] = evaluate(x, y, h);
      x = xi;
      y = pi;
      (k < 3 ? x[k] : y[k - 3]) -= h;
      minus[k] = evaluate(x, y, h);
    }
  }

  template <class F>
  std::array<Quad, 6> grad(F f) const {
    std::array<Quad, 6> g;
    for (int k = 0; k < 6; ++k) g[k] = (f(plus[k]) - f(minus[k])) / (2 * h);
    return g;
  }
};

Quad bracket(const std::array<Quad, 6>& f, const std::array<Quad, 6>& g) {
  Quad r = 0;
  for (int k = 0; k < 3; ++k) r += f[k] * g[k + 3] - f[k + 3] * g[k];
  return r;
}

double qabs(const Quad& x) { return std::abs(static_cast<double>(x)); }

void check_chart(const Vec3& xi) {
  if (!xi.allFinite()) throw Error(ErrorKind::InvalidArgument, "non-finite chart coordinate");
  if (xi.norm() >= M_PI) throw Error(ErrorKind::ChartBoundary, "|xi| >= pi is outside the chart");
}

}  // namespace

GroupPoint chart_point(const Vec3& xi) { return su2_exp(-xi); }

Vec3 chart_log(const GroupPoint& s) { return -su2_log(s); }

Mat3 n_matrix(const Chart& chart, const Vec3& xi) {
  check_chart(xi);
  M3<Quad> n = nmat(V3<Quad>{xi[0], xi[1], xi[2]}, Quad(chart.h));
  Mat3 out;
  for (int b = 0; b < 3; ++b)
    for (int a = 0; a < 3; ++a) out(b, a) = static_cast<double>(n[b][a]);
  Eigen::JacobiSVD<Mat3> svd(out);
  auto sv = svd.singularValues();
  if (!(sv[2] > 0.0) || sv[0] / sv[2] > 1e8)
    throw Error(ErrorKind::ChartBoundary, "N matrix is near-singular");
  return out;
}

Vec3 t_functions(const Chart& chart, const PhasePoint& p) {
  Mat3 n = n_matrix(chart, p.xi);
  return -(n.transpose() * p.pi);
}

double poisson_bracket(const PhaseFunction& F, const PhaseFunction& G, const PhasePoint& p,
                       double h) {
  std::array<double, 6> gf, gg;
  for (int k = 0; k < 6; ++k) {
    Vec3 xp = p.xi, pp = p.pi, xm = p.xi, pm = p.pi;
    if (k < 3) {
      xp[k] += h;
      xm[k] -= h;
    } else {
      pp[k - 3] += h;
      pm[k - 3] -= h;
    }
    gf[k] = (F(xp, pp) - F(xm, pm)) / (2.0 * h);
    gg[k] = (G(xp, pp) - G(xm, pm)) / (2.0 * h);
    if (!std::isfinite(gf[k]) || !std::isfinite(gg[k]))
      throw Error(ErrorKind::InvalidFunction, "non-finite derivative in Poisson bracket");
  }
  double r = 0.0;
  for (int k = 0; k < 3; ++k) r += gf[k] * gg[k + 3] - gf[k + 3] * gg[k];
  return r;
}

double BracketResiduals::max() const { return std::max({n_identity, t_s, t_t}); }

BracketResiduals bracket_residuals(const Chart& chart, const PhasePoint& p) {
  check_chart(p.xi);
  Stencil st(p, chart.h);
  BracketResiduals r;
  M3<Quad> n = nmat(st.xi, st.h);

  std::array<std::array<Quad, 6>, 4> gq;
  std::array<std::array<Quad, 6>, 3> gt;
  for (int k = 0; k < 4; ++k) gq[k] = st.grad([k](const Sample& s) { return s.q[k]; });
  for (int a = 0; a < 3; ++a) gt[a] = st.grad([a](const Sample& s) { return s.t[a]; });

  for (int a = 0; a < 3; ++a) {
    // i T(a) s is the quaternion (0, -e_a/2) times s
    Q4<Quad> gen{Quad(0), Quad(0), Quad(0), Quad(0)};
    gen[a + 1] = Quad(-0.5);
    Q4<Quad> lhs = mul(gen, st.c.q);
    for (int k = 0; k < 4; ++k) {
      Quad rhs = 0;
      for (int b = 0; b < 3; ++b) rhs += gq[k][b] * n[b][a];
      r.n_identity = std::max(r.n_identity, qabs(lhs[k] - rhs));
      r.t_s = std::max(r.t_s, qabs(bracket(gt[a], gq[k]) - lhs[k]));
    }
    for (int b = 0; b < 3; ++b) {
      Quad expect = 0;
      for (int c = 0; c < 3; ++c) expect += eps3(a, b, c) * st.c.t[c];
      r.t_t = std::max(r.t_t, qabs(bracket(gt[a], gt[b]) - expect));
    }
  }
  return r;
}

ConstraintReport constraint_checks(const Chart& chart, const PhasePoint& p, double n,
                                   double lambda) {
  check_chart(p.xi);
  Stencil st(p, chart.h);
  const Quad nq(n), lq(lambda);
  auto phi = [nq](const Sample& s) {
    return s.xh[0] * s.t[0] + s.xh[1] * s.t[1] + s.xh[2] * s.t[2] - nq;
  };
  ConstraintReport rep;
  rep.phi = static_cast<double>(phi(st.c));
  auto gphi = st.grad(phi);
  std::array<std::array<Quad, 6>, 3> gt, gphis;
  for (int a = 0; a < 3; ++a) {
    gt[a] = st.grad([a](const Sample& s) { return s.t[a]; });
    gphis[a] = st.grad([a, lq](const Sample& s) { return s.t[a] - lq * s.xh[a]; });
  }
  for (int i = 0; i < 3; ++i) {
    rep.phi_t = std::max(rep.phi_t, qabs(bracket(gphi, gt[i])));
    for (int j = 0; j < 3; ++j) {
      Quad expect = 0;
      for (int k = 0; k < 3; ++k) {
        Quad phik = st.c.t[k] - lq * st.c.xh[k];
        expect += eps3(i, j, k) * (phik - lq * st.c.xh[k]);
      }
      rep.spin_algebra = std::max(rep.spin_algebra, qabs(bracket(gphis[i], gphis[j]) - expect));
    }
  }
  double twice = 2.0 * n;
  rep.dirac_integer = std::abs(twice - std::round(twice)) < 1e-12;
  return rep;
}

BracketSuite bracket_suite(const Chart& chart, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BracketSuite out;
  out.samples = samples;
  out.h = chart.h;
  Chart half = chart;
  half.h = 0.5 * chart.h;
  for (int i = 0; i < samples; ++i) {
    PhasePoint p;
    do {
      p.xi = 2.5 * Vec3(u(rng), u(rng), u(rng));
    } while (p.xi.norm() >= 2.5);
    p.pi = Vec3(u(rng), u(rng), u(rng));
    double n = 0.5 * std::round(4.0 * u(rng));
    BracketResiduals a = bracket_residuals(chart, p);
    BracketResiduals b = bracket_residuals(half, p);
    out.at_h.n_identity = std::max(out.at_h.n_identity, a.n_identity);
    out.at_h.t_s = std::max(out.at_h.t_s, a.t_s);
    out.at_h.t_t = std::max(out.at_h.t_t, a.t_t);
    out.at_half_h.n_identity = std::max(out.at_half_h.n_identity, b.n_identity);
    out.at_half_h.t_s = std::max(out.at_half_h.t_s, b.t_s);
    out.at_half_h.t_t = std::max(out.at_half_h.t_t, b.t_t);
    ConstraintReport ca = constraint_checks(chart, p, n);
    ConstraintReport cb = constraint_checks(half, p, n);
    out.phi_t = std::max(out.phi_t, ca.phi_t);
    out.phi_t_half = std::max(out.phi_t_half, cb.phi_t);
    out.spin_algebra = std::max(out.spin_algebra, ca.spin_algebra);
    out.spin_algebra_half = std::max(out.spin_algebra_half, cb.spin_algebra);
  }
  std::array<double, 3> ratios{out.at_h.n_identity / out.at_half_h.n_identity,
                               out.at_h.t_s / out.at_half_h.t_s,
                               out.at_h.t_t / out.at_half_h.t_t};
  out.min_tightening = *std::min_element(ratios.begin(), ratios.end());
  out.max_tightening = *std::max_element(ratios.begin(), ratios.end());
  return out;
}

}  // namespace fiberdyn
