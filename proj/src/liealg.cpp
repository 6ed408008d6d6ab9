#include "fiberdyn/liealg.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "fiberdyn/error.hpp"

namespace fiberdyn {

namespace {

const cplx I(0.0, 1.0);

std::array<double, 4> normalized(double w, double a, double b, double c) {
  double n = std::sqrt(w * w + a * a + b * b + c * c);
  if (!(n > 0.0) || !std::isfinite(n))
    throw Error(ErrorKind::InvalidArgument, "quaternion with zero or non-finite norm");
  return {w / n, a / n, b / n, c / n};
}

}  // namespace

GroupPoint::GroupPoint(double w, double a, double b, double c) : q_(normalized(w, a, b, c)) {}

GroupPoint GroupPoint::from_matrix(const Mat2c& m) {
  double w = 0.5 * (m(0, 0).real() + m(1, 1).real());
  double c = 0.5 * (m(1, 1).imag() - m(0, 0).imag());
  double a = -0.5 * (m(0, 1).imag() + m(1, 0).imag());
  double b = 0.5 * (m(1, 0).real() - m(0, 1).real());
  return GroupPoint(w, a, b, c);
}

GroupPoint GroupPoint::operator*(const GroupPoint& o) const {
  const auto& p = q_;
  const auto& r = o.q_;
  return GroupPoint(p[0] * r[0] - p[1] * r[1] - p[2] * r[2] - p[3] * r[3],
                    p[0] * r[1] + p[1] * r[0] + p[2] * r[3] - p[3] * r[2],
                    p[0] * r[2] - p[1] * r[3] + p[2] * r[0] + p[3] * r[1],
                    p[0] * r[3] + p[1] * r[2] - p[2] * r[1] + p[3] * r[0]);
}

Mat2c GroupPoint::matrix() const {
  Mat2c m;
  m << cplx(w(), -c()), cplx(-b(), -a()), cplx(b(), -a()), cplx(w(), c());
  return m;
}

double GroupPoint::norm_defect() const {
  return std::abs(q_[0] * q_[0] + q_[1] * q_[1] + q_[2] * q_[2] + q_[3] * q_[3] - 1.0);
}

const Mat2c& pauli(int i) {
  static const std::array<Mat2c, 3> s = [] {
    std::array<Mat2c, 3> r;
    r[0] << 0, 1, 1, 0;
    r[1] << 0, -I, I, 0;
    r[2] << 1, 0, 0, -1;
    return r;
  }();
  if (i < 1 || i > 3) throw Error(ErrorKind::InvalidArgument, "pauli index out of range");
  return s[i - 1];
}

Mat2c su2_matrix(const Su2Vector& v) {
  return v[0] * pauli(1) + v[1] * pauli(2) + v[2] * pauli(3);
}

Su2Vector su2_components(const Mat2c& x) {
  Su2Vector v;
  for (int i = 0; i < 3; ++i) v[i] = 0.5 * (x * pauli(i + 1)).trace().real();
  return v;
}

GroupPoint su2_exp(const Su2Vector& v) {
  if (!v.allFinite()) throw Error(ErrorKind::InvalidArgument, "su2_exp of non-finite vector");
  double theta = v.norm();
  double k;  // sin(theta/2)/theta
  if (theta < 1e-4) {
    double t2 = theta * theta;
    k = 0.5 - t2 / 48.0 + t2 * t2 / 3840.0;
  } else {
    k = std::sin(0.5 * theta) / theta;
  }
  return GroupPoint(std::cos(0.5 * theta), k * v[0], k * v[1], k * v[2]);
}

Su2Vector su2_log(const GroupPoint& s) {
  Vec3 q = s.vec();
  double qn = q.norm();
  if (qn < 1e-300) {
    if (s.w() > 0.0) return Su2Vector::Zero();
    return Su2Vector(2.0 * M_PI, 0.0, 0.0);
  }
  double theta = 2.0 * std::atan2(qn, s.w());
  return (theta / qn) * q;
}

Su2Vector rotate_vector(const GroupPoint& s, const Su2Vector& u) {
  Vec3 q = s.vec();
  Vec3 t = 2.0 * q.cross(u);
  return u + s.w() * t + q.cross(t);
}

Su2Vector hopf_project(const GroupPoint& s) {
  return rotate_vector(s, Su2Vector(0.0, 0.0, 1.0));
}

const Mat4& minkowski() {
  static const Mat4 eta = Vec4(-1.0, 1.0, 1.0, 1.0).asDiagonal();
  return eta;
}

Mat4c lorentz_generator(int a, int b) {
  if (a < 0 || a > 3 || b < 0 || b > 3)
    throw Error(ErrorKind::InvalidArgument, "lorentz index out of range");
  Mat4c low = Mat4c::Zero();
  for (int c = 0; c < 4; ++c)
    for (int d = 0; d < 4; ++d)
      low(c, d) = -I * (double((a == c) && (b == d)) - double((a == d) && (b == c)));
  return minkowski().cast<cplx>() * low;
}

const std::array<std::array<int, 2>, 6>& lorentz_pairs() {
  static const std::array<std::array<int, 2>, 6> p{{{0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 1}, {1, 2}}};
  return p;
}

LorentzFrame::LorentzFrame(const Mat4& m, int since_projection)
    : m_(m), since_projection_(since_projection) {}

LorentzFrame LorentzFrame::operator*(const LorentzFrame& o) const {
  LorentzFrame r(m_ * o.m_, std::max(since_projection_, o.since_projection_) + 1);
  if (r.since_projection_ >= kProjectionInterval) return r.projected();
  return r;
}

LorentzFrame LorentzFrame::inverse() const {
  const Mat4& eta = minkowski();
  return LorentzFrame(eta * m_.transpose() * eta, since_projection_);
}

LorentzFrame LorentzFrame::projected() const {
  const Mat4& eta = minkowski();
  // Polar factor: M G^{-1/2} with G = eta M^T eta M, Newton-Schulz for the root.
  Mat4 g = eta * m_.transpose() * eta * m_;
  Mat4 x = Mat4::Identity();
  for (int it = 0; it < 6; ++it) {
    Mat4 nx = 0.5 * x * (3.0 * Mat4::Identity() - g * x * x);
    double diff = (nx - x).cwiseAbs().maxCoeff();
    x = nx;
    if (diff < 1e-17) break;
  }
  return LorentzFrame(m_ * x, 0);
}

double LorentzFrame::orthogonality_defect() const {
  const Mat4& eta = minkowski();
  return (m_.transpose() * eta * m_ - eta).cwiseAbs().maxCoeff();
}

LorentzFrame lorentz_exp(const LorentzCoeffs& coeffs) {
  Mat4 x = Mat4::Zero();
  for (int k = 0; k < 6; ++k) {
    if (!std::isfinite(coeffs[k]))
      throw Error(ErrorKind::InvalidArgument, "lorentz_exp of non-finite coefficient");
    const auto& p = lorentz_pairs()[k];
    x += coeffs[k] * (I * lorentz_generator(p[0], p[1])).real();
  }
  Mat4 m = x.exp();
  return LorentzFrame(m, LorentzFrame::kProjectionInterval).projected();
}

Vec4 frame_momentum(const LorentzFrame& frame, double m) {
  return m * frame.matrix().col(0);
}

Mat4 frame_spin(const LorentzFrame& frame, double lambda) {
  const Mat4& l = frame.matrix();
  Vec4 e1 = l.col(1);
  Vec4 e2 = l.col(2);
  return lambda * (e1 * e2.transpose() - e2 * e1.transpose());
}

Vec4 lower(const Vec4& x) { return minkowski() * x; }

Mat4 lower_both(const Mat4& t) { return minkowski() * t * minkowski(); }

double levi_civita4(int a, int b, int c, int d) {
  int p[4] = {a, b, c, d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] == p[j]) return 0.0;
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

}  // namespace fiberdyn
