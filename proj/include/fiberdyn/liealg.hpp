#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace fiberdyn {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using cplx = std::complex<double>;

// Components along the Pauli basis: angles for exponentials, angular
// momentum for spin vectors, unit directions for base points of S^2.
using Su2Vector = Vec3;

// Unit quaternion (w, a, b, c) standing for w*1 - i(a s1 + b s2 + c s3).
class GroupPoint {
 public:
  GroupPoint() = default;
  GroupPoint(double w, double a, double b, double c);

  static GroupPoint identity() { return GroupPoint(); }
  // Nearest SU(2) element to a 2x2 complex matrix of that form.
  static GroupPoint from_matrix(const Mat2c& m);

  double w() const { return q_[0]; }
  double a() const { return q_[1]; }
  double b() const { return q_[2]; }
  double c() const { return q_[3]; }
  const std::array<double, 4>& q() const { return q_; }
  Vec3 vec() const { return Vec3(q_[1], q_[2], q_[3]); }

  GroupPoint operator*(const GroupPoint& o) const;
  GroupPoint inverse() const { return GroupPoint(q_[0], -q_[1], -q_[2], -q_[3]); }
  Mat2c matrix() const;
  double norm_defect() const;

 private:
  std::array<double, 4> q_{1.0, 0.0, 0.0, 0.0};
};

const Mat2c& pauli(int i);  // i in 1..3
Mat2c su2_matrix(const Su2Vector& v);  // v . sigma
Su2Vector su2_components(const Mat2c& x);  // inverse of su2_matrix on hermitian traceless input

// exp(-i v.sigma/2): right-handed rotation by |v| about v under rotate_vector.
GroupPoint su2_exp(const Su2Vector& v);
// Principal logarithm, |result| <= 2 pi.
Su2Vector su2_log(const GroupPoint& s);

Su2Vector rotate_vector(const GroupPoint& s, const Su2Vector& u);
Su2Vector hopf_project(const GroupPoint& s);

// Algebra element v stands for -i v.sigma/2; the bracket becomes the cross product.
inline Su2Vector su2_bracket(const Su2Vector& u, const Su2Vector& v) { return u.cross(v); }

const Mat4& minkowski();

// Matrix (sigma_ab)^c_d with (sigma_ab)_{cd} = -i(d_ac d_bd - d_ad d_bc), first index raised.
Mat4c lorentz_generator(int a, int b);

// Coefficient order: boosts (01, 02, 03), rotations (23, 31, 12).
using LorentzCoeffs = std::array<double, 6>;
const std::array<std::array<int, 2>, 6>& lorentz_pairs();

class LorentzFrame {
 public:
  LorentzFrame() : m_(Mat4::Identity()) {}
  explicit LorentzFrame(const Mat4& m, int since_projection = 0);

  const Mat4& matrix() const { return m_; }
  double operator()(int a, int b) const { return m_(a, b); }

  LorentzFrame operator*(const LorentzFrame& o) const;
  LorentzFrame inverse() const;
  LorentzFrame projected() const;

  // max |L^T eta L - eta|
  double orthogonality_defect() const;

  static constexpr int kProjectionInterval = 16;

 private:
  Mat4 m_;
  int since_projection_ = 0;
};

LorentzFrame lorentz_exp(const LorentzCoeffs& coeffs);

// p^a = m L^a_0 and S^ab = lambda (L^a_1 L^b_2 - L^a_2 L^b_1), upper indices.
Vec4 frame_momentum(const LorentzFrame& frame, double m);
Mat4 frame_spin(const LorentzFrame& frame, double lambda);

inline double minkowski_dot(const Vec4& x, const Vec4& y) {
  return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
}
Vec4 lower(const Vec4& x);
Mat4 lower_both(const Mat4& t);
double levi_civita4(int a, int b, int c, int d);  // eps_0123 = +1

}  // namespace fiberdyn
