#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "fiberdyn/liealg.hpp"

namespace fiberdyn {

// Element of the complexified Grassmann algebra on k <= 6 generators.
// Coefficient index is the bitmask of the monomial, generator i <-> bit i-1,
// monomials written in increasing generator order.
class GrassmannElement {
 public:
  static constexpr int kMaxGenerators = 6;

  explicit GrassmannElement(int k = 3);
  static GrassmannElement scalar(int k, cplx value);
  static GrassmannElement generator(int k, int i);  // theta_i, i in 1..k

  int generators() const { return k_; }
  std::size_t size() const { return c_.size(); }
  cplx operator[](std::uint32_t mask) const { return c_[mask]; }
  cplx& operator[](std::uint32_t mask) { return c_[mask]; }

  bool is_even() const;
  bool is_odd() const;
  double max_abs() const;

  GrassmannElement operator+(const GrassmannElement& o) const;
  GrassmannElement operator-(const GrassmannElement& o) const;
  GrassmannElement operator*(const GrassmannElement& o) const;
  GrassmannElement operator*(cplx s) const;
  GrassmannElement& operator+=(const GrassmannElement& o);

 private:
  int k_;
  std::vector<cplx> c_;
};

inline GrassmannElement operator*(cplx s, const GrassmannElement& x) { return x * s; }

// Sign of theta_A theta_B reordered to increasing order, 0 when they share a generator.
int monomial_sign(std::uint32_t a, std::uint32_t b);

GrassmannElement product(const GrassmannElement& x, const GrassmannElement& y);

using OddTriple = std::array<GrassmannElement, 3>;

// S_a = -(i/2) eps_abc f_b f_c
std::array<GrassmannElement, 3> spin_bilinear(const OddTriple& f);

// Max coefficient of dS_a/dt (product rule with f'_a = -mu eps_abc f_b B_c)
// minus mu eps_abc B_b S_c.
double precession_consistency(const Vec3& B, double mu, const OddTriple& f);

// Max coefficient of eps_abc xhat_a f_b f_c - 4 m r^2 eps_abc xhat_a xi_b xi_c
// with xi_a = (f_a - xhat_a (xhat.f)) / (2 r sqrt m).
double polar_identity_check(const Vec3& xhat, const OddTriple& f, double r, double m);

}  // namespace fiberdyn
