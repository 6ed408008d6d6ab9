#include "fiberdyn/grassmann.hpp"

#include <bit>
#include <cmath>

#include "fiberdyn/error.hpp"

namespace fiberdyn {

namespace {

double eps3(int a, int b, int c) { return 0.5 * (a - b) * (b - c) * (c - a); }

void same_k(const GrassmannElement& x, const GrassmannElement& y) {
  if (x.generators() != y.generators())
    throw Error(ErrorKind::Mismatch, "Grassmann elements over different generator counts");
}

void require_odd(const OddTriple& f) {
  for (const auto& x : f)
    if (!x.is_odd()) throw Error(ErrorKind::Grade, "expected odd-graded element");
}

}  // namespace

GrassmannElement::GrassmannElement(int k) : k_(k) {
  if (k < 0 || k > kMaxGenerators)
    throw Error(ErrorKind::InvalidArgument, "Grassmann generator count must be in 0..6");
  c_.assign(std::size_t(1) << k, cplx(0.0));
}

GrassmannElement GrassmannElement::scalar(int k, cplx value) {
  GrassmannElement x(k);
  x.c_[0] = value;
  return x;
}

GrassmannElement GrassmannElement::generator(int k, int i) {
  if (i < 1 || i > k) throw Error(ErrorKind::InvalidArgument, "generator index out of range");
  GrassmannElement x(k);
  x.c_[std::size_t(1) << (i - 1)] = 1.0;
  return x;
}

bool GrassmannElement::is_even() const {
  for (std::uint32_t m = 0; m < c_.size(); ++m)
    if ((std::popcount(m) & 1) && c_[m] != cplx(0.0)) return false;
  return true;
}

bool GrassmannElement::is_odd() const {
  for (std::uint32_t m = 0; m < c_.size(); ++m)
    if (!(std::popcount(m) & 1) && c_[m] != cplx(0.0)) return false;
  return true;
}

double GrassmannElement::max_abs() const {
  double r = 0.0;
  for (const auto& v : c_) r = std::max(r, std::abs(v));
  return r;
}

GrassmannElement GrassmannElement::operator+(const GrassmannElement& o) const {
  GrassmannElement r = *this;
  return r += o;
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& o) {
  same_k(*this, o);
  for (std::size_t m = 0; m < c_.size(); ++m) c_[m] += o.c_[m];
  return *this;
}

GrassmannElement GrassmannElement::operator-(const GrassmannElement& o) const {
  return *this + o * cplx(-1.0);
}

GrassmannElement GrassmannElement::operator*(cplx s) const {
  GrassmannElement r = *this;
  for (auto& v : r.c_) v *= s;
  return r;
}

GrassmannElement GrassmannElement::operator*(const GrassmannElement& o) const {
  same_k(*this, o);
  GrassmannElement r(k_);
  for (std::uint32_t a = 0; a < c_.size(); ++a) {
    if (c_[a] == cplx(0.0)) continue;
    for (std::uint32_t b = 0; b < c_.size(); ++b) {
      if (o.c_[b] == cplx(0.0)) continue;
      int s = monomial_sign(a, b);
      if (s != 0) r.c_[a | b] += double(s) * c_[a] * o.c_[b];
    }
  }
  return r;
}

int monomial_sign(std::uint32_t a, std::uint32_t b) {
  if (a & b) return 0;
  // each generator of b passes the generators of a with a larger index
  int swaps = 0;
  for (std::uint32_t rest = b; rest; rest &= rest - 1) {
    std::uint32_t bit = rest & (~rest + 1);
    swaps += std::popcount(a & ~((bit << 1) - 1));
  }
  return (swaps & 1) ? -1 : 1;
}

GrassmannElement product(const GrassmannElement& x, const GrassmannElement& y) { return x * y; }

std::array<GrassmannElement, 3> spin_bilinear(const OddTriple& f) {
  require_odd(f);
  const int k = f[0].generators();
  const cplx c(0.0, -0.5);
  std::array<GrassmannElement, 3> s{GrassmannElement(k), GrassmannElement(k), GrassmannElement(k)};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int d = 0; d < 3; ++d) {
        double e = eps3(a, b, d);
        if (e != 0.0) s[a] += (c * e) * (f[b] * f[d]);
      }
  return s;
}

double precession_consistency(const Vec3& B, double mu, const OddTriple& f) {
  require_odd(f);
  const int k = f[0].generators();
  OddTriple fdot{GrassmannElement(k), GrassmannElement(k), GrassmannElement(k)};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        double e = eps3(a, b, c);
        if (e != 0.0) fdot[a] += f[b] * cplx(-mu * e * B[c]);
      }
  auto S = spin_bilinear(f);
  const cplx half(0.0, -0.5);
  double res = 0.0;
  for (int a = 0; a < 3; ++a) {
    GrassmannElement sdot(k), rhs(k);
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        double e = eps3(a, b, c);
        if (e == 0.0) continue;
        sdot += (half * e) * (fdot[b] * f[c] + f[b] * fdot[c]);
        rhs += S[c] * cplx(mu * e * B[b]);
      }
    res = std::max(res, (sdot - rhs).max_abs());
  }
  return res;
}

double polar_identity_check(const Vec3& xhat, const OddTriple& f, double r, double m) {
  if (!(r > 0.0)) throw Error(ErrorKind::InvalidArgument, "polar identity needs r > 0");
  if (!(m > 0.0)) throw Error(ErrorKind::InvalidArgument, "polar identity needs m > 0");
  require_odd(f);
  const int k = f[0].generators();
  GrassmannElement radial(k);
  for (int a = 0; a < 3; ++a) radial += f[a] * cplx(xhat[a]);
  const double scale = 1.0 / (2.0 * r * std::sqrt(m));
  OddTriple xi{GrassmannElement(k), GrassmannElement(k), GrassmannElement(k)};
  for (int a = 0; a < 3; ++a) xi[a] = (f[a] - radial * cplx(xhat[a])) * cplx(scale);
  GrassmannElement lhs(k), rhs(k);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        double e = eps3(a, b, c);
        if (e == 0.0) continue;
        lhs += (f[b] * f[c]) * cplx(e * xhat[a]);
        rhs += (xi[b] * xi[c]) * cplx(4.0 * m * r * r * e * xhat[a]);
      }
  return (lhs - rhs).max_abs();
}

}  // namespace fiberdyn
