#include <doctest.h>

#include <cmath>
#include <random>

#include "fiberdyn/bundle.hpp"
#include "fiberdyn/error.hpp"

using namespace fiberdyn;

// Reference values: tests/oracle/bundle_oracle.py

namespace {

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  return Vec3(g(rng), g(rng), g(rng)).normalized();
}

// Circulation of a potential around the cap of angular radius rho centred at c,
// trapezoid rule (spectrally accurate on a periodic smooth integrand).
double circulation(const std::function<Vec3(const Vec3&)>& A, const Vec3& c, double rho, int n = 4000) {
  GroupPoint frame = c[2] > -0.5 ? section_north(c) : section_south(c);
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    double phi = 2.0 * M_PI * k / n;
    Vec3 x = rotate_vector(frame, Vec3(std::sin(rho) * std::cos(phi), std::sin(rho) * std::sin(phi), std::cos(rho)));
    Vec3 dx = rotate_vector(frame, Vec3(-std::sin(rho) * std::sin(phi), std::sin(rho) * std::cos(phi), 0.0));
    total += A(x.normalized()).dot(dx);
  }
  return total * 2.0 * M_PI / n;
}

}  // namespace

TEST_CASE("section_north") {
  SUBCASE("north pole gives the identity") {
    GroupPoint s = section_north(Su2Vector(0, 0, 1));
    CHECK(s.w() == 1.0);
    CHECK(s.vec().norm() == 0.0);
  }
  SUBCASE("south pole exclusion zone") {
    try {
      section_north(Su2Vector(0, std::sqrt(1.0 - std::pow(-1.0 + 1e-9, 2)), -1.0 + 1e-9));
      FAIL("expected a singular-section error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SingularSection);
    }
  }
  SUBCASE("non-unit input") { CHECK_THROWS_AS(section_north(Su2Vector(0, 0, 2)), Error); }
  SUBCASE("round trip against the 2x2 formula") {
    Vec3 x(0.48, -0.6, 0.64);
    CHECK((hopf_project(section_north(x)) - Vec3(0.47999999999999998, -0.59999999999999998, 0.64000000000000024)).norm() < 1e-15);
    CHECK((hopf_project(section_south(x)) - x).norm() < 1e-15);
  }
  SUBCASE("x axis") { CHECK((hopf_project(section_north(Vec3(1, 0, 0))) - Vec3(1, 0, 0)).norm() < 1e-15); }
}

TEST_CASE("property: section round trip on both patches") {
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    Vec3 x = random_unit(rng);
    if (x[2] > -0.999) worst = std::max(worst, (hopf_project(section_north(x)) - x).norm());
    if (x[2] < 0.999) worst = std::max(worst, (hopf_project(section_south(x)) - x).norm());
    CHECK(section_north(x[2] > -0.999 ? x : Vec3(1, 0, 0)).norm_defect() < 1e-12);
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("property: section round trip on every cap of the four-cap cover") {
  PatchCover cover = tetrahedral_cover();
  std::mt19937_64 rng(4);
  double worst = 0.0;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    auto pts = cover.overlap_samples({i}, 10000, 100 + i);
    REQUIRE(pts.size() == 10000);
    for (const auto& x : pts) worst = std::max(worst, (hopf_project(cover.section(i, x)) - x).norm());
  }
  CHECK(worst < 1e-10);
  CHECK(cover.coverage(20000, 9) == 1.0);
}

TEST_CASE("local_potential") {
  SUBCASE("vanishes at the regular pole") {
    CHECK(local_potential(Patch::North, Su2Vector(0, 0, 1), 1.0).norm() == 0.0);
    CHECK(local_potential(Patch::South, Su2Vector(0, 0, -1), 1.0).norm() == 0.0);
  }
  SUBCASE("singular on its own string") {
    CHECK_THROWS_AS(local_potential(Patch::North, Su2Vector(0, 0, -1), 1.0), Error);
    CHECK_THROWS_AS(local_potential(Patch::South, Su2Vector(0, 0, 1), 1.0), Error);
  }
  SUBCASE("patches differ by a pure gradient near the equator") {
    // A_N - A_S = 2n dphi: its circulation around a small loop vanishes
    auto diff = [](const Vec3& x) {
      return local_potential(Patch::North, x, 1.0) - local_potential(Patch::South, x, 1.0);
    };
    CHECK(std::abs(circulation(diff, Vec3(1, 0, 0), 0.2)) < 1e-12);
    Vec3 x(1, 0, 0);
    Vec3 dphi(-x[1], x[0], 0.0);
    CHECK((diff(x) - 2.0 * dphi).norm() < 1e-15);
  }
  SUBCASE("cap circulation equals n times the solid angle") {
    auto A = [](const Vec3& x) { return local_potential(Patch::North, x, 1.0); };
    CHECK(std::abs(circulation(A, Vec3(0, 0, 1), 0.4) - 0.49598840264443383) < 1e-6);
    CHECK(std::abs(circulation(A, Vec3(0, 0, 1), 1.0) - 2.8883657975136399) < 1e-6);
    CHECK(std::abs(circulation(A, Vec3(0, 0, 1), 2.0) - 8.8979129962018551) < 1e-6);
    auto A3 = [](const Vec3& x) { return local_potential(Patch::South, x, 3.0); };
    // south patch, cap around the south pole traversed with outward normal -z
    CHECK(std::abs(circulation(A3, Vec3(0, 0, -1), 1.0) - 3.0 * 2.8883657975136399) < 1e-6);
  }
}

TEST_CASE("property: curl of the patch potential is the monopole form") {
  // the density is uniform, so any small cap sees n times its solid angle
  std::mt19937_64 rng(8);
  for (int k = 0; k < 50; ++k) {
    Vec3 c = random_unit(rng);
    if (c[2] < -0.5) c = -c;
    double rho = 0.3;
    auto A = [](const Vec3& x) { return local_potential(Patch::North, x, 1.5); };
    CHECK(std::abs(circulation(A, c, rho, 2000) - 1.5 * 2.0 * M_PI * (1.0 - std::cos(rho))) < 1e-10);
  }
}

TEST_CASE("transition_angle") {
  Vec3 x(std::cos(0.3), std::sin(0.3), 0.0);
  CHECK(transition_angle(Patch::North, Patch::North, x) == 0.0);
  CHECK(std::abs(transition_angle(Patch::North, Patch::South, x) - 3.7415926535897932) < 1e-12);
  CHECK(std::abs(transition_angle(Patch::North, Patch::South, Vec3(0.6, 0, 0.8)) - 3.1415926535897931) < 1e-12);
  SUBCASE("reproduces s_b^-1 s_a on the overlap") {
    std::mt19937_64 rng(12);
    for (int k = 0; k < 1000; ++k) {
      Vec3 y = random_unit(rng);
      if (std::abs(y[2]) > 0.99) continue;
      double th = transition_angle(Patch::North, Patch::South, y);
      GroupPoint lhs = section_south(y) * su2_exp(Su2Vector(0, 0, -th));
      GroupPoint rhs = section_north(y);
      double d = 0.0;
      for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(lhs.q()[i] - rhs.q()[i]));
      CHECK(d < 1e-10);
      CHECK(th > -2.0 * M_PI);
      CHECK(th <= 2.0 * M_PI);
    }
  }
  SUBCASE("outside the overlap") {
    PatchCover cover = tetrahedral_cover();
    CHECK_THROWS_AS(cover.transition_angle(0, 1, -cover.patches[0].center), Error);
  }
}

TEST_CASE("equatorial winding is 2n") {
  // oracle trace: 2.000000000000028 turns for n = 1
  for (int n = -2; n <= 3; ++n) {
    WindingResult w = equator_winding(double(n));
    CHECK(w.winding == 2 * n);
    CHECK(w.deviation < 1e-9);
  }
  CHECK(std::abs(equator_winding(1.0).turns - 2.000000000000028) < 1e-9);
}

TEST_CASE("cocycle_integers") {
  SUBCASE("two-patch cover has no triples") {
    PatchCover c = two_patch_cover();
    LineTransitions f(c, {{1.0, Vec3::Zero()}});
    CocycleReport r = cocycle_integers(c, f.fn(), 2.0);
    CHECK(r.triples.empty());
    CHECK(r.integers().empty());
    CHECK_FALSE(r.violation);
  }
  SUBCASE("four caps, n = 1, lambda_w = 2") {
    PatchCover c = tetrahedral_cover();
    LineTransitions f(c, {{1.0, Vec3::Zero()}});
    CocycleReport r = cocycle_integers(c, f.fn(), 2.0, 8, 1);
    CHECK(r.triples.size() == 4);
    CHECK(r.max_deviation < 1e-6);
    CHECK(r.max_u1_defect < 1e-9);
    CHECK_FALSE(r.violation);
    for (const auto& t : r.triples) CHECK(t.points.size() == 8);
  }
  SUBCASE("incommensurate charges are reported, not thrown") {
    PatchCover c = tetrahedral_cover();
    LineTransitions f(c, {{1.0, Vec3::Zero()}, {std::sqrt(2.0), Vec3(0.3, 0.1, 0.2)}});
    CocycleReport r = cocycle_integers(c, f.fn(), 2.0, 8, 1);
    CHECK(r.violation);
    CHECK(r.max_deviation > 1e-6);
  }
  SUBCASE("lambda_w = 0") {
    PatchCover c = tetrahedral_cover();
    LineTransitions f(c, {{1.0, Vec3::Zero()}});
    CHECK_THROWS_AS(cocycle_integers(c, f.fn(), 0.0), Error);
  }
}

TEST_CASE("property: transition line integrals are path independent") {
  PatchCover c = tetrahedral_cover();
  LineTransitions f(c, {{1.0, Vec3::Zero()}});
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b) {
      auto pts = c.overlap_samples({a, b}, 3, 40 + 4 * a + b);
      REQUIRE(pts.size() == 3);
      std::vector<Su2Vector> loop{pts[0], pts[1], pts[2], pts[0]};
      CHECK(std::abs(f.path_integral(a, b, loop)) < 1e-8);
    }
}

TEST_CASE("property: gauge covariance on the four-cap cover") {
  PatchCover c = tetrahedral_cover();
  std::vector<std::function<double(const Su2Vector&)>> chi{
      [](const Su2Vector& x) { return 0.3 * x[0] + 0.2 * x[1] * x[2]; },
      [](const Su2Vector& x) { return std::sin(x[2]); },
      [](const Su2Vector& x) { return -0.5 * x[0] * x[1]; },
      [](const Su2Vector&) { return 0.7; }};
  PatchCover g = with_gauge(c, chi);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      if (a == b) continue;
      for (const auto& x : c.overlap_samples({a, b}, 20, 7 + a * 4 + b)) {
        double d = g.transition_angle(a, b, x) - (c.transition_angle(a, b, x) - chi[a](x) + chi[b](x));
        CHECK(std::abs(std::remainder(d, 4.0 * M_PI)) < 1e-10);
      }
    }
  LineTransitions f0(c, {{1.0, Vec3::Zero()}});
  LineTransitions f1(g, {{1.0, Vec3::Zero()}});
  CocycleReport r0 = cocycle_integers(c, f0.fn(), 2.0, 8, 5);
  CocycleReport r1 = cocycle_integers(g, f1.fn(), 2.0, 8, 5);
  CHECK(r0.integers() == r1.integers());
  CHECK(r1.max_deviation < 1e-6);
}
