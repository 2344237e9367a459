#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "adscmc/boundary.hpp"
#include "adscmc/exact_surfaces.hpp"

using namespace ads;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::mt19937 rng(971263);

Vec h2_point(double rho, double phi) {
  Vec dir(2);
  dir << std::cos(phi), std::sin(phi);
  return hyperboloid_point(rho, dir);
}

Vec h1_point(double a) {
  Vec x(2);
  x << std::sinh(a), std::cosh(a);
  return x;
}

}  // namespace

TEST_CASE("equidistant graph closed form") {
  CHECK(equidistant_graph(0.0, Side::Past, h2_point(1.3, 0.4)) == 0.0);
  CHECK(equidistant_graph(kPi / 4, Side::Past, hyperboloid_origin(2)) ==
        doctest::Approx(-kPi / 4).epsilon(1e-14));
  // constant last ambient coordinate: cosh(rho) sin(-t) = sin(theta)
  const double theta = kPi / 4;
  for (double rho : {0.0, 0.7, 2.0, 3.5}) {
    const double t = equidistant_graph(theta, Side::Past, h2_point(rho, 1.1));
    CHECK(std::cosh(rho) * std::sin(-t) ==
          doctest::Approx(std::sin(theta)).epsilon(1e-12));
  }
  CHECK(std::abs(equidistant_graph(theta, Side::Future, h2_point(9.0, 0.0))) <
        2e-4);
  CHECK_THROWS(equidistant_graph(kPi / 2, Side::Past, hyperboloid_origin(2)));
}

TEST_CASE("equidistant graph is the constant-distance locus") {
  // Lorentzian distance from the embedded graph point to the past dual point
  // -e4 of the base plane equals pi/2 - theta at every base point.
  const SplitChart chart = SplitChart::standard(2);
  Vec e4(4);
  e4 << 0, 0, 0, -1;
  const QuadricPoint past_dual(e4);
  std::uniform_real_distribution<double> rad(0.0, 3.0), ang(0.0, 2 * kPi),
      th(0.05, 1.4);
  for (int trial = 0; trial < 200; ++trial) {
    const double theta = th(rng);
    SplitCoord c;
    c.x = h2_point(rad(rng), ang(rng));
    c.t = equidistant_graph(theta, Side::Past, c.x);
    CHECK(lorentzian_distance(split_embed(c, chart), past_dual) ==
          doctest::Approx(kPi / 2 - theta).epsilon(1e-9));
  }
}

TEST_CASE("equidistant mean curvature") {
  CHECK(equidistant_H(kPi / 4, Side::Past, 2) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(equidistant_H(0.0, Side::Past, 5) == 0.0);
  CHECK(equidistant_H(kPi / 3, Side::Future, 3) ==
        doctest::Approx(-3.0 * std::sqrt(3.0)).epsilon(1e-13));
}

TEST_CASE("equidistant graphs are strictly 1-Lipschitz conformally") {
  std::uniform_real_distribution<double> rad(0.0, 3.0), ang(0.0, 2 * kPi);
  const double theta = 1.1;
  for (int trial = 0; trial < 300; ++trial) {
    const Vec x = h2_point(rad(rng), ang(rng));
    const Vec y = h2_point(rad(rng), ang(rng));
    const double d = conformal_distance(x, y);
    if (d < 1e-6) continue;
    const double du = std::abs(equidistant_graph(theta, Side::Past, x) -
                               equidistant_graph(theta, Side::Past, y));
    CHECK(du < d);
  }
}

TEST_CASE("cylinder embedding") {
  CylindricalSurface s(2, 1, kPi / 4);
  const QuadricPoint p = cylinder_embed(s, h1_point(0.8), h1_point(-0.3));
  CHECK(std::abs(bilinear_form(p.v, p.v) + 1.0) < 1e-12);

  // k = n reduces to the past equidistant over the base plane
  CylindricalSurface full(2, 2, 0.6);
  Vec x3(3);
  x3 = h2_point(1.2, 0.5);
  Vec y1(1);
  y1 << 1.0;
  const QuadricPoint q = cylinder_embed(full, x3, y1);
  // x4 component constant = sin(theta): the P-theta locus
  CHECK(q.v(3) == doctest::Approx(std::sin(0.6)).epsilon(1e-12));

  CylindricalSurface none(2, 0, 0.6);
  Vec y3(3);
  y3 = h2_point(0.4, 2.0);
  const QuadricPoint r = cylinder_embed(none, y1, y3);
  CHECK(r.v(2) == doctest::Approx(std::cos(0.6) /* * cosh 0 */).epsilon(1e-12));
  CHECK_THROWS(cylinder_embed(s, x3, y1));
}

TEST_CASE("cylinder shape operator and curvatures") {
  CylindricalSurface s(2, 1, kPi / 4);
  const ShapeEigenvalues ev = cylinder_shape_operator(s);
  CHECK(ev.lambda_k == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ev.lambda_m == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(ev.mult_k == 1);
  CHECK(ev.mult_m == 1);
  for (int n : {2, 3, 4}) {
    for (int k = 1; k < n; ++k) {
      for (double theta = 0.1; theta < 1.5; theta += 0.2) {
        CylindricalSurface c(n, k, theta);
        const ShapeEigenvalues e = cylinder_shape_operator(c);
        CHECK(e.trace() == doctest::Approx(cylinder_H(k, theta, n))
                               .epsilon(1e-12));
        CHECK(e.lambda_k * e.lambda_k * e.mult_k +
                  e.lambda_m * e.lambda_m * e.mult_m ==
              doctest::Approx(cylinder_ii_norm(k, theta, n)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("cylinder |II|^2 closed forms") {
  CHECK(cylinder_ii_norm(1, kPi / 4, 2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(cylinder_ii_norm_from_H(1, 2.0, 2) ==
        doctest::Approx(6.0).epsilon(1e-12));
  CHECK(cylinder_ii_norm_from_H(2, 1.4, 2) ==
        doctest::Approx(1.4 * 1.4 / 2).epsilon(1e-12));
  // theta consistency
  for (double H : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
    const double theta = cylinder_theta_from_H(1, H, 3);
    CHECK(cylinder_H(1, theta, 3) == doctest::Approx(H).epsilon(1e-10));
    CHECK(cylinder_ii_norm(1, theta, 3) ==
          doctest::Approx(cylinder_ii_norm_from_H(1, H, 3)).epsilon(1e-10));
  }
}

TEST_CASE("sharp curvature bound") {
  CHECK(bound_rhs(0.0, 2) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(bound_rhs(2.0, 2) == doctest::Approx(6.0).epsilon(1e-14));
  for (int n : {2, 3, 4, 7}) CHECK(bound_rhs(0.0, n) == doctest::Approx(double(n)));
  CHECK(extremal_theta(0.0, 2) == doctest::Approx(kPi / 4).epsilon(1e-14));
  CHECK(extremal_theta(1.0, 2) ==
        doctest::Approx(std::atan((1 + std::sqrt(5.0)) / 2)).epsilon(1e-14));

  for (int n : {2, 3, 4}) {
    for (double H = -5.0; H <= 5.0 + 1e-12; H += 0.5) {
      const double th = extremal_theta(std::abs(H), n);
      CHECK(std::abs(cylinder_ii_norm(1, th, n) - bound_rhs(std::abs(H), n)) <
            1e-10);
      // every cylinder with matching H stays below the bound; equality at
      // k = 1 for H > 0 and k = n-1 for H < 0 (every k when H = 0)
      for (int k = 1; k < n; ++k) {
        const double s = cylinder_ii_norm_from_H(k, H, n);
        CHECK(s <= bound_rhs(std::abs(H), n) + 1e-10);
        const bool extremal =
            H == 0.0 || (H > 0 && k == 1) || (H < 0 && k == n - 1);
        if (extremal) {
          CHECK(s == doctest::Approx(bound_rhs(std::abs(H), n)).epsilon(1e-10));
        } else {
          CHECK(s < bound_rhs(std::abs(H), n) - 1e-6);
        }
      }
    }
  }
}

TEST_CASE("maximal cylinder graph") {
  const double theta = kPi / 4;
  std::uniform_real_distribution<double> rad(0.0, 2.5), ang(0.0, 2 * kPi);
  const SplitChart chart = SplitChart::standard(2);
  CylindricalSurface s(2, 1, theta);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec x = h2_point(rad(rng), ang(rng));
    SplitCoord c;
    c.x = x;
    c.t = cylinder_graph_n2(theta, x);
    const QuadricPoint F = split_embed(c, chart);
    // recover the factor coordinates and re-embed
    const double a = std::asinh(x(0) / std::cos(theta));
    const double b = std::asinh(x(1) / std::sin(theta));
    const QuadricPoint G = cylinder_embed(s, h1_point(a), h1_point(b));
    CHECK((F.v - G.v).norm() < 1e-9);
  }
}
