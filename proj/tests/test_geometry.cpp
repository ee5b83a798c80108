#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fractdist/errors.hpp"
#include "fractdist/geometry.hpp"
#include "fractdist/numerics.hpp"

using namespace fractdist;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<Vec2> ellipse_boundary(double b1, double b2, double psi, std::size_t n) {
  std::vector<Vec2> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double th = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    pts.push_back(rotate({b1 * std::cos(th), b2 * std::sin(th)}, psi));
  }
  return pts;
}
}  // namespace

TEST_CASE("ellipse_norm closed-form examples") {
  CHECK(ellipse_norm({3, 4}, {1, 1, 0}) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(ellipse_norm({1, 0}, {2, 1, 0}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(ellipse_norm({1, 0}, {1, 2, kPi / 2}) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(ellipse_norm({std::nan(""), 0}, {1, 1, 0}), std::invalid_argument);
}

TEST_CASE("norm axioms on random triples") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10000; ++trial) {
    const Ellipse K{1.0 + uniform01(rng), 1.0 + uniform01(rng), kPi * uniform01(rng)};
    const Vec2 x{2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0};
    const Vec2 y{2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0};
    const double lam = 4.0 * uniform01(rng) - 2.0;
    const double nx = ellipse_norm(x, K), ny = ellipse_norm(y, K);
    // homogeneity
    CHECK(ellipse_norm(lam * x, K) == doctest::Approx(std::fabs(lam) * nx).epsilon(1e-12));
    // triangle inequality
    CHECK(ellipse_norm(x + y, K) <= nx + ny + 1e-12);
    // positive-definite
    if (nx == 0.0) {
      CHECK(x.x == 0.0);
      CHECK(x.y == 0.0);
    }
  }
  CHECK(ellipse_norm({0, 0}, {1.5, 1.2, 0.3}) == 0.0);
}

TEST_CASE("map_circle_point examples and inverse property") {
  {
    const Vec2 p = map_circle_point({1, 0}, {1, 1, 0});
    CHECK(p.x == doctest::Approx(1.0));
    CHECK(p.y == doctest::Approx(0.0));
  }
  {
    const Vec2 p = map_circle_point({0, 1}, {1, 2, 0});
    CHECK(p.x == doctest::Approx(0.0));
    CHECK(p.y == doctest::Approx(2.0));
  }
  {
    const Vec2 p = map_circle_point({1, 0}, {2, 1, kPi / 2});
    CHECK(p.x == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(p.y == doctest::Approx(-2.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(map_circle_point({1.0, 0.5}, {1, 1, 0}), std::invalid_argument);

  // Applying the inverse transform returns a unit vector.
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const Ellipse K{1.0 + uniform01(rng), 1.0 + uniform01(rng), kPi * uniform01(rng)};
    const Vec2 om = unit_vector(2.0 * kPi * uniform01(rng));
    const Vec2 img = map_circle_point(om, K);
    const Vec2 back = rotate(img, K.phi);  // undo rotate(-phi)
    const Vec2 undone{back.x / K.a1, back.y / K.a2};
    CHECK(norm(undone) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(undone.x == doctest::Approx(om.x).epsilon(1e-12));
    CHECK(undone.y == doctest::Approx(om.y).epsilon(1e-12));
  }
}

TEST_CASE("support function: disk, ellipse, sampled curve vs brute force") {
  CHECK(support_function(ConvexBody::disk(), {3, 4}) == doctest::Approx(5.0));
  CHECK(support_function(ConvexBody::ellipse(2, 1), {1, 0}) == doctest::Approx(2.0));

  // sampled (2,1) ellipse at (1,1): closed form sqrt(5)
  const ConvexBody sampled = ConvexBody::from_samples(ellipse_boundary(2, 1, 0, 1 << 14));
  CHECK(support_function(sampled, {1, 1}) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-6));

  // brute-force oracle over 10^6 boundary samples
  double brute = 0.0;
  for (std::size_t i = 0; i < 1000000; ++i) {
    const double th = 2.0 * kPi * static_cast<double>(i) / 1000000.0;
    brute = std::max(brute, 2.0 * std::cos(th) * 1.0 + std::sin(th) * 1.0);
  }
  CHECK(support_function(ConvexBody::ellipse(2, 1), {1, 1}) ==
        doctest::Approx(brute).epsilon(1e-6));

  // homogeneity and subadditivity
  std::mt19937_64 rng(11);
  const ConvexBody K = ConvexBody::ellipse(1.7, 0.6, 0.4);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec2 x{2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0};
    const Vec2 y{2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0};
    const double lam = 3.0 * uniform01(rng);
    CHECK(support_function(K, lam * x) ==
          doctest::Approx(lam * support_function(K, x)).epsilon(1e-12));
    CHECK(support_function(K, x + y) <=
          support_function(K, x) + support_function(K, y) + 1e-12);
  }
}

TEST_CASE("dual body: reciprocal semi-axes, involution, gauge identity") {
  {
    const ConvexBody d = dual_body(ConvexBody::disk());
    REQUIRE(d.is_ellipse());
    CHECK(d.ellipse_shape()->b1 == doctest::Approx(1.0));
    CHECK(d.ellipse_shape()->b2 == doctest::Approx(1.0));
  }
  {
    const ConvexBody d = dual_body(ConvexBody::ellipse(0.5, 1.0));
    CHECK(d.ellipse_shape()->b1 == doctest::Approx(2.0));
    CHECK(d.ellipse_shape()->b2 == doctest::Approx(1.0));
  }
  {
    const ConvexBody d = dual_body(ConvexBody::ellipse(0.8, 1.3, 0.7));
    CHECK(d.ellipse_shape()->b1 == doctest::Approx(1.25));
    CHECK(d.ellipse_shape()->b2 == doctest::Approx(1.0 / 1.3));
    CHECK(d.ellipse_shape()->psi == doctest::Approx(0.7));
  }

  // Sampled curve: dual of dual reproduces the radial function.
  const ConvexBody K = ConvexBody::from_samples(ellipse_boundary(1.4, 0.9, 0.5, 1 << 13));
  const ConvexBody KK = dual_body(dual_body(K));
  const ConvexBody Kexact = ConvexBody::ellipse(1.4, 0.9, 0.5);
  for (int i = 0; i < 64; ++i) {
    const Vec2 u = unit_vector(2.0 * kPi * i / 64.0);
    const double r1 = 1.0 / minkowski_norm(KK, u);
    const double r2 = 1.0 / minkowski_norm(Kexact, u);
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-6));
  }

  // rho*_K = gauge of the dual body, random directions
  std::mt19937_64 rng(5);
  const ConvexBody B = ConvexBody::ellipse(1.9, 0.7, 1.1);
  const ConvexBody Bd = dual_body(B);
  for (int trial = 0; trial < 300; ++trial) {
    const Vec2 x{4.0 * uniform01(rng) - 2.0, 4.0 * uniform01(rng) - 2.0};
    CHECK(support_function(B, x) == doctest::Approx(minkowski_norm(Bd, x)).epsilon(1e-9));
  }
}

TEST_CASE("curvature: circle, ellipse extremes, finite-difference oracle") {
  for (double th = 0.0; th < 2.0 * kPi; th += 0.17) {
    CHECK(curvature(ConvexBody::disk(), th) == doctest::Approx(1.0).epsilon(1e-12));
  }
  const ConvexBody E = ConvexBody::ellipse(2, 1);
  CHECK(curvature(E, 0.0) == doctest::Approx(2.0).epsilon(1e-12));       // b1/b2^2
  CHECK(curvature(E, kPi / 2) == doctest::Approx(0.25).epsilon(1e-12));  // b2/b1^2

  // finite differences on the sampled boundary reach the analytic extremes
  const ConvexBody S = ConvexBody::from_samples(ellipse_boundary(2, 1, 0, 1 << 14));
  double kmin = 1e300, kmax = 0.0;
  for (std::size_t i = 0; i < 1 << 14; ++i) {
    const double k = curvature(S, 2.0 * kPi * static_cast<double>(i) / (1 << 14));
    kmin = std::min(kmin, k);
    kmax = std::max(kmax, k);
  }
  CHECK(kmin == doctest::Approx(0.25).epsilon(1e-4));
  CHECK(kmax == doctest::Approx(2.0).epsilon(1e-4));

  CHECK(curvature_at_normal(E, {1, 0}) == doctest::Approx(2.0));
  CHECK(curvature_at_normal(E, {0, 1}) == doctest::Approx(0.25));
}

TEST_CASE("sampled-body validity gates") {
  // not symmetric
  std::vector<Vec2> bad = ellipse_boundary(1, 1, 0, 64);
  bad[3] = {1.2, 0.4};
  CHECK_THROWS_AS(ConvexBody::from_samples(bad), std::invalid_argument);

  // flat segments / non-convex
  std::vector<Vec2> square;
  for (int i = 0; i < 64; ++i) {
    const double th = 2.0 * kPi * i / 64.0;
    const Vec2 u = unit_vector(th);
    const double r = 1.0 / std::max(std::fabs(u.x), std::fabs(u.y));  // square boundary
    square.push_back(r * u);
  }
  CHECK_THROWS_AS(ConvexBody::from_samples(square), std::invalid_argument);

  // a smooth convex non-ellipse passes and has positive curvature
  std::vector<Vec2> blob;
  const std::size_t n = 1 << 10;
  for (std::size_t i = 0; i < n; ++i) {
    const double th = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    const double h = 1.0 + 0.2 * std::cos(2.0 * th);  // support function
    const double hp = -0.4 * std::sin(2.0 * th);
    blob.push_back({h * std::cos(th) - hp * std::sin(th), h * std::sin(th) + hp * std::cos(th)});
  }
  const ConvexBody B = ConvexBody::from_samples(blob);
  for (int i = 0; i < 32; ++i) {
    CHECK(curvature(B, 2.0 * kPi * i / 32.0) > 0.0);
  }
}

TEST_CASE("random_ellipse: determinism, box, mean") {
  const Ellipse a = random_ellipse(99), b = random_ellipse(99);
  CHECK(a.a1 == b.a1);
  CHECK(a.a2 == b.a2);
  CHECK(a.phi == b.phi);

  EllipseSampler s(123);
  double sum_a1 = 0.0, sum_a2 = 0.0, sum_phi = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const Ellipse e = s.next();
    CHECK(e.a1 >= 1.0);
    CHECK(e.a1 < 2.0);
    CHECK(e.a2 >= 1.0);
    CHECK(e.a2 < 2.0);
    CHECK(e.phi >= 0.0);
    CHECK(e.phi < kPi);
    sum_a1 += e.a1;
    sum_a2 += e.a2;
    sum_phi += e.phi;
  }
  CHECK(std::fabs(sum_a1 / n - 1.5) < 0.01);
  CHECK(std::fabs(sum_a2 / n - 1.5) < 0.01);
  CHECK(std::fabs(sum_phi / n - kPi / 2) < 0.01);
}

TEST_CASE("transform_from_ellipse matches the norm on random vectors") {
  {
    const LinearTransform T = transform_from_ellipse({1, 1, 0});
    CHECK(T.m00 == 1.0);
    CHECK(T.m01 == 0.0);
    CHECK(T.m10 == 0.0);
    CHECK(T.m11 == 1.0);
  }
  {
    const LinearTransform T = transform_from_ellipse({2, 1, 0});
    CHECK(T.m00 == 2.0);
    CHECK(T.m11 == 1.0);
  }
  std::mt19937_64 rng(31);
  const Ellipse K{1, 2, kPi / 4};
  const LinearTransform T = transform_from_ellipse(K);
  T.validate();
  CHECK(T.det() > 0.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec2 x{8.0 * uniform01(rng) - 4.0, 8.0 * uniform01(rng) - 4.0};
    CHECK(norm(T.apply(x)) == doctest::Approx(ellipse_norm(x, K)).epsilon(1e-12));
  }
}

TEST_CASE("unit_ball of the norm and gauge consistency") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const Ellipse K{1.0 + uniform01(rng), 1.0 + uniform01(rng), kPi * uniform01(rng)};
    const ConvexBody ball = unit_ball(K);
    const Vec2 x{2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0};
    CHECK(minkowski_norm(ball, x) == doctest::Approx(ellipse_norm(x, K)).epsilon(1e-12));
  }
}

TEST_CASE("ellipse text round trip") {
  const Ellipse K{1.25, 1.875, 0.7853981633974483};
  const Ellipse back = Ellipse::from_text(K.to_text());
  CHECK(back.a1 == K.a1);
  CHECK(back.a2 == K.a2);
  CHECK(back.phi == K.phi);
  CHECK_THROWS_AS(Ellipse::from_text("1.0,2.0"), std::invalid_argument);
}

TEST_CASE("sampled-curve CSV round trip") {
  const ConvexBody K = ConvexBody::from_samples(ellipse_boundary(1.3, 0.8, 0.2, 256));
  const ConvexBody back = ConvexBody::from_csv(K.to_csv());
  REQUIRE(back.sample_count() == 256);
  for (std::size_t i = 0; i < 256; ++i) {
    CHECK(back.samples()[i].x == K.samples()[i].x);
    CHECK(back.samples()[i].y == K.samples()[i].y);
  }
}
