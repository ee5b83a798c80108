#include <doctest.h>

#include <cmath>
#include <random>

#include "fractdist/numerics.hpp"
#include "oracles.hpp"

using namespace fractdist;

TEST_CASE("bessel_j0 against libstdc++ over the working range") {
  // crossings of the series/asymptotic regimes included
  for (double x = 0.0; x <= 50.0; x += 0.0703125) {
    CHECK(std::fabs(bessel_j0(x) - oracle::j0(x)) < 2e-11);
  }
  for (double x = 50.0; x <= 3000.0; x *= 1.37) {
    CHECK(std::fabs(bessel_j0(x) - oracle::j0(x)) < 2e-11);
  }
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(bessel_j0(-5.0) == bessel_j0(5.0));
}

TEST_CASE("smooth_step is a clamped monotone ramp") {
  CHECK(smooth_step(-1.0) == 0.0);
  CHECK(smooth_step(0.0) == 0.0);
  CHECK(smooth_step(1.0) == 1.0);
  CHECK(smooth_step(0.5) == doctest::Approx(0.5));
  double prev = 0.0;
  for (double s = 0.0; s <= 1.0; s += 1.0 / 256) {
    const double v = smooth_step(s);
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
}

TEST_CASE("halton fills the unit interval uniformly") {
  double mean = 0.0;
  const int n = 4096;
  for (int i = 1; i <= n; ++i) {
    const double v = halton(static_cast<std::uint64_t>(i), 2);
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    mean += v;
  }
  CHECK(std::fabs(mean / n - 0.5) < 1e-3);
}

TEST_CASE("least_squares_line recovers exact lines") {
  std::vector<double> x{1.0, 2.0, 3.0, 4.0}, y;
  for (double v : x) y.push_back(-0.63 * v + 2.0);
  const LineFit f = least_squares_line(x, y);
  CHECK(f.slope == doctest::Approx(-0.63).epsilon(1e-13));
  CHECK(f.intercept == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}
