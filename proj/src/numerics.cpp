#include "fractdist/numerics.hpp"

#include <cmath>
#include <numbers>

namespace fractdist {

namespace {

// Taylor series sum_k (-q)^k / (k!)^2, q = (x/2)^2. Usable below the
// crossover; the largest term at x = 12 is ~4e3, so cancellation costs
// about three digits there and much less for smaller x.
double j0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 80; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-18 * (std::fabs(sum) + 1.0)) break;
  }
  return sum;
}

// Hankel expansion J0(x) ~ sqrt(2/(pi x)) (P cos w - Q sin w), w = x - pi/4,
// P = B0 - B2 + B4 - ..., Q = -B1 + B3 - ..., B_m = B_{m-1} (2m-1)^2/(8xm).
// Truncated at the smallest term; absolute error <~5e-12 at x = 12 and
// falls off quickly beyond.
double j0_asymptotic(double x) {
  const double inv8x = 1.0 / (8.0 * x);
  double P = 1.0, Q = 0.0;
  double B = 1.0, prev = 1e300;
  for (int m = 1; m <= 20; ++m) {
    const double odd = 2.0 * m - 1.0;
    B *= odd * odd * inv8x / static_cast<double>(m);
    if (B > prev) break;
    prev = B;
    switch (m % 4) {
      case 0: P += B; break;
      case 1: Q -= B; break;
      case 2: P -= B; break;
      default: Q += B; break;
    }
  }
  const double w = x - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (P * std::cos(w) - Q * std::sin(w));
}

}  // namespace

double bessel_j0(double x) {
  x = std::fabs(x);
  if (x < 12.0) return j0_series(x);
  return j0_asymptotic(x);
}

double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / s);
  const double b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

double halton(std::uint64_t i, unsigned base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

LineFit least_squares_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LineFit fit;
  fit.slope = (sxx > 0.0) ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  if (syy > 0.0) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = y[i] - (fit.intercept + fit.slope * x[i]);
      ss_res += e * e;
    }
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

}  // namespace fractdist
