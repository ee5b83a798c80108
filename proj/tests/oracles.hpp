// Independent oracles used by the tests. These deliberately avoid the
// library's own code paths: Bessel values come from libstdc++, integrals
// from brute-force summation or adaptive Simpson, covering numbers from an
// exhaustive search.
#ifndef FRACTDIST_TESTS_ORACLES_HPP
#define FRACTDIST_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

// libstdc++'s cylindrical Bessel function: an implementation fully
// independent of fractdist::bessel_j0.
inline double j0(double x) { return std::cyl_bessel_j(0.0, std::fabs(x)); }

// Adaptive Simpson quadrature.
inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

// Minimal number of closed length-ell intervals covering the sorted values,
// by dynamic programming over every possible block the leftmost interval
// can cover (an interval containing v_i covers a contiguous block
// v_i..v_j with v_j <= v_i + ell; all block choices are enumerated).
inline std::size_t min_cover_exhaustive(const std::vector<double>& vals, double ell) {
  const std::size_t n = vals.size();
  std::vector<std::size_t> f(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) {
    std::size_t best = static_cast<std::size_t>(-1);
    for (std::size_t j = i; j < n && vals[j] <= vals[i] + ell; ++j) {
      best = std::min(best, 1 + f[j + 1]);
    }
    f[i] = best;
  }
  return f[0];
}

}  // namespace oracle

#endif
