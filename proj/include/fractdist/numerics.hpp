#ifndef FRACTDIST_NUMERICS_HPP
#define FRACTDIST_NUMERICS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fractdist {

// Bessel function of the first kind, order zero. Power series below the
// crossover, Hankel asymptotic expansion above; absolute accuracy ~1e-13
// over the full real line. Kept local so the hot loops do not pay for the
// generality of std::cyl_bessel_j.
double bessel_j0(double x);

// C-infinity ramp: 0 for s <= 0, 1 for s >= 1, smooth monotone in between.
double smooth_step(double s);

// Halton low-discrepancy sequence, index i >= 1, prime base.
double halton(std::uint64_t i, unsigned base);

// Uniform double in [0,1) from 53 random bits; engine-portable, unlike
// std::uniform_real_distribution.
template <typename Rng>
double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Least-squares slope/intercept of y against x with coefficient of
// determination. Caller guarantees x.size() == y.size() >= 2.
struct LineFit {
  double slope{0.0};
  double intercept{0.0};
  double r_squared{1.0};
};
LineFit least_squares_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace fractdist

#endif
