#ifndef FRACTDIST_FOURIER_HPP
#define FRACTDIST_FOURIER_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "fractdist/geometry.hpp"
#include "fractdist/measures.hpp"

namespace fractdist {

// Forward transform convention: mu_hat(xi) = sum_j w_j exp(-2 pi i x_j . xi).
std::complex<double> measure_ft(const DiscreteMeasure& mu, Vec2 xi);

// Fourier transform of arc-length measure on the t-dilated boundary of K,
// evaluated at x: integral over dK of cos(2 pi t x . u) ds(u). Real for
// symmetric bodies; equals the perimeter at x = 0. Trapezoid rule on the
// boundary parameter (spectrally accurate for these smooth curves); `nodes`
// must be a power of two >= 256.
double arc_measure_ft(const ConvexBody& K, double t, Vec2 x, std::size_t nodes);

// Node count at which the phase 2 pi t x.gamma is safely oversampled.
std::size_t recommended_arc_nodes(const ConvexBody& K, double t, Vec2 x);

// Doubles nodes until two successive evaluations differ by < tol; reports
// non-convergence.
double arc_measure_ft_auto(const ConvexBody& K, double t, Vec2 x, double tol = 1e-8,
                           std::size_t max_nodes = 1 << 20);

// Leading stationary-phase term 2 (t rho*(x))^{-1/2} cos(2 pi (t rho*(x) - 1/8)).
// Valid in the regime t rho*(x) >= 1; rejected below. For non-circular bodies
// the amplitude is exact only in directions where curvature(normal) * |x|
// equals rho*(x); see stationary_phase_leading_curved for the general form.
double stationary_phase_leading(const ConvexBody& K, double t, Vec2 x);

// Curvature-corrected leading term 2 (kappa |t x|)^{-1/2} cos(same phase),
// kappa taken at the boundary point with outward normal x. Agrees with the
// plain form on circles.
double stationary_phase_leading_curved(const ConvexBody& K, double t, Vec2 x);

// Log-log least-squares fit over a sub-range of a sampled series.
struct ExponentFit {
  double slope{0.0};
  double intercept{0.0};
  double r_squared{1.0};
  double t_min{0.0};
  double t_max{0.0};
  std::string to_json() const;
};

ExponentFit fit_exponent(const std::vector<double>& grid, const std::vector<double>& values,
                         double t_min, double t_max);

// Envelope variant for oscillating series: split the (geometric) grid into
// windows of `window` consecutive points, fit the per-window maxima at the
// windows' geometric-mean abscissae. Zeros inside a window are harmless.
ExponentFit fit_exponent_envelope(const std::vector<double>& grid,
                                  const std::vector<double>& values, std::size_t window);

// Decay of |arc_measure_ft| in t: envelope slope over [t_lo, t_hi] maximized
// across `directions` boundary directions. Gate: strictly positive curvature.
struct DecayReport {
  std::vector<double> grid;
  std::vector<double> envelope;  // max over directions of |sigma_hat|
  ExponentFit fit;
};
DecayReport boundary_decay_fit(const ConvexBody& K, std::size_t directions, double t_lo,
                               double t_hi, std::size_t points_per_octave = 16,
                               std::size_t window = 12);

// Sampled t -> S(t) data with provenance labels.
struct AverageSeries {
  std::vector<double> grid;
  std::vector<double> values;
  std::string body;
  std::string measure;

  void validate() const;
  std::string to_csv(const std::string& xlabel = "t", const std::string& ylabel = "value") const;
};

}  // namespace fractdist

#endif
