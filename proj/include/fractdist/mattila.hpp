#ifndef FRACTDIST_MATTILA_HPP
#define FRACTDIST_MATTILA_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "fractdist/fourier.hpp"
#include "fractdist/geometry.hpp"
#include "fractdist/measures.hpp"

namespace fractdist {

// ---------------------------------------------------------------------------
// Littlewood-Paley machinery
// ---------------------------------------------------------------------------

// Smooth dyadic cutoff: supported in [0.8, 2] (inside the classical [1/2, 4]
// window), identically 1 on [1, 1.6], and sum_{n>=0} lp_bump(2^-n t) = 1
// exactly for every t >= 1. Built by normalizing a fixed C-infinity bump
// against its own dyadic dilates, so the partition identity is structural.
double lp_bump(double u);

// beta(2^-n t).
double lp_block_weight(int n, double t);

// Support of block n: [0.8 * 2^n, 2^{n+1}].
double lp_block_lo(int n);
double lp_block_hi(int n);

// Smooth cutoff on eccentricity pairs: 1 on [1,2], supported in (1/2, 4).
double psi_cutoff_1d(double x);
double psi_cutoff(double a1, double a2);

// ---------------------------------------------------------------------------
// Spherical / elliptical averages of |mu_hat|^2
// ---------------------------------------------------------------------------

// S(t; a, phi) = integral over theta in [0, 2pi) of
// |mu_hat(t * ellipse_direction(theta, K))|^2 d theta, trapezoid with `nodes`
// points. The Euclidean case a = (1,1) is the classical spherical average.
// exclude_diagonal subtracts the exact atomic floor 2 pi sum_j w_j^2 (the
// diagonal of mu x mu, absent for the non-atomic measures being
// approximated); the subtraction is exact because that part of |mu_hat|^2 is
// constant in the direction.
double spherical_average(const DiscreteMeasure& mu, double t, const Ellipse& K,
                         std::size_t nodes, bool exclude_diagonal = false);

// Same quantity through the pair identity: the angular integral of
// |mu_hat|^2 collapses to sum_{j,l} w_j w_l sigma_hat(t (x_j - x_l)_{a,phi})
// with sigma_hat(z) = 2 pi J0(2 pi |z|) the circle transform. Exact pair
// enumeration, no quadrature: the independent route against which the
// quadrature is checked.
double spherical_average_pair_sum(const DiscreteMeasure& mu, double t, const Ellipse& K,
                                  bool exclude_diagonal = false);

// Arc-length-weighted average over a general boundary:
// integral over dK of |mu_hat(t u)|^2 ds(u).
double boundary_average(const DiscreteMeasure& mu, double t, const ConvexBody& K,
                        std::size_t nodes, bool exclude_diagonal = false);

// Auto node count for the two averages above.
std::size_t recommended_angle_nodes(double t, double direction_scale);

// Binned pushforward of the pair distances of mu under |.|_{a,phi}: the fast
// evaluator behind the t-sweeps. Bins are fine enough that the induced phase
// error stays below the quadrature tolerances (each bin carries its own
// weight centroid).
class PairDistanceProfile {
 public:
  PairDistanceProfile(const DiscreteMeasure& mu, const Ellipse& K, std::size_t bins = 32768);

  double spherical_average(double t, bool exclude_diagonal) const;
  double diagonal_mass() const { return diag_; }
  double max_distance() const { return smax_; }

 private:
  std::vector<double> s_;  // occupied-bin centroid distances
  std::vector<double> w_;  // occupied-bin pair weights (unordered pairs)
  double diag_{0.0};
  double smax_{0.0};
};

// ---------------------------------------------------------------------------
// Mattila integrals and dyadic blocks
// ---------------------------------------------------------------------------

struct MattilaResolution {
  std::size_t nodes_per_block{64};  // minimum trapezoid nodes per block/octave
  double max_spacing{0.05};         // cap on the t-grid spacing
  std::size_t profile_bins{32768};
  std::size_t angle_nodes{0};       // 0 = auto, quadrature paths only
  bool exclude_diagonal{true};
};

enum class SpectralMethod { quadrature, pair_profile };

// Truncated integral over [1, t_max] of S(t)^2 t dt, composite trapezoid on
// per-octave uniform grids. Enforces t_max * max(a1,a2) <= 1/scale.
double mattila_integral(const DiscreteMeasure& mu, const Ellipse& K, double t_max,
                        const MattilaResolution& res = {},
                        SpectralMethod method = SpectralMethod::quadrature);

struct EllipseSample {
  Ellipse K;
  double weight{1.0};
};

enum class SampleBox {
  unit,    // [1,2]^2 x [0,pi), unit weights
  cutoff,  // [1/2,4]^2 x [0,pi), psi-weighted (the smooth-cutoff average)
};

std::vector<EllipseSample> halton_ellipse_samples(std::size_t count, SampleBox box);

// Weighted average of mattila_integral over the sample set. The weights are
// expected to already carry the psi cutoff (halton_ellipse_samples does);
// with the single sample {(1,1,0), weight 1} this reduces to
// mattila_integral bit for bit.
double averaged_mattila(const DiscreteMeasure& mu, const std::vector<EllipseSample>& samples,
                        double t_max, const MattilaResolution& res = {},
                        SpectralMethod method = SpectralMethod::quadrature);

struct DyadicBlockReport {
  int n{0};
  double value{0.0};
  double t_lo{0.0};
  double t_hi{0.0};
  std::size_t t_nodes{0};
  std::size_t profile_bins{0};
  std::size_t sample_count{0};
  bool diagonal_excluded{true};
  std::string to_json() const;
};

// One dyadic block I_n of the (a,phi)-averaged Mattila integral:
// average over samples of integral S(t)^2 t beta(2^-n t) dt over the block
// support. Resolution gate: max(2, a_max) * 2^{n+1} <= 1/scale, where a_max
// is the largest eccentricity among the samples (the probed frequency is
// t * a_max; the spec's Euclidean-box rule 2^{n+2} <= 1/scale is the a_max=2
// case).
DyadicBlockReport dyadic_block(const DiscreteMeasure& mu,
                               const std::vector<EllipseSample>& samples, int n,
                               const MattilaResolution& res = {});

struct BlockDecomposition {
  std::vector<DyadicBlockReport> blocks;  // n = 0 .. n_max
  double windowed_total{0.0};  // same window, independent global quadrature
  double block_sum() const;
};

// Blocks n = 0..n_max plus the windowed reference integral
// integral S^2 t W(t) dt, W = sum_n beta(2^-n t), evaluated on a deliberately
// different t-grid. Linearity makes the two mathematically equal; agreement
// validates both the partition of unity and the per-block quadratures.
BlockDecomposition dyadic_decomposition(const DiscreteMeasure& mu,
                                        const std::vector<EllipseSample>& samples, int n_max,
                                        const MattilaResolution& res = {});

// Largest n passing the dyadic resolution gate for these samples.
int max_resolved_block(const DiscreteMeasure& mu, const std::vector<EllipseSample>& samples);

// ---------------------------------------------------------------------------
// Distance measures and their transforms
// ---------------------------------------------------------------------------

struct DistanceSample {
  double s;
  double w;
};

// Pushforward of mu x mu under x,y -> |x - y|_{K*} (the gauge of the given
// body). Diagonal excluded: the excluded mass sum w_j^2 is reported, the
// remaining weights sum to 1 - sum w_j^2. Samples are aggregated over
// exactly equal distances and sorted.
class DistanceMeasure {
 public:
  DistanceMeasure(std::vector<DistanceSample> samples, double excluded_diagonal,
                  std::string body_label);

  const std::vector<DistanceSample>& samples() const { return samples_; }
  double excluded_diagonal() const { return excluded_diagonal_; }
  double total_weight() const;
  const std::string& body_label() const { return body_; }

 private:
  std::vector<DistanceSample> samples_;
  double excluded_diagonal_;
  std::string body_;
};

DistanceMeasure distance_measure(const DiscreteMeasure& mu, const ConvexBody& Kstar);

// Transform of the half-order-weighted symmetrization of the distance
// measure: 2 * sum_s w(s) s^{-1/2} cos(2 pi (|k| s - 1/8)). Real and even
// in k; rejects zero-distance samples.
double distance_measure_ft(const DistanceMeasure& dm, double k);

// Same quantity computed directly from the measure and the primal body K,
// with s = rho*_K(x - y) via the support function (the independent route).
double distance_measure_ft_pairs(const DiscreteMeasure& mu, const ConvexBody& K, double k);

struct ConsistencyReport {
  std::vector<double> k;
  std::vector<double> residual;  // |nu_hat(k) - sqrt(k) S_K(k)|
  ExponentFit fit;
  double alpha{0.0};
  double energy{0.0};        // I_alpha(mu)
  double bound_constant{0.0};  // max residual / (k^{1/2-alpha} I_alpha)
};

// Residual between the distance-measure transform and k^{1/2} times the
// boundary average of |mu_hat|^2 over k in the given geometric grid.
// Distances are measured by the dual body's gauge; the diagonal is excluded
// on both sides.
ConsistencyReport distance_ft_consistency(const DiscreteMeasure& mu, const ConvexBody& K,
                                          double k_lo, double k_hi, std::size_t n_k,
                                          std::size_t angle_nodes = 0);

}  // namespace fractdist

#endif
