#ifndef FRACTDIST_DISTANCE_SETS_HPP
#define FRACTDIST_DISTANCE_SETS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fractdist/exact.hpp"
#include "fractdist/fourier.hpp"
#include "fractdist/geometry.hpp"
#include "fractdist/measures.hpp"

namespace fractdist {

enum class DedupMode { exact_rational, tolerant };

// Hard cap on enumerated pairs; experiments document their R ceiling in
// terms of it.
inline constexpr std::uint64_t kPairBudget = std::uint64_t(1) << 31;

struct DistanceSetResult {
  std::vector<double> values;  // sorted; squared norms in exact mode
  std::size_t count{0};
  DedupMode mode{DedupMode::tolerant};
  double tolerance{0.0};
  bool include_zero{false};
  bool squared{false};
};

// Pairwise distance set under |.|_{a,phi} with tolerance dedup: sort, then a
// single pass merging consecutive gaps <= tolerance (order-stable, minimal
// in one dimension). tolerance <= 0 picks the default 1e-9 * max value.
DistanceSetResult distance_set(const std::vector<Vec2>& pts, const Ellipse& K,
                               double tolerance = 0.0, bool include_zero = false);

// Exact-rational pairwise distance set; values are the squared norms.
DistanceSetResult distance_set_exact(const std::vector<RationalPoint>& pts,
                                     const ExactEllipse& K, bool include_zero = false);

// Distinct-count-only variant that never materializes the result vector
// beyond one value buffer; used by the growth experiments.
std::size_t distinct_distance_count(const std::vector<Vec2>& pts, const Ellipse& K,
                                    double tolerance = 0.0);

struct CoveringReport {
  double interval_length{0.0};
  std::size_t count{0};
};

// Minimal number of closed length-ell intervals covering the given sorted
// values (greedy left-to-right, optimal in one dimension).
CoveringReport covering_number(const std::vector<double>& sorted_values, double ell);

// Box-counting dimension estimate: slope of log N(ell) against log(1/ell)
// over the given scales (>= 3 scales spanning >= 2 octaves).
ExponentFit box_dimension(const std::vector<double>& sorted_values,
                          const std::vector<double>& scales);

// Distinct distances from the origin to the integer grid {0..q}^2 and over
// all grid pairs, against the (q+1)^2 / (2q+1)^2 ceilings. Counts include 0
// (the origin convention carries it).
struct GridBoundReport {
  long q{0};
  std::size_t origin_count{0};
  std::size_t origin_bound{0};
  std::size_t pairwise_count{0};
  std::size_t pairwise_bound{0};
  bool pass{false};
};
GridBoundReport grid_count_bound(long q, const Ellipse& K, double tolerance = 0.0);
GridBoundReport grid_count_bound_exact(long q, const ExactEllipse& K);

// Sharpness experiment on a nested-grid stage: per sampled metric, the
// distance set of the stage grid, its covering number at ell = q_i^{-2/s}
// against (2 q_i + 1)^2, and a box-dimension estimate across dyadic scales
// from ell up to 1/4.
struct SharpnessSample {
  Ellipse K;
  std::size_t covering{0};
  std::size_t covering_bound{0};
  double box_dim{0.0};
  bool pass{false};
};
struct SharpnessReport {
  double ell{0.0};
  double dim_threshold{0.0};
  std::vector<SharpnessSample> per_sample;
  bool all_pass{true};
};
SharpnessReport sharpness_experiment(const LacunarySchedule& c, int stage,
                                     const std::vector<Ellipse>& Ks, double dim_slack = 0.15);

// Distinct-distance growth experiment: counts over A intersected with
// [-R,R]^2 for each R, per sampled metric, with a log-log growth fit.
struct ErdosSampleResult {
  Ellipse K;
  std::vector<std::size_t> counts;  // parallel to R_list
  ExponentFit fit;
};
struct ErdosReport {
  std::vector<double> R_list;
  std::vector<ErdosSampleResult> per_sample;
  double min_slope{0.0};
};
ErdosReport erdos_experiment(const PointSet& A, const std::vector<double>& R_list,
                             const std::vector<Ellipse>& Ks, double tolerance = 0.0);

}  // namespace fractdist

#endif
