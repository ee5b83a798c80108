#include "fractdist/distance_sets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fractdist/errors.hpp"
#include "fractdist/numerics.hpp"
#include "fractdist/parallel.hpp"

namespace fractdist {

namespace {

// Fills `out` with the |.|_{a,phi} norms of all unordered pair differences.
// Parallel over fixed row chunks; the global sort that follows erases any
// ordering difference.
void pair_norms(const std::vector<Vec2>& pts, const Ellipse& K, std::vector<double>& out) {
  const std::size_t n = pts.size();
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (pairs > kPairBudget) {
    throw budget_error("pair enumeration exceeds the 2^31 pair budget");
  }
  out.resize(static_cast<std::size_t>(pairs));
  const double c = std::cos(K.phi), s = std::sin(K.phi);
  const std::size_t chunks = 64;
  // Prefix offsets per chunk row range.
  std::vector<std::size_t> offset(chunks + 1, 0);
  auto row_pairs = [&](std::size_t lo, std::size_t hi) {
    std::size_t acc = 0;
    for (std::size_t j = lo; j < hi; ++j) acc += n - 1 - j;
    return acc;
  };
  for (std::size_t ci = 0; ci < chunks; ++ci) {
    offset[ci + 1] = offset[ci] + row_pairs(n * ci / chunks, n * (ci + 1) / chunks);
  }
  parallel_for(chunks, [&](std::size_t ci) {
    std::size_t w = offset[ci];
    const std::size_t lo = n * ci / chunks, hi = n * (ci + 1) / chunks;
    for (std::size_t j = lo; j < hi; ++j) {
      const Vec2 pj = pts[j];
      for (std::size_t l = j + 1; l < n; ++l) {
        const double dx = pj.x - pts[l].x, dy = pj.y - pts[l].y;
        const double u = K.a1 * (dx * c - dy * s);
        const double v = K.a2 * (dx * s + dy * c);
        out[w++] = std::hypot(u, v);
      }
    }
  });
}

// Sorted values -> tolerance-merged cluster count (gap rule).
std::size_t merge_count(const std::vector<double>& sorted, double tol) {
  if (sorted.empty()) return 0;
  std::size_t count = 1;
  double prev = sorted.front();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] - prev > tol) ++count;
    prev = sorted[i];
  }
  return count;
}

std::vector<double> merge_values(const std::vector<double>& sorted, double tol) {
  std::vector<double> out;
  if (sorted.empty()) return out;
  out.push_back(sorted.front());
  double prev = sorted.front();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] - prev > tol) out.push_back(sorted[i]);
    prev = sorted[i];
  }
  return out;
}

double default_tolerance(const std::vector<double>& sorted, double requested) {
  if (requested > 0.0) return requested;
  return sorted.empty() ? 0.0 : 1e-9 * sorted.back();
}

}  // namespace

DistanceSetResult distance_set(const std::vector<Vec2>& pts, const Ellipse& K,
                               double tolerance, bool include_zero) {
  K.validate();
  if (pts.size() < 2) throw std::invalid_argument("distance_set: need at least two points");
  std::vector<double> vals;
  pair_norms(pts, K, vals);
  std::sort(vals.begin(), vals.end());
  const double tol = default_tolerance(vals, tolerance);

  DistanceSetResult res;
  res.mode = DedupMode::tolerant;
  res.tolerance = tol;
  res.include_zero = include_zero;
  res.squared = false;
  // Coincident points produce zeros; cluster them away before the zero flag.
  std::vector<double> merged = merge_values(vals, tol);
  if (!merged.empty() && merged.front() <= tol) merged.erase(merged.begin());
  if (include_zero) merged.insert(merged.begin(), 0.0);
  res.values = std::move(merged);
  res.count = res.values.size();
  return res;
}

DistanceSetResult distance_set_exact(const std::vector<RationalPoint>& pts,
                                     const ExactEllipse& K, bool include_zero) {
  if (pts.size() < 2) throw std::invalid_argument("distance_set_exact: need at least two points");
  const std::uint64_t pairs =
      static_cast<std::uint64_t>(pts.size()) * (pts.size() - 1) / 2;
  if (pairs > kPairBudget) throw budget_error("distance_set_exact: pair budget exceeded");
  const auto sq = exact_distance_set_sq(pts, K, include_zero);
  DistanceSetResult res;
  res.mode = DedupMode::exact_rational;
  res.tolerance = 0.0;
  res.include_zero = include_zero;
  res.squared = true;
  res.values.reserve(sq.size());
  for (const auto& v : sq) res.values.push_back(static_cast<double>(v));
  res.count = sq.size();
  return res;
}

std::size_t distinct_distance_count(const std::vector<Vec2>& pts, const Ellipse& K,
                                    double tolerance) {
  K.validate();
  if (pts.size() < 2) return 0;
  std::vector<double> vals;
  pair_norms(pts, K, vals);
  std::sort(vals.begin(), vals.end());
  const double tol = default_tolerance(vals, tolerance);
  std::size_t count = merge_count(vals, tol);
  // Zero distances (coincident points) are excluded from the statistic.
  if (!vals.empty() && vals.front() <= tol) --count;
  return count;
}

CoveringReport covering_number(const std::vector<double>& sorted_values, double ell) {
  if (!(ell > 0.0)) throw std::invalid_argument("covering_number: ell must be positive");
  if (!std::is_sorted(sorted_values.begin(), sorted_values.end())) {
    throw std::invalid_argument("covering_number: values must be sorted");
  }
  CoveringReport rep;
  rep.interval_length = ell;
  std::size_t i = 0;
  const std::size_t n = sorted_values.size();
  while (i < n) {
    const double end = sorted_values[i] + ell;
    ++rep.count;
    while (i < n && sorted_values[i] <= end) ++i;
  }
  return rep;
}

ExponentFit box_dimension(const std::vector<double>& sorted_values,
                          const std::vector<double>& scales) {
  if (scales.size() < 3) throw std::invalid_argument("box_dimension: need >= 3 scales");
  double smin = scales[0], smax = scales[0];
  for (double s : scales) {
    if (!(s > 0.0)) throw std::invalid_argument("box_dimension: scales must be positive");
    smin = std::min(smin, s);
    smax = std::max(smax, s);
  }
  if (smax / smin < 4.0 * (1.0 - 1e-12)) {
    throw std::invalid_argument("box_dimension: scales must span >= 2 octaves");
  }
  std::vector<double> inv_ell, counts;
  for (double ell : scales) {
    inv_ell.push_back(1.0 / ell);
    counts.push_back(static_cast<double>(covering_number(sorted_values, ell).count));
  }
  // Single point: N == 1 at every scale, slope 0 by convention.
  bool all_one = true;
  for (double c : counts) all_one = all_one && c == 1.0;
  ExponentFit fit;
  if (all_one) {
    fit.slope = 0.0;
    fit.intercept = 0.0;
    fit.r_squared = 1.0;
    fit.t_min = smin;
    fit.t_max = smax;
    return fit;
  }
  return fit_exponent(inv_ell, counts, 1.0 / smax, 1.0 / smin);
}

GridBoundReport grid_count_bound(long q, const Ellipse& K, double tolerance) {
  if (q < 1) throw std::invalid_argument("grid_count_bound: q must be >= 1");
  K.validate();
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>((q + 1) * (q + 1)));
  for (long i = 0; i <= q; ++i)
    for (long j = 0; j <= q; ++j)
      pts.push_back({static_cast<double>(i), static_cast<double>(j)});

  GridBoundReport rep;
  rep.q = q;
  rep.origin_bound = static_cast<std::size_t>((q + 1) * (q + 1));
  rep.pairwise_bound = static_cast<std::size_t>((2 * q + 1) * (2 * q + 1));

  // Distances from the origin, zero included (the grid contains the origin).
  std::vector<double> ov;
  ov.reserve(pts.size());
  for (const Vec2& p : pts) ov.push_back(ellipse_norm(p, K));
  std::sort(ov.begin(), ov.end());
  const double tol = default_tolerance(ov, tolerance);
  rep.origin_count = merge_count(ov, tol);

  const DistanceSetResult pw = distance_set(pts, K, tolerance, /*include_zero=*/true);
  rep.pairwise_count = pw.count;
  rep.pass = rep.origin_count <= rep.origin_bound && rep.pairwise_count <= rep.pairwise_bound;
  return rep;
}

GridBoundReport grid_count_bound_exact(long q, const ExactEllipse& K) {
  if (q < 1) throw std::invalid_argument("grid_count_bound_exact: q must be >= 1");
  std::vector<RationalPoint> pts;
  for (long i = 0; i <= q; ++i)
    for (long j = 0; j <= q; ++j) pts.push_back({Rational(i), Rational(j)});
  GridBoundReport rep;
  rep.q = q;
  rep.origin_bound = static_cast<std::size_t>((q + 1) * (q + 1));
  rep.pairwise_bound = static_cast<std::size_t>((2 * q + 1) * (2 * q + 1));
  rep.origin_count = exact_origin_distance_set_sq(pts, K, /*include_zero=*/true).size();
  rep.pairwise_count = exact_distance_set_sq(pts, K, /*include_zero=*/true).size();
  rep.pass = rep.origin_count <= rep.origin_bound && rep.pairwise_count <= rep.pairwise_bound;
  return rep;
}

SharpnessReport sharpness_experiment(const LacunarySchedule& c, int stage,
                                     const std::vector<Ellipse>& Ks, double dim_slack) {
  c.validate();
  auto [ps, mu] = nested_grid_stage(c, stage);
  (void)mu;
  const double ell = c.stage_radius(stage);
  const long qi = c.q[stage - 1];

  SharpnessReport rep;
  rep.ell = ell;
  rep.dim_threshold = c.s + dim_slack;

  // Dyadic scale ladder from 1/4 down to ell (at least 3 scales, 2 octaves).
  std::vector<double> scales;
  for (double sc = 0.25; sc > ell * (1.0 - 1e-12); sc *= 0.5) scales.push_back(sc);
  scales.push_back(ell);
  if (scales.size() < 3) {
    scales = {4.0 * ell, 2.0 * ell, ell};
  }

  for (const Ellipse& K : Ks) {
    const DistanceSetResult ds = distance_set(ps.points, K, 0.0, /*include_zero=*/false);
    SharpnessSample sam;
    sam.K = K;
    sam.covering = covering_number(ds.values, ell).count;
    sam.covering_bound = static_cast<std::size_t>((2 * qi + 1) * (2 * qi + 1));
    sam.box_dim = box_dimension(ds.values, scales).slope;
    sam.pass = sam.covering <= sam.covering_bound && sam.box_dim <= rep.dim_threshold;
    rep.all_pass = rep.all_pass && sam.pass;
    rep.per_sample.push_back(std::move(sam));
  }
  return rep;
}

ErdosReport erdos_experiment(const PointSet& A, const std::vector<double>& R_list,
                             const std::vector<Ellipse>& Ks, double tolerance) {
  if (R_list.size() < 4) {
    throw std::invalid_argument("erdos_experiment: need >= 4 radii for a growth fit");
  }
  for (std::size_t i = 1; i < R_list.size(); ++i) {
    if (!(R_list[i] > R_list[i - 1])) {
      throw std::invalid_argument("erdos_experiment: radii must increase");
    }
  }
  // Budget check at the largest radius before any work happens.
  {
    std::size_t nmax = 0;
    const double R = R_list.back();
    for (const Vec2& p : A.points) {
      if (std::fabs(p.x) <= R && std::fabs(p.y) <= R) ++nmax;
    }
    const std::uint64_t pairs = static_cast<std::uint64_t>(nmax) * (nmax - 1) / 2;
    if (pairs > kPairBudget) throw budget_error("erdos_experiment: pair budget exceeded");
  }

  ErdosReport rep;
  rep.R_list = R_list;
  rep.min_slope = 1e300;
  for (const Ellipse& K : Ks) {
    ErdosSampleResult r;
    r.K = K;
    for (double R : R_list) {
      std::vector<Vec2> window;
      for (const Vec2& p : A.points) {
        if (std::fabs(p.x) <= R && std::fabs(p.y) <= R) window.push_back(p);
      }
      r.counts.push_back(distinct_distance_count(window, K, tolerance));
    }
    std::vector<double> counts_d(r.counts.begin(), r.counts.end());
    r.fit = fit_exponent(rep.R_list, counts_d, rep.R_list.front(), rep.R_list.back());
    rep.min_slope = std::min(rep.min_slope, r.fit.slope);
    rep.per_sample.push_back(std::move(r));
  }
  return rep;
}

}  // namespace fractdist
