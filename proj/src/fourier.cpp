#include "fractdist/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fractdist/errors.hpp"
#include "fractdist/numerics.hpp"
#include "fractdist/parallel.hpp"

namespace fractdist {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

std::complex<double> measure_ft(const DiscreteMeasure& mu, Vec2 xi) {
  if (!std::isfinite(xi.x) || !std::isfinite(xi.y)) {
    throw std::invalid_argument("measure_ft: non-finite frequency");
  }
  double re = 0.0, im = 0.0;
  for (const Atom& a : mu.atoms()) {
    const double ph = -kTwoPi * (a.p.x * xi.x + a.p.y * xi.y);
    re += a.w * std::cos(ph);
    im += a.w * std::sin(ph);
  }
  return {re, im};
}

double arc_measure_ft(const ConvexBody& K, double t, Vec2 x, std::size_t nodes) {
  if (!(t > 0.0)) throw std::invalid_argument("arc_measure_ft: t must be positive");
  if (nodes < 256 || !is_pow2(nodes)) {
    throw std::invalid_argument("arc_measure_ft: nodes must be a power of two >= 256");
  }
  double acc = 0.0;
  const double h = kTwoPi / static_cast<double>(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    const double th = h * static_cast<double>(j);
    const Vec2 g = K.boundary_point(th);
    acc += std::cos(kTwoPi * t * dot(x, g)) * K.boundary_speed(th);
  }
  return acc * h;
}

std::size_t recommended_arc_nodes(const ConvexBody& K, double t, Vec2 x) {
  // The integrand cos(2 pi t x.gamma(theta)) has angular bandwidth
  // ~A = 2 pi t rho*(x) (Bessel coefficients die superexponentially past A),
  // so trapezoid nodes beyond ~1.5 A sit well past the aliasing knee.
  const double A = kTwoPi * t * support_function(K, x);
  return std::max<std::size_t>(256, next_pow2(static_cast<std::size_t>(1.5 * A + 128.0)));
}

double arc_measure_ft_auto(const ConvexBody& K, double t, Vec2 x, double tol,
                           std::size_t max_nodes) {
  std::size_t n = recommended_arc_nodes(K, t, x);
  double prev = arc_measure_ft(K, t, x, n);
  while (n * 2 <= max_nodes) {
    n *= 2;
    const double cur = arc_measure_ft(K, t, x, n);
    if (std::fabs(cur - prev) < tol) return cur;
    prev = cur;
  }
  throw std::runtime_error("arc_measure_ft_auto: node doubling did not converge");
}

double stationary_phase_leading(const ConvexBody& K, double t, Vec2 x) {
  const double rho = support_function(K, x);
  const double z = t * rho;
  if (!(z >= 1.0)) {
    throw std::invalid_argument("stationary_phase_leading: t rho*(x) must be >= 1");
  }
  return 2.0 / std::sqrt(z) * std::cos(kTwoPi * (z - 0.125));
}

double stationary_phase_leading_curved(const ConvexBody& K, double t, Vec2 x) {
  const double rho = support_function(K, x);
  const double z = t * rho;
  if (!(z >= 1.0)) {
    throw std::invalid_argument("stationary_phase_leading_curved: t rho*(x) must be >= 1");
  }
  const double kappa = curvature_at_normal(K, x);
  return 2.0 / std::sqrt(kappa * t * norm(x)) * std::cos(kTwoPi * (z - 0.125));
}

std::string ExponentFit::to_json() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "{\"slope\": %.17g, \"intercept\": %.17g, \"r_squared\": %.17g, "
                "\"range\": [%.17g, %.17g]}",
                slope, intercept, r_squared, t_min, t_max);
  return buf;
}

ExponentFit fit_exponent(const std::vector<double>& grid, const std::vector<double>& values,
                         double t_min, double t_max) {
  if (grid.size() != values.size()) throw std::invalid_argument("fit_exponent: size mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < t_min || grid[i] > t_max) continue;
    if (!(values[i] > 0.0)) {
      throw std::invalid_argument("fit_exponent: nonpositive value inside the fit range");
    }
    lx.push_back(std::log(grid[i]));
    ly.push_back(std::log(values[i]));
  }
  if (lx.size() < 3) throw std::invalid_argument("fit_exponent: need >= 3 points in range");
  const LineFit lf = least_squares_line(lx, ly);
  ExponentFit fit;
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.r_squared = lf.r_squared;
  fit.t_min = t_min;
  fit.t_max = t_max;
  return fit;
}

ExponentFit fit_exponent_envelope(const std::vector<double>& grid,
                                  const std::vector<double>& values, std::size_t window) {
  if (grid.size() != values.size() || window == 0) {
    throw std::invalid_argument("fit_exponent_envelope: bad input");
  }
  const std::size_t nw = grid.size() / window;
  if (nw < 3) throw std::invalid_argument("fit_exponent_envelope: need >= 3 windows");
  std::vector<double> lx, ly;
  for (std::size_t wi = 0; wi < nw; ++wi) {
    double lg = 0.0, vmax = 0.0;
    for (std::size_t j = wi * window; j < (wi + 1) * window; ++j) {
      lg += std::log(grid[j]);
      vmax = std::max(vmax, values[j]);
    }
    if (!(vmax > 0.0)) throw std::invalid_argument("fit_exponent_envelope: empty window");
    lx.push_back(lg / static_cast<double>(window));
    ly.push_back(std::log(vmax));
  }
  const LineFit lf = least_squares_line(lx, ly);
  ExponentFit fit;
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.r_squared = lf.r_squared;
  fit.t_min = grid.front();
  fit.t_max = grid.back();
  return fit;
}

DecayReport boundary_decay_fit(const ConvexBody& K, std::size_t directions, double t_lo,
                               double t_hi, std::size_t points_per_octave, std::size_t window) {
  if (!(t_hi > t_lo) || !(t_lo > 0.0)) throw std::invalid_argument("boundary_decay_fit: bad range");
  // Validity gate: non-vanishing curvature.
  double kmin = 1e300;
  const std::size_t probe = K.is_ellipse() ? 64 : K.sample_count();
  for (std::size_t i = 0; i < probe; ++i) {
    kmin = std::min(kmin, curvature(K, kTwoPi * static_cast<double>(i) / static_cast<double>(probe)));
  }
  if (!(kmin > 1e-6)) {
    throw std::invalid_argument("boundary_decay_fit: curvature vanishes (no valid decay regime)");
  }

  const double octaves = std::log2(t_hi / t_lo);
  const std::size_t npts = std::max<std::size_t>(
      3 * window, static_cast<std::size_t>(octaves * static_cast<double>(points_per_octave)));
  DecayReport rep;
  rep.grid.resize(npts);
  rep.envelope.assign(npts, 0.0);
  for (std::size_t i = 0; i < npts; ++i) {
    rep.grid[i] = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / static_cast<double>(npts - 1));
  }
  std::vector<Vec2> dirs;
  for (std::size_t d = 0; d < directions; ++d) {
    dirs.push_back(unit_vector(std::numbers::pi * static_cast<double>(d) /
                               static_cast<double>(directions)));
  }
  parallel_for(npts, [&](std::size_t i) {
    double vmax = 0.0;
    for (const Vec2& dir : dirs) {
      const std::size_t nodes = recommended_arc_nodes(K, rep.grid[i], dir);
      vmax = std::max(vmax, std::fabs(arc_measure_ft(K, rep.grid[i], dir, nodes)));
    }
    rep.envelope[i] = vmax;
  });
  rep.fit = fit_exponent_envelope(rep.grid, rep.envelope, window);
  return rep;
}

void AverageSeries::validate() const {
  if (grid.size() != values.size() || grid.empty()) {
    throw std::invalid_argument("AverageSeries: grid/value size mismatch");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("AverageSeries: grid must be strictly increasing");
    }
    if (!std::isfinite(values[i]) || values[i] < 0.0) {
      throw std::invalid_argument("AverageSeries: values must be finite and nonnegative");
    }
  }
}

std::string AverageSeries::to_csv(const std::string& xlabel, const std::string& ylabel) const {
  std::ostringstream out;
  out << "# " << ylabel << " against " << xlabel;
  if (!body.empty()) out << "; body " << body;
  if (!measure.empty()) out << "; measure " << measure;
  out << "\n" << xlabel << "," << ylabel << "\n";
  char buf[96];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", grid[i], values[i]);
    out << buf;
  }
  return out.str();
}

}  // namespace fractdist
