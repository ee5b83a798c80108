#include "fractdist/mattila.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "fractdist/errors.hpp"
#include "fractdist/numerics.hpp"
#include "fractdist/parallel.hpp"

namespace fractdist {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBlockLo = 0.8;  // lower edge of the base dyadic block

double bump_raw(double u) {
  if (u <= kBlockLo || u >= 2.0) return 0.0;
  return smooth_step((u - kBlockLo) / 0.2) * smooth_step((2.0 - u) / 0.3);
}

double sample_a_max(const std::vector<EllipseSample>& samples) {
  double a = 0.0;
  for (const auto& s : samples) a = std::max(a, std::max(s.K.a1, s.K.a2));
  return a;
}

// Trapezoid over a uniform grid on [lo, hi] with at least min_nodes points
// and spacing at most max_spacing.
template <typename F>
double trapezoid(double lo, double hi, std::size_t min_nodes, double max_spacing, F&& f,
                 std::size_t* nodes_out = nullptr) {
  const double width = hi - lo;
  std::size_t n = std::max<std::size_t>(
      min_nodes, static_cast<std::size_t>(std::ceil(width / max_spacing)));
  if (nodes_out) *nodes_out = n;
  double acc = 0.5 * (f(lo) + f(hi));
  const double h = width / static_cast<double>(n);
  for (std::size_t j = 1; j < n; ++j) acc += f(lo + h * static_cast<double>(j));
  return acc * h;
}

}  // namespace

// ---------------------------------------------------------------------------
// Littlewood-Paley cutoff
// ---------------------------------------------------------------------------

double lp_bump(double u) {
  if (u <= 0.0) return 0.0;
  const double num = bump_raw(u);
  if (num == 0.0) return 0.0;
  // Only dilates whose support contains u contribute; that is a window of
  // at most two n around log2(u).
  const int n0 = static_cast<int>(std::floor(std::log2(u))) - 2;
  double den = 0.0;
  for (int n = n0; n <= n0 + 5; ++n) den += bump_raw(std::ldexp(u, -n));
  return num / den;
}

double lp_block_weight(int n, double t) { return lp_bump(std::ldexp(t, -n)); }

double lp_block_lo(int n) { return kBlockLo * std::ldexp(1.0, n); }
double lp_block_hi(int n) { return std::ldexp(2.0, n); }

double psi_cutoff_1d(double x) {
  if (x <= 0.5 || x >= 4.0) return 0.0;
  return smooth_step((x - 0.5) / 0.5) * smooth_step((4.0 - x) / 2.0);
}

double psi_cutoff(double a1, double a2) { return psi_cutoff_1d(a1) * psi_cutoff_1d(a2); }

// ---------------------------------------------------------------------------
// Averages of |mu_hat|^2
// ---------------------------------------------------------------------------

std::size_t recommended_angle_nodes(double t, double direction_scale) {
  const double bandwidth = kTwoPi * std::fabs(t) * std::sqrt(2.0) * direction_scale;
  return std::max<std::size_t>(256, next_pow2(static_cast<std::size_t>(1.3 * bandwidth + 128.0)));
}

namespace {

void check_spherical_resolution(const DiscreteMeasure& mu, double t, double a_max) {
  if (std::fabs(t) * std::max(1.0, a_max) > mu.max_frequency() * (1.0 + 1e-12)) {
    throw resolution_error("spherical average: frequency beyond 1/scale of the construction");
  }
}

}  // namespace

double spherical_average(const DiscreteMeasure& mu, double t, const Ellipse& K,
                         std::size_t nodes, bool exclude_diagonal) {
  K.validate();
  check_spherical_resolution(mu, t, std::max(K.a1, K.a2));
  if (nodes < 256 || (nodes & (nodes - 1)) != 0) {
    throw std::invalid_argument("spherical_average: nodes must be a power of two >= 256");
  }
  const auto& atoms = mu.atoms();
  std::vector<double> vals(nodes);
  parallel_for(nodes, [&](std::size_t j) {
    const double th = kTwoPi * static_cast<double>(j) / static_cast<double>(nodes);
    const Vec2 dir = ellipse_direction(th, K);
    const Vec2 xi{t * dir.x, t * dir.y};
    double re = 0.0, im = 0.0;
    for (const Atom& a : atoms) {
      const double ph = -kTwoPi * (a.p.x * xi.x + a.p.y * xi.y);
      re += a.w * std::cos(ph);
      im += a.w * std::sin(ph);
    }
    vals[j] = re * re + im * im;
  });
  double acc = 0.0;
  for (double v : vals) acc += v;
  double out = acc * kTwoPi / static_cast<double>(nodes);
  if (exclude_diagonal) out -= kTwoPi * mu.diagonal_mass();
  return out;
}

double spherical_average_pair_sum(const DiscreteMeasure& mu, double t, const Ellipse& K,
                                  bool exclude_diagonal) {
  K.validate();
  check_spherical_resolution(mu, t, std::max(K.a1, K.a2));
  const auto& atoms = mu.atoms();
  const std::size_t n = atoms.size();
  std::vector<double> partial(n, 0.0);
  parallel_for(n, [&](std::size_t j) {
    double acc = 0.0;
    for (std::size_t l = j + 1; l < n; ++l) {
      const double d = ellipse_norm(atoms[j].p - atoms[l].p, K);
      acc += atoms[j].w * atoms[l].w * bessel_j0(kTwoPi * t * d);
    }
    partial[j] = acc;
  });
  double off = 0.0;
  for (double v : partial) off += v;
  double out = kTwoPi * 2.0 * off;
  if (!exclude_diagonal) out += kTwoPi * mu.diagonal_mass();
  return out;
}

double boundary_average(const DiscreteMeasure& mu, double t, const ConvexBody& K,
                        std::size_t nodes, bool exclude_diagonal) {
  if (nodes < 256 || (nodes & (nodes - 1)) != 0) {
    throw std::invalid_argument("boundary_average: nodes must be a power of two >= 256");
  }
  double bmax = 0.0;
  if (K.is_ellipse()) {
    bmax = std::max(K.ellipse_shape()->b1, K.ellipse_shape()->b2);
  } else {
    for (const Vec2& p : K.samples()) bmax = std::max(bmax, norm(p));
  }
  if (std::fabs(t) * bmax > mu.max_frequency() * (1.0 + 1e-12)) {
    throw resolution_error("boundary_average: frequency beyond 1/scale of the construction");
  }
  const auto& atoms = mu.atoms();
  std::vector<double> vals(nodes);
  std::vector<double> speeds(nodes);
  parallel_for(nodes, [&](std::size_t j) {
    const double th = kTwoPi * static_cast<double>(j) / static_cast<double>(nodes);
    const Vec2 g = K.boundary_point(th);
    const Vec2 xi{t * g.x, t * g.y};
    double re = 0.0, im = 0.0;
    for (const Atom& a : atoms) {
      const double ph = -kTwoPi * (a.p.x * xi.x + a.p.y * xi.y);
      re += a.w * std::cos(ph);
      im += a.w * std::sin(ph);
    }
    speeds[j] = K.boundary_speed(th);
    vals[j] = (re * re + im * im) * speeds[j];
  });
  double acc = 0.0, per = 0.0;
  for (std::size_t j = 0; j < nodes; ++j) {
    acc += vals[j];
    per += speeds[j];
  }
  double out = acc * kTwoPi / static_cast<double>(nodes);
  if (exclude_diagonal) {
    // The diagonal contributes exactly diagonal_mass * perimeter; use the
    // same quadrature for the perimeter so the subtraction is consistent.
    out -= mu.diagonal_mass() * per * kTwoPi / static_cast<double>(nodes);
  }
  return out;
}

PairDistanceProfile::PairDistanceProfile(const DiscreteMeasure& mu, const Ellipse& K,
                                         std::size_t bins) {
  K.validate();
  if (bins < 1024) throw std::invalid_argument("PairDistanceProfile: need >= 1024 bins");
  const auto& atoms = mu.atoms();
  const std::size_t n = atoms.size();
  diag_ = mu.diagonal_mass();

  const double c = std::cos(K.phi), s = std::sin(K.phi);
  auto pair_norm = [&](std::size_t j, std::size_t l) {
    const Vec2 d = atoms[j].p - atoms[l].p;
    const double u = K.a1 * (d.x * c - d.y * s);
    const double v = K.a2 * (d.x * s + d.y * c);
    return std::hypot(u, v);
  };

  // |d|_{a,phi} <= max(a1,a2) |d| <= max(a1,a2) sqrt(2) on [0,1]^2.
  smax_ = std::max(K.a1, K.a2) * std::sqrt(2.0) * (1.0 + 1e-12);

  // Fixed chunking so the accumulation order (hence the result) does not
  // depend on the thread count.
  const std::size_t chunks = 32;
  std::vector<std::vector<double>> W(chunks), Ws(chunks);
  parallel_for(chunks, [&](std::size_t ci) {
    auto& Wl = W[ci];
    auto& Wsl = Ws[ci];
    Wl.assign(bins, 0.0);
    Wsl.assign(bins, 0.0);
    const std::size_t lo = n * ci / chunks, hi = n * (ci + 1) / chunks;
    for (std::size_t j = lo; j < hi; ++j) {
      for (std::size_t l = j + 1; l < n; ++l) {
        const double d = pair_norm(j, l);
        const double ww = atoms[j].w * atoms[l].w;
        std::size_t b = static_cast<std::size_t>(d / smax_ * static_cast<double>(bins));
        if (b >= bins) b = bins - 1;
        Wl[b] += ww;
        Wsl[b] += ww * d;
      }
    }
  });
  std::vector<double> Wt(bins, 0.0), Wst(bins, 0.0);
  for (std::size_t ci = 0; ci < chunks; ++ci) {
    for (std::size_t b = 0; b < bins; ++b) {
      Wt[b] += W[ci][b];
      Wst[b] += Ws[ci][b];
    }
  }
  for (std::size_t b = 0; b < bins; ++b) {
    if (Wt[b] > 0.0) {
      w_.push_back(Wt[b]);
      s_.push_back(Wst[b] / Wt[b]);
    }
  }
}

double PairDistanceProfile::spherical_average(double t, bool exclude_diagonal) const {
  double acc = 0.0;
  const double f = kTwoPi * t;
  const std::size_t m = s_.size();
  for (std::size_t b = 0; b < m; ++b) acc += w_[b] * bessel_j0(f * s_[b]);
  double out = kTwoPi * 2.0 * acc;
  if (!exclude_diagonal) out += kTwoPi * diag_;
  return out;
}

// ---------------------------------------------------------------------------
// Mattila integrals
// ---------------------------------------------------------------------------

namespace {

// S(t) evaluator for one ellipse sample, honoring the method choice.
struct SEvaluator {
  const DiscreteMeasure& mu;
  const Ellipse& K;
  const MattilaResolution& res;
  SpectralMethod method;
  const PairDistanceProfile* profile;  // set when method == pair_profile

  double operator()(double t) const {
    if (method == SpectralMethod::pair_profile) {
      return profile->spherical_average(t, res.exclude_diagonal);
    }
    const std::size_t nodes = res.angle_nodes != 0
                                  ? res.angle_nodes
                                  : recommended_angle_nodes(t, std::max(K.a1, K.a2));
    return spherical_average(mu, t, K, nodes, res.exclude_diagonal);
  }
};

double mattila_sharp(const DiscreteMeasure& mu, const Ellipse& K, double t_max,
                     const MattilaResolution& res, SpectralMethod method,
                     const PairDistanceProfile* profile) {
  if (!(t_max > 1.0)) throw std::invalid_argument("mattila_integral: t_max must exceed 1");
  if (t_max * std::max(1.0, std::max(K.a1, K.a2)) > mu.max_frequency() * (1.0 + 1e-12)) {
    throw resolution_error("mattila_integral: t_max beyond 1/scale of the construction");
  }
  SEvaluator S{mu, K, res, method, profile};
  auto f = [&](double t) {
    const double v = S(t);
    return v * v * t;
  };
  double acc = 0.0;
  double lo = 1.0;
  while (lo < t_max) {
    const double hi = std::min(2.0 * lo, t_max);
    acc += trapezoid(lo, hi, res.nodes_per_block, res.max_spacing, f);
    lo = hi;
  }
  return acc;
}

}  // namespace

double mattila_integral(const DiscreteMeasure& mu, const Ellipse& K, double t_max,
                        const MattilaResolution& res, SpectralMethod method) {
  if (method == SpectralMethod::pair_profile) {
    PairDistanceProfile profile(mu, K, res.profile_bins);
    return mattila_sharp(mu, K, t_max, res, method, &profile);
  }
  return mattila_sharp(mu, K, t_max, res, method, nullptr);
}

std::vector<EllipseSample> halton_ellipse_samples(std::size_t count, SampleBox box) {
  std::vector<EllipseSample> out;
  out.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    EllipseSample s;
    if (box == SampleBox::unit) {
      s.K.a1 = 1.0 + halton(i, 2);
      s.K.a2 = 1.0 + halton(i, 3);
      s.K.phi = std::numbers::pi * halton(i, 5);
      s.weight = 1.0;
    } else {
      s.K.a1 = 0.5 + 3.5 * halton(i, 2);
      s.K.a2 = 0.5 + 3.5 * halton(i, 3);
      s.K.phi = std::numbers::pi * halton(i, 5);
      s.weight = psi_cutoff(s.K.a1, s.K.a2);
    }
    out.push_back(s);
  }
  return out;
}

double averaged_mattila(const DiscreteMeasure& mu, const std::vector<EllipseSample>& samples,
                        double t_max, const MattilaResolution& res, SpectralMethod method) {
  if (samples.empty()) throw std::invalid_argument("averaged_mattila: no samples");
  double num = 0.0, den = 0.0;
  for (const auto& s : samples) {
    if (s.weight == 0.0) continue;
    num += s.weight * mattila_integral(mu, s.K, t_max, res, method);
    den += s.weight;
  }
  if (den == 0.0) throw std::invalid_argument("averaged_mattila: all sample weights vanish");
  return num / den;
}

std::string DyadicBlockReport::to_json() const {
  char buf[320];
  std::snprintf(buf, sizeof(buf),
                "{\"n\": %d, \"value\": %.17g, \"t_lo\": %.17g, \"t_hi\": %.17g, "
                "\"t_nodes\": %zu, \"profile_bins\": %zu, \"samples\": %zu, "
                "\"diagonal_excluded\": %s}",
                n, value, t_lo, t_hi, t_nodes, profile_bins, sample_count,
                diagonal_excluded ? "true" : "false");
  return buf;
}

namespace {

void check_block_resolution(const DiscreteMeasure& mu, double a_max, int n) {
  const double reach = std::max(2.0, a_max) * std::ldexp(2.0, n);  // a_max * 2^{n+1}
  if (reach > mu.max_frequency() * (1.0 + 1e-12)) {
    throw resolution_error("dyadic block: frequency reach beyond 1/scale of the construction");
  }
}

DyadicBlockReport block_from_profiles(const std::vector<PairDistanceProfile>& profiles,
                                      const std::vector<EllipseSample>& samples, int n,
                                      const MattilaResolution& res) {
  DyadicBlockReport rep;
  rep.n = n;
  rep.t_lo = lp_block_lo(n);
  rep.t_hi = lp_block_hi(n);
  rep.profile_bins = res.profile_bins;
  rep.sample_count = samples.size();
  rep.diagonal_excluded = res.exclude_diagonal;
  double num = 0.0, den = 0.0;
  std::size_t nodes = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].weight == 0.0) continue;
    auto f = [&](double t) {
      const double S = profiles[i].spherical_average(t, res.exclude_diagonal);
      return S * S * t * lp_block_weight(n, t);
    };
    num += samples[i].weight * trapezoid(rep.t_lo, rep.t_hi, res.nodes_per_block,
                                         res.max_spacing, f, &nodes);
    den += samples[i].weight;
  }
  if (den == 0.0) throw std::invalid_argument("dyadic_block: all sample weights vanish");
  rep.value = num / den;
  rep.t_nodes = nodes;
  return rep;
}

}  // namespace

DyadicBlockReport dyadic_block(const DiscreteMeasure& mu,
                               const std::vector<EllipseSample>& samples, int n,
                               const MattilaResolution& res) {
  if (n < 0) throw std::invalid_argument("dyadic_block: n must be >= 0");
  if (samples.empty()) throw std::invalid_argument("dyadic_block: no samples");
  check_block_resolution(mu, sample_a_max(samples), n);
  std::vector<PairDistanceProfile> profiles;
  profiles.reserve(samples.size());
  for (const auto& s : samples) profiles.emplace_back(mu, s.K, res.profile_bins);
  return block_from_profiles(profiles, samples, n, res);
}

int max_resolved_block(const DiscreteMeasure& mu, const std::vector<EllipseSample>& samples) {
  const double a = std::max(2.0, sample_a_max(samples));
  int n = -1;
  while (a * std::ldexp(2.0, n + 1) <= mu.max_frequency() * (1.0 + 1e-12)) ++n;
  return n;
}

double BlockDecomposition::block_sum() const {
  double acc = 0.0;
  for (const auto& b : blocks) acc += b.value;
  return acc;
}

BlockDecomposition dyadic_decomposition(const DiscreteMeasure& mu,
                                        const std::vector<EllipseSample>& samples, int n_max,
                                        const MattilaResolution& res) {
  if (n_max < 0) throw std::invalid_argument("dyadic_decomposition: n_max must be >= 0");
  if (samples.empty()) throw std::invalid_argument("dyadic_decomposition: no samples");
  check_block_resolution(mu, sample_a_max(samples), n_max);

  std::vector<PairDistanceProfile> profiles;
  profiles.reserve(samples.size());
  for (const auto& s : samples) profiles.emplace_back(mu, s.K, res.profile_bins);

  BlockDecomposition out;
  for (int n = 0; n <= n_max; ++n) {
    out.blocks.push_back(block_from_profiles(profiles, samples, n, res));
  }

  // Windowed reference on an independent grid: per-octave uniform grids with
  // a finer, incommensurate spacing.
  const double t_hi = lp_block_hi(n_max);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].weight == 0.0) continue;
    auto f = [&](double t) {
      double W = 0.0;
      for (int n = 0; n <= n_max; ++n) W += lp_block_weight(n, t);
      const double S = profiles[i].spherical_average(t, res.exclude_diagonal);
      return S * S * t * W;
    };
    double acc = 0.0;
    double lo = kBlockLo;
    while (lo < t_hi) {
      const double hi = std::min(2.0 * lo, t_hi);
      acc += trapezoid(lo, hi, res.nodes_per_block * 2 + 7, res.max_spacing * 0.71, f);
      lo = hi;
    }
    num += samples[i].weight * acc;
    den += samples[i].weight;
  }
  out.windowed_total = num / den;
  return out;
}

// ---------------------------------------------------------------------------
// Distance measures
// ---------------------------------------------------------------------------

DistanceMeasure::DistanceMeasure(std::vector<DistanceSample> samples, double excluded_diagonal,
                                 std::string body_label)
    : samples_(std::move(samples)), excluded_diagonal_(excluded_diagonal),
      body_(std::move(body_label)) {
  for (const auto& s : samples_) {
    if (!(s.s > 0.0)) {
      throw std::invalid_argument("DistanceMeasure: distances must be strictly positive");
    }
    if (!(s.w >= 0.0)) throw std::invalid_argument("DistanceMeasure: negative weight");
  }
}

double DistanceMeasure::total_weight() const {
  double acc = 0.0;
  for (const auto& s : samples_) acc += s.w;
  return acc;
}

DistanceMeasure distance_measure(const DiscreteMeasure& mu, const ConvexBody& Kstar) {
  const auto& atoms = mu.atoms();
  const std::size_t n = atoms.size();
  std::vector<DistanceSample> raw;
  raw.reserve(n * (n - 1) / 2);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = j + 1; l < n; ++l) {
      const double d = minkowski_norm(Kstar, atoms[j].p - atoms[l].p);
      if (!(d > 0.0)) {
        throw std::invalid_argument("distance_measure: coincident distinct atoms");
      }
      raw.push_back({d, 2.0 * atoms[j].w * atoms[l].w});  // both orientations
    }
  }
  std::sort(raw.begin(), raw.end(), [](const DistanceSample& a, const DistanceSample& b) {
    return a.s < b.s;
  });
  std::vector<DistanceSample> agg;
  for (const auto& r : raw) {
    if (!agg.empty() && agg.back().s == r.s) {
      agg.back().w += r.w;
    } else {
      agg.push_back(r);
    }
  }
  std::string label = Kstar.is_ellipse() ? "ellipse-gauge" : "sampled-gauge";
  return DistanceMeasure(std::move(agg), mu.diagonal_mass(), std::move(label));
}

double distance_measure_ft(const DistanceMeasure& dm, double k) {
  const double ak = std::fabs(k);
  double acc = 0.0;
  for (const auto& s : dm.samples()) {
    acc += s.w / std::sqrt(s.s) * std::cos(kTwoPi * (ak * s.s - 0.125));
  }
  return 2.0 * acc;
}

double distance_measure_ft_pairs(const DiscreteMeasure& mu, const ConvexBody& K, double k) {
  const double ak = std::fabs(k);
  const auto& atoms = mu.atoms();
  const std::size_t n = atoms.size();
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = j + 1; l < n; ++l) {
      const double rho = support_function(K, atoms[j].p - atoms[l].p);
      if (!(rho > 0.0)) {
        throw std::invalid_argument("distance_measure_ft_pairs: coincident atoms");
      }
      acc += 2.0 * atoms[j].w * atoms[l].w / std::sqrt(rho) *
             std::cos(kTwoPi * (ak * rho - 0.125));
    }
  }
  return 2.0 * acc;
}

ConsistencyReport distance_ft_consistency(const DiscreteMeasure& mu, const ConvexBody& K,
                                          double k_lo, double k_hi, std::size_t n_k,
                                          std::size_t angle_nodes) {
  if (!(k_hi > k_lo) || !(k_lo > 0.0) || n_k < 3) {
    throw std::invalid_argument("distance_ft_consistency: bad k grid");
  }
  const DistanceMeasure dm = distance_measure(mu, dual_body(K));
  double bmax = 0.0;
  if (K.is_ellipse()) {
    bmax = std::max(K.ellipse_shape()->b1, K.ellipse_shape()->b2);
  } else {
    for (const Vec2& p : K.samples()) bmax = std::max(bmax, norm(p));
  }

  ConsistencyReport rep;
  rep.alpha = mu.alpha();
  rep.energy = energy_integral(mu, mu.alpha());
  rep.k.resize(n_k);
  rep.residual.resize(n_k);
  for (std::size_t i = 0; i < n_k; ++i) {
    rep.k[i] = k_lo * std::pow(k_hi / k_lo, static_cast<double>(i) / static_cast<double>(n_k - 1));
  }
  parallel_for(n_k, [&](std::size_t i) {
    const double k = rep.k[i];
    const std::size_t nodes =
        angle_nodes != 0 ? angle_nodes : recommended_angle_nodes(k, bmax);
    const double S = boundary_average(mu, k, K, nodes, /*exclude_diagonal=*/true);
    const double nu = distance_measure_ft(dm, k);
    rep.residual[i] = std::fabs(nu - std::sqrt(k) * S);
  });
  rep.fit = fit_exponent(rep.k, rep.residual, k_lo, k_hi);
  double c = 0.0;
  for (std::size_t i = 0; i < n_k; ++i) {
    c = std::max(c, rep.residual[i] / (std::pow(rep.k[i], 0.5 - rep.alpha) * rep.energy));
  }
  rep.bound_constant = c;
  return rep;
}

}  // namespace fractdist
