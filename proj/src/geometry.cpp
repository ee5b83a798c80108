#include "fractdist/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fractdist/errors.hpp"
#include "fractdist/numerics.hpp"

namespace fractdist {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_2pi(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ellipse (norm parameters)
// ---------------------------------------------------------------------------

void Ellipse::validate() const {
  if (!(a1 > 0.0) || !(a2 > 0.0) || !std::isfinite(a1) || !std::isfinite(a2) ||
      !std::isfinite(phi)) {
    throw std::invalid_argument("Ellipse: a1, a2 must be positive and finite");
  }
}

std::string Ellipse::to_text() const {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g", a1, a2, phi);
  return buf;
}

Ellipse Ellipse::from_text(const std::string& text) {
  Ellipse e;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &e.a1, &e.a2, &e.phi, &extra) != 3) {
    throw std::invalid_argument("Ellipse::from_text: expected \"a1,a2,phi\", got: " + text);
  }
  e.validate();
  return e;
}

double ellipse_norm(Vec2 x, const Ellipse& K) {
  K.validate();
  if (!std::isfinite(x.x) || !std::isfinite(x.y)) {
    throw std::invalid_argument("ellipse_norm: non-finite input");
  }
  const double c = std::cos(K.phi), s = std::sin(K.phi);
  const double u = K.a1 * (x.x * c - x.y * s);
  const double v = K.a2 * (x.x * s + x.y * c);
  return std::hypot(u, v);
}

Vec2 map_circle_point(Vec2 omega, const Ellipse& K) {
  K.validate();
  if (std::fabs(norm(omega) - 1.0) > 1e-12) {
    throw std::invalid_argument("map_circle_point: omega must be a unit vector");
  }
  const Vec2 d{K.a1 * omega.x, K.a2 * omega.y};
  return rotate(d, -K.phi);
}

Vec2 ellipse_direction(double theta, const Ellipse& K) {
  const Vec2 d{K.a1 * std::cos(theta), K.a2 * std::sin(theta)};
  return rotate(d, -K.phi);
}

void LinearTransform::validate() const {
  if (!(det() > 0.0)) throw std::invalid_argument("LinearTransform: determinant must be positive");
  const double c = std::cos(rotation), s = std::sin(rotation);
  const double e00 = dilation1 * c, e01 = -dilation1 * s;
  const double e10 = dilation2 * s, e11 = dilation2 * c;
  if (std::fabs(e00 - m00) > 1e-12 || std::fabs(e01 - m01) > 1e-12 ||
      std::fabs(e10 - m10) > 1e-12 || std::fabs(e11 - m11) > 1e-12) {
    throw std::invalid_argument("LinearTransform: factored form does not recompose");
  }
}

LinearTransform transform_from_ellipse(const Ellipse& K) {
  K.validate();
  const double c = std::cos(K.phi), s = std::sin(K.phi);
  LinearTransform T;
  T.m00 = K.a1 * c;
  T.m01 = -K.a1 * s;
  T.m10 = K.a2 * s;
  T.m11 = K.a2 * c;
  T.dilation1 = K.a1;
  T.dilation2 = K.a2;
  T.rotation = K.phi;
  return T;
}

// ---------------------------------------------------------------------------
// ConvexBody
// ---------------------------------------------------------------------------

ConvexBody ConvexBody::disk() { return ellipse(1.0, 1.0, 0.0); }

ConvexBody ConvexBody::ellipse(double b1, double b2, double psi) {
  if (!(b1 > 0.0) || !(b2 > 0.0)) {
    throw std::invalid_argument("ConvexBody::ellipse: semi-axes must be positive");
  }
  ConvexBody K;
  K.shape_ = EllipseShape{b1, b2, psi};
  return K;
}

ConvexBody ConvexBody::from_samples(std::vector<Vec2> boundary) {
  const std::size_t n = boundary.size();
  if (n < 16 || n % 2 != 0) {
    throw std::invalid_argument("ConvexBody::from_samples: need an even number (>= 16) of samples");
  }
  ConvexBody K;
  K.pts_ = std::move(boundary);
  // Normalize to counterclockwise orientation.
  double area2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) area2 += cross(K.pts_[i], K.pts_[(i + 1) % n]);
  if (area2 < 0.0) std::reverse(K.pts_.begin(), K.pts_.end());
  K.build_sampled_data();
  return K;
}

void ConvexBody::build_sampled_data() {
  const std::size_t n = pts_.size();
  double scale = 0.0;
  for (const Vec2& p : pts_) scale = std::max(scale, norm(p));
  if (!(scale > 0.0)) throw std::invalid_argument("ConvexBody: degenerate boundary");

  // Origin symmetry: opposite parameter, opposite point.
  for (std::size_t i = 0; i < n / 2; ++i) {
    const Vec2 d = pts_[i] + pts_[i + n / 2];
    if (norm(d) > 1e-9 * scale) {
      throw std::invalid_argument("ConvexBody: boundary is not symmetric about the origin");
    }
  }
  // Convexity: consecutive edges must turn consistently left.
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = pts_[(i + 1) % n] - pts_[i];
    const Vec2 e1 = pts_[(i + 2) % n] - pts_[(i + 1) % n];
    if (!(cross(e0, e1) > 0.0)) {
      throw std::invalid_argument("ConvexBody: boundary is not strictly convex");
    }
  }

  const double h = kTwoPi / static_cast<double>(n);
  speed_.resize(n);
  curv_.resize(n);
  polar_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 pm = pts_[(i + n - 1) % n];
    const Vec2 pp = pts_[(i + 1) % n];
    const Vec2 d1 = (1.0 / (2.0 * h)) * (pp - pm);
    const Vec2 d2 = (1.0 / (h * h)) * (pp - 2.0 * pts_[i] + pm);
    const double sp = norm(d1);
    speed_[i] = sp;
    curv_[i] = cross(d1, d2) / (sp * sp * sp);
    if (!(curv_[i] > 0.0)) {
      throw std::invalid_argument("ConvexBody: curvature must be strictly positive everywhere");
    }
  }
  // Polar angles, unwrapped to an increasing sequence (star-shaped about 0).
  double prev = std::atan2(pts_[0].y, pts_[0].x);
  polar_[0] = prev;
  for (std::size_t i = 1; i < n; ++i) {
    double a = std::atan2(pts_[i].y, pts_[i].x);
    while (a < prev) a += kTwoPi;
    polar_[i] = a;
    prev = a;
  }
  if (polar_[n - 1] - polar_[0] >= kTwoPi) {
    throw std::invalid_argument("ConvexBody: boundary winds more than once about the origin");
  }
}

std::size_t ConvexBody::sample_count() const {
  return shape_ ? 0 : pts_.size();
}

Vec2 ConvexBody::boundary_point(double theta) const {
  if (shape_) {
    const Vec2 p{shape_->b1 * std::cos(theta), shape_->b2 * std::sin(theta)};
    return rotate(p, shape_->psi);
  }
  const std::size_t n = pts_.size();
  const double u = wrap_2pi(theta) / kTwoPi * static_cast<double>(n);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(u), n - 1);
  const double f = u - static_cast<double>(i);
  const Vec2 a = pts_[i], b = pts_[(i + 1) % n];
  return {a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)};
}

double ConvexBody::boundary_speed(double theta) const {
  if (shape_) {
    return std::hypot(shape_->b1 * std::sin(theta), shape_->b2 * std::cos(theta));
  }
  const std::size_t n = pts_.size();
  const double u = wrap_2pi(theta) / kTwoPi * static_cast<double>(n);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(u), n - 1);
  const double f = u - static_cast<double>(i);
  return speed_[i] + f * (speed_[(i + 1) % n] - speed_[i]);
}

const std::vector<Vec2>& ConvexBody::samples() const {
  if (shape_) {
    throw std::logic_error("ConvexBody::samples: exact ellipse carries no sample list");
  }
  return pts_;
}

std::string ConvexBody::to_csv() const {
  std::ostringstream out;
  out << "theta,x,y\n";
  char buf[128];
  if (shape_) {
    const std::size_t n = 1 << 12;
    for (std::size_t i = 0; i < n; ++i) {
      const double th = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
      const Vec2 p = boundary_point(th);
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", th, p.x, p.y);
      out << buf;
    }
  } else {
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      const double th = kTwoPi * static_cast<double>(i) / static_cast<double>(pts_.size());
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", th, pts_[i].x, pts_[i].y);
      out << buf;
    }
  }
  return out.str();
}

ConvexBody ConvexBody::from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::vector<Vec2> pts;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 't') continue;
    double th, x, y;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &th, &x, &y) == 3) pts.push_back({x, y});
  }
  return from_samples(std::move(pts));
}

// ---------------------------------------------------------------------------
// Support function, gauge, dual, curvature
// ---------------------------------------------------------------------------

double support_function(const ConvexBody& K, Vec2 x) {
  if (!std::isfinite(x.x) || !std::isfinite(x.y)) {
    throw std::invalid_argument("support_function: non-finite input");
  }
  if (K.shape_) {
    const auto& e = *K.shape_;
    const double c = std::cos(e.psi), s = std::sin(e.psi);
    const double u = x.x * c + x.y * s;    // component along the b1 axis
    const double v = -x.x * s + x.y * c;   // component along the b2 axis
    return std::hypot(e.b1 * u, e.b2 * v);
  }
  const auto& pts = K.pts_;
  const std::size_t n = pts.size();
  std::size_t best = 0;
  double fbest = dot(x, pts[0]);
  for (std::size_t i = 1; i < n; ++i) {
    const double f = dot(x, pts[i]);
    if (f > fbest) {
      fbest = f;
      best = i;
    }
  }
  // Parabolic refinement through the winning sample and its neighbors.
  const double fm = dot(x, pts[(best + n - 1) % n]);
  const double fp = dot(x, pts[(best + 1) % n]);
  const double denom = fm - 2.0 * fbest + fp;
  if (denom < 0.0) {
    const double delta = 0.5 * (fm - fp) / denom;
    if (std::fabs(delta) <= 1.0) {
      return fbest - 0.25 * (fm - fp) * delta;
    }
  }
  return fbest;
}

double minkowski_norm(const ConvexBody& K, Vec2 x) {
  const double r = norm(x);
  if (r == 0.0) return 0.0;
  if (!std::isfinite(r)) throw std::invalid_argument("minkowski_norm: non-finite input");
  if (K.shape_) {
    const auto& e = *K.shape_;
    const double c = std::cos(e.psi), s = std::sin(e.psi);
    const double u = x.x * c + x.y * s;
    const double v = -x.x * s + x.y * c;
    return std::hypot(u / e.b1, v / e.b2);
  }
  // Intersect the ray through x with the inscribed polygon chord.
  const auto& pts = K.pts_;
  const auto& pol = K.polar_;
  const std::size_t n = pts.size();
  double ang = std::atan2(x.y, x.x);
  while (ang < pol[0]) ang += kTwoPi;
  auto it = std::upper_bound(pol.begin(), pol.end(), ang);
  const std::size_t i = (it == pol.begin()) ? n - 1 : static_cast<std::size_t>(it - pol.begin() - 1);
  const Vec2 a = pts[i], b = pts[(i + 1) % n];
  // Solve a + u (b - a) = rho * x/|x|; gauge = |x| / rho.
  const Vec2 d = b - a;
  const Vec2 e{x.x / r, x.y / r};
  const double den = cross(e, d);
  if (std::fabs(den) < 1e-300) return r / norm(a);
  const double rho = cross(a, d) / den;
  return r / rho;
}

ConvexBody dual_body(const ConvexBody& K) {
  if (K.shape_) {
    const auto& e = *K.shape_;
    return ConvexBody::ellipse(1.0 / e.b1, 1.0 / e.b2, e.psi);
  }
  const std::size_t n = K.samples().size();
  std::vector<Vec2> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double th = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    const Vec2 u = unit_vector(th);
    const double h = support_function(K, u);
    out[i] = (1.0 / h) * u;
  }
  return ConvexBody::from_samples(std::move(out));
}

double curvature(const ConvexBody& K, double theta) {
  if (K.shape_) {
    const auto& e = *K.shape_;
    const double si = std::sin(theta), co = std::cos(theta);
    const double w = e.b1 * e.b1 * si * si + e.b2 * e.b2 * co * co;
    return e.b1 * e.b2 / (w * std::sqrt(w));
  }
  const std::size_t n = K.pts_.size();
  if (n < 64) {
    throw resolution_error("curvature: sampled boundary too coarse (need >= 64 samples)");
  }
  const double u = wrap_2pi(theta) / kTwoPi * static_cast<double>(n);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(u), n - 1);
  const double f = u - static_cast<double>(i);
  return K.curv_[i] + f * (K.curv_[(i + 1) % n] - K.curv_[i]);
}

double perimeter(const ConvexBody& K, std::size_t nodes) {
  double acc = 0.0;
  for (std::size_t j = 0; j < nodes; ++j) {
    acc += K.boundary_speed(kTwoPi * static_cast<double>(j) / static_cast<double>(nodes));
  }
  return acc * kTwoPi / static_cast<double>(nodes);
}

double curvature_at_normal(const ConvexBody& K, Vec2 x) {
  const double r = norm(x);
  if (!(r > 0.0)) throw std::invalid_argument("curvature_at_normal: zero direction");
  if (K.shape_) {
    // Outward normal at parameter theta is parallel to (b2 cos, b1 sin)
    // (in body axes); invert for theta, then evaluate the closed form.
    const auto& e = *K.shape_;
    const double c = std::cos(e.psi), s = std::sin(e.psi);
    const double u = x.x * c + x.y * s;
    const double v = -x.x * s + x.y * c;
    const double theta = std::atan2(v * e.b2, u * e.b1);
    return curvature(K, theta);
  }
  // Sampled curve: locate the support point, curvature there.
  const auto& pts = K.pts_;
  const std::size_t n = pts.size();
  std::size_t best = 0;
  double fbest = dot(x, pts[0]);
  for (std::size_t i = 1; i < n; ++i) {
    const double f = dot(x, pts[i]);
    if (f > fbest) {
      fbest = f;
      best = i;
    }
  }
  return K.curv_[best];
}

ConvexBody unit_ball(const Ellipse& K) {
  K.validate();
  return ConvexBody::ellipse(1.0 / K.a1, 1.0 / K.a2, -K.phi);
}

// ---------------------------------------------------------------------------
// Random ellipses
// ---------------------------------------------------------------------------

EllipseSampler::EllipseSampler(std::uint64_t seed) : rng_(seed) {}

Ellipse EllipseSampler::next() {
  Ellipse e;
  e.a1 = 1.0 + uniform01(rng_);
  e.a2 = 1.0 + uniform01(rng_);
  e.phi = std::numbers::pi * uniform01(rng_);
  return e;
}

Ellipse random_ellipse(std::uint64_t seed) { return EllipseSampler(seed).next(); }

}  // namespace fractdist
