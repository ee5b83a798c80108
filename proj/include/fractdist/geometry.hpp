#ifndef FRACTDIST_GEOMETRY_HPP
#define FRACTDIST_GEOMETRY_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fractdist/vec2.hpp"

namespace fractdist {

// Parameters of the anisotropic norm |x|_{a,phi} = |dilate_a(rotate_phi(x))|:
// rotate by phi, then stretch the axes by (a1, a2), then take the Euclidean
// length. The unit ball of this norm is the ellipse with semi-axes
// (1/a1, 1/a2) rotated by -phi; unit_ball() below is the one place that
// conversion lives.
struct Ellipse {
  double a1{1.0};
  double a2{1.0};
  double phi{0.0};

  bool euclidean() const { return a1 == 1.0 && a2 == 1.0; }
  void validate() const;  // throws std::invalid_argument

  // Plain-text round trip, "a1,a2,phi".
  std::string to_text() const;
  static Ellipse from_text(const std::string& text);
};

// The norm |x|_{a,phi}. Rejects non-finite input.
double ellipse_norm(Vec2 x, const Ellipse& K);

// Boundary parameterization omega -> rotate_{-phi}(dilate_a(omega)) of the
// image of the unit circle; omega must be a unit vector (1e-12).
Vec2 map_circle_point(Vec2 omega, const Ellipse& K);

// Direction map used inside spherical averages: the frequency vector probed
// at angle theta is t * map_circle_point(unit(theta), K).
Vec2 ellipse_direction(double theta, const Ellipse& K);

// 2x2 linear map with |T x| = |x|_{a,phi}; factored form kept alongside.
struct LinearTransform {
  double m00{1.0}, m01{0.0}, m10{0.0}, m11{1.0};
  double dilation1{1.0}, dilation2{1.0}, rotation{0.0};

  Vec2 apply(Vec2 x) const { return {m00 * x.x + m01 * x.y, m10 * x.x + m11 * x.y}; }
  double det() const { return m00 * m11 - m01 * m10; }
  void validate() const;
};

LinearTransform transform_from_ellipse(const Ellipse& K);

// A symmetric convex body with smooth, positively curved boundary. Either an
// exact ellipse (closed forms throughout) or a sampled closed curve stored at
// uniformly spaced parameter values with finite-difference tangent/curvature
// data. Sampled curves are validated on construction: closed, convex
// (cross-product test), origin-symmetric, strictly positive curvature.
class ConvexBody {
 public:
  struct EllipseShape {
    double b1, b2, psi;  // semi-axes and rotation of the body itself
  };

  static ConvexBody disk();
  static ConvexBody ellipse(double b1, double b2, double psi = 0.0);
  static ConvexBody from_samples(std::vector<Vec2> boundary);

  bool is_ellipse() const { return shape_.has_value(); }
  const std::optional<EllipseShape>& ellipse_shape() const { return shape_; }
  std::size_t sample_count() const;

  // Boundary point and parameter-speed |gamma'(theta)| at parameter theta in
  // [0, 2pi). Sampled curves interpolate linearly between stored samples.
  Vec2 boundary_point(double theta) const;
  double boundary_speed(double theta) const;

  const std::vector<Vec2>& samples() const;

  // CSV round trip for sampled curves (columns theta,x,y).
  std::string to_csv() const;
  static ConvexBody from_csv(const std::string& csv);

 private:
  ConvexBody() = default;
  void build_sampled_data();

  std::optional<EllipseShape> shape_;
  std::vector<Vec2> pts_;        // sampled boundary (empty for exact ellipses)
  std::vector<double> speed_;    // |gamma'| per sample, centered differences
  std::vector<double> curv_;     // curvature per sample
  std::vector<double> polar_;    // polar angle per sample, increasing
  friend double support_function(const ConvexBody&, Vec2);
  friend double minkowski_norm(const ConvexBody&, Vec2);
  friend double curvature(const ConvexBody&, double);
  friend double curvature_at_normal(const ConvexBody&, Vec2);
  friend ConvexBody dual_body(const ConvexBody&);
};

// rho*(x) = sup_{y in boundary K} x . y, the support function; equals the
// norm induced by the dual body.
double support_function(const ConvexBody& K, Vec2 x);

// Gauge (Minkowski functional) of K: inf { r > 0 : x/r in K }.
double minkowski_norm(const ConvexBody& K, Vec2 x);

// K* = { xi : sup_{x in K} x . xi <= 1 }. Ellipses invert semi-axes exactly;
// sampled curves come back sampled in polar form at the same resolution.
ConvexBody dual_body(const ConvexBody& K);

// Curvature at boundary parameter theta, positive for these bodies.
double curvature(const ConvexBody& K, double theta);

double perimeter(const ConvexBody& K, std::size_t nodes = 1 << 14);

// Curvature at the boundary point whose outward normal points along x;
// this is the quantity entering stationary-phase amplitudes.
double curvature_at_normal(const ConvexBody& K, Vec2 x);

// Unit ball of |.|_{a,phi}: semi-axes (1/a1, 1/a2), rotated by -phi. The
// single point where norm parameters and body geometry are converted.
ConvexBody unit_ball(const Ellipse& K);

// Deterministic uniform sampler over [1,2] x [1,2] x [0,pi).
class EllipseSampler {
 public:
  explicit EllipseSampler(std::uint64_t seed);
  Ellipse next();

 private:
  std::mt19937_64 rng_;
};

Ellipse random_ellipse(std::uint64_t seed);

}  // namespace fractdist

#endif
