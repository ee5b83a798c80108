#ifndef FRACTDIST_EXACT_HPP
#define FRACTDIST_EXACT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace fractdist {

using Rational = boost::multiprecision::cpp_rational;

struct RationalPoint {
  Rational x;
  Rational y;
};

// Exact parameters of the anisotropic norm: squared eccentricities and a
// Pythagorean-rational rotation with cos^2 + sin^2 = 1 exactly, so squared
// norms of rational points are rational. Counting distinct squared norms
// equals counting distinct norms (squaring is injective on nonnegatives).
struct ExactEllipse {
  Rational a1_sq{1};
  Rational a2_sq{1};
  Rational cos_phi{1};
  Rational sin_phi{0};

  void validate() const;  // positivity + the Pythagorean identity

  // cos = (m^2-n^2)/(m^2+n^2), sin = 2mn/(m^2+n^2).
  static ExactEllipse pythagorean(Rational a1_sq, Rational a2_sq, long m, long n);
};

// |x|_{a,phi}^2 as an exact rational.
Rational exact_norm_sq(const ExactEllipse& K, const RationalPoint& d);

// Sorted deduplicated squared norms over all pairs (include_zero adds the
// 0 of coincident pairs / the empty-difference convention).
std::vector<Rational> exact_distance_set_sq(const std::vector<RationalPoint>& pts,
                                            const ExactEllipse& K, bool include_zero);

// Same, distances from the origin to each point (the "from the corner"
// count on grids; 0 is the norm of the origin itself when present).
std::vector<Rational> exact_origin_distance_set_sq(const std::vector<RationalPoint>& pts,
                                                   const ExactEllipse& K, bool include_zero);

}  // namespace fractdist

#endif
