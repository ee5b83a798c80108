#include "fractdist/exact.hpp"

#include <algorithm>
#include <stdexcept>

namespace fractdist {

void ExactEllipse::validate() const {
  if (!(a1_sq > 0) || !(a2_sq > 0)) {
    throw std::invalid_argument("ExactEllipse: squared eccentricities must be positive");
  }
  if (cos_phi * cos_phi + sin_phi * sin_phi != Rational(1)) {
    throw std::invalid_argument("ExactEllipse: rotation must satisfy cos^2 + sin^2 = 1 exactly");
  }
}

ExactEllipse ExactEllipse::pythagorean(Rational a1_sq, Rational a2_sq, long m, long n) {
  if (m <= 0 || n < 0 || n >= m) {
    throw std::invalid_argument("ExactEllipse::pythagorean: need m > n >= 0");
  }
  const Rational mm = Rational(m) * m, nn = Rational(n) * n;
  const Rational den = mm + nn;
  ExactEllipse e;
  e.a1_sq = std::move(a1_sq);
  e.a2_sq = std::move(a2_sq);
  e.cos_phi = (mm - nn) / den;
  e.sin_phi = Rational(2) * m * n / den;
  e.validate();
  return e;
}

Rational exact_norm_sq(const ExactEllipse& K, const RationalPoint& d) {
  const Rational u = d.x * K.cos_phi - d.y * K.sin_phi;
  const Rational v = d.x * K.sin_phi + d.y * K.cos_phi;
  return K.a1_sq * u * u + K.a2_sq * v * v;
}

namespace {

std::vector<Rational> sorted_dedup(std::vector<Rational> vals) {
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

}  // namespace

std::vector<Rational> exact_distance_set_sq(const std::vector<RationalPoint>& pts,
                                            const ExactEllipse& K, bool include_zero) {
  K.validate();
  std::vector<Rational> vals;
  vals.reserve(pts.size() * (pts.size() - 1) / 2 + 1);
  if (include_zero) vals.emplace_back(0);
  for (std::size_t j = 0; j < pts.size(); ++j) {
    for (std::size_t l = j + 1; l < pts.size(); ++l) {
      vals.push_back(exact_norm_sq(K, {pts[j].x - pts[l].x, pts[j].y - pts[l].y}));
    }
  }
  auto out = sorted_dedup(std::move(vals));
  if (!include_zero && !out.empty() && out.front() == 0) out.erase(out.begin());
  return out;
}

std::vector<Rational> exact_origin_distance_set_sq(const std::vector<RationalPoint>& pts,
                                                   const ExactEllipse& K, bool include_zero) {
  K.validate();
  std::vector<Rational> vals;
  vals.reserve(pts.size());
  for (const auto& p : pts) vals.push_back(exact_norm_sq(K, p));
  auto out = sorted_dedup(std::move(vals));
  if (!include_zero && !out.empty() && out.front() == 0) out.erase(out.begin());
  return out;
}

}  // namespace fractdist
