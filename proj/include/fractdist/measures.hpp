#ifndef FRACTDIST_MEASURES_HPP
#define FRACTDIST_MEASURES_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fractdist/vec2.hpp"

namespace fractdist {

struct Atom {
  Vec2 p;
  double w;
};

// Finite atomic approximation of a fractal probability measure on [0,1]^2.
// alpha is the nominal dimension of the construction; scale is the finest
// construction scale, below which (equivalently, beyond frequency 1/scale)
// the approximation stops being meaningful. Spectral operations enforce
// that cutoff rather than silently reporting atomic artifacts.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::vector<Atom> atoms, double alpha, double scale);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double alpha() const { return alpha_; }
  double scale() const { return scale_; }
  double max_frequency() const { return 1.0 / scale_; }
  std::size_t size() const { return atoms_.size(); }

  // Sum of squared weights: the diagonal mass of mu x mu, reported wherever
  // the diagonal is excluded.
  double diagonal_mass() const;

  // CSV round trip, columns x,y,weight, header comment carrying alpha/scale.
  std::string to_csv() const;
  static DiscreteMeasure from_csv(const std::string& csv);

 private:
  std::vector<Atom> atoms_;
  double alpha_;
  double scale_;
};

// Uniform measure on the depth-level product Cantor set with contraction
// `ratio` per axis, cells anchored at the lower-left corner and atoms placed
// at cell corners. 4^depth atoms, alpha = 2 log 2 / log(1/ratio),
// scale = ratio^depth.
DiscreteMeasure cantor_dust(double ratio, int depth);

DiscreteMeasure single_atom(Vec2 p = {0.0, 0.0});

// Nested-grid schedule: target dimension s in (0,2], integer scales q with
// the lacunarity condition q_{i+1} >= q_i^i (1-based). Stage i lives on the
// grid {p/q_i : 0 <= p_j <= q_i} with ball radius q_i^{-2/s}.
struct LacunarySchedule {
  double s{1.0};
  std::vector<long> q;

  void validate() const;  // lacunarity + range checks
  int depth() const { return static_cast<int>(q.size()); }
  double stage_radius(int i) const;  // q_i^{-2/s}, 1-based stage index
};

struct PointSet {
  std::vector<Vec2> points;
  std::string generator;   // "lattice", "perturbed-lattice", "grid", ...
  double separation{0.0};  // declared minimum pairwise distance
  double density{0.0};     // declared constant C with count >= C R^2
  bool delone{false};

  std::string to_csv() const;
  static PointSet from_csv(const std::string& csv);
};

// Stage i of the schedule: the (q_i+1)^2 grid points and the uniform measure
// on them at scale q_i^{-2/s}.
std::pair<PointSet, DiscreteMeasure> nested_grid_stage(const LacunarySchedule& c, int stage);

// Empirical Frostman constant: sup over atom-centered balls and the given
// radii of mu(B(y,r)) / r^alpha. The per-radius profile is the evidence for
// an over-claimed alpha (the ratio blows up as r shrinks).
struct FrostmanReport {
  double constant{0.0};
  std::vector<std::pair<double, double>> profile;  // (r, sup-ratio at r)
};
FrostmanReport frostman_constant(const DiscreteMeasure& mu, double alpha,
                                 const std::vector<double>& radii);

// I_alpha(mu) = sum_{j != l} w_j w_l |x_j - x_l|^{-alpha}; diagonal excluded
// (the measures approximated here are non-atomic). Coincident distinct atoms
// are a hard error.
double energy_integral(const DiscreteMeasure& mu, double alpha);

enum class DeloneKind { lattice, perturbed_lattice };

// Integer lattice on [-R,R]^2, optionally jittered inside disks of radius
// `jitter` < 1/2 so the separation 1 - 2*jitter survives.
PointSet delone_set(double R, DeloneKind kind, std::uint64_t seed, double jitter);

}  // namespace fractdist

#endif
