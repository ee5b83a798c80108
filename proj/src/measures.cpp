#include "fractdist/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fractdist/errors.hpp"
#include "fractdist/numerics.hpp"

namespace fractdist {

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms, double alpha, double scale)
    : atoms_(std::move(atoms)), alpha_(alpha), scale_(scale) {
  if (atoms_.empty()) throw std::invalid_argument("DiscreteMeasure: no atoms");
  if (!(scale_ > 0.0)) throw std::invalid_argument("DiscreteMeasure: scale must be positive");
  double mass = 0.0;
  for (const Atom& a : atoms_) {
    if (a.w < 0.0) throw std::invalid_argument("DiscreteMeasure: negative weight");
    if (a.p.x < -1e-12 || a.p.x > 1.0 + 1e-12 || a.p.y < -1e-12 || a.p.y > 1.0 + 1e-12) {
      throw std::invalid_argument("DiscreteMeasure: atom outside [0,1]^2");
    }
    mass += a.w;
  }
  if (std::fabs(mass - 1.0) > 1e-12) {
    throw std::invalid_argument("DiscreteMeasure: weights must sum to 1");
  }
}

double DiscreteMeasure::diagonal_mass() const {
  double d = 0.0;
  for (const Atom& a : atoms_) d += a.w * a.w;
  return d;
}

std::string DiscreteMeasure::to_csv() const {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "# alpha=%.17g scale=%.17g\n", alpha_, scale_);
  out << buf << "x,y,weight\n";
  for (const Atom& a : atoms_) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", a.p.x, a.p.y, a.w);
    out << buf;
  }
  return out.str();
}

DiscreteMeasure DiscreteMeasure::from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  double alpha = 0.0, scale = 0.0;
  std::vector<Atom> atoms;
  while (std::getline(in, line)) {
    if (line.rfind("# alpha=", 0) == 0) {
      std::sscanf(line.c_str(), "# alpha=%lf scale=%lf", &alpha, &scale);
      continue;
    }
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    Atom a;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &a.p.x, &a.p.y, &a.w) == 3) atoms.push_back(a);
  }
  return DiscreteMeasure(std::move(atoms), alpha, scale);
}

DiscreteMeasure cantor_dust(double ratio, int depth) {
  if (!(ratio > 0.0) || !(ratio < 0.5)) {
    throw std::invalid_argument("cantor_dust: ratio must lie in (0, 1/2)");
  }
  if (depth < 1) throw std::invalid_argument("cantor_dust: depth must be >= 1");
  if (depth > 12) throw budget_error("cantor_dust: 4^depth atoms exceed the memory budget");

  std::vector<double> xs{0.0};
  for (int j = 1; j <= depth; ++j) {
    const double off = (1.0 - ratio) * std::pow(ratio, j - 1);
    std::vector<double> nxt;
    nxt.reserve(xs.size() * 2);
    for (double v : xs) {
      nxt.push_back(v);
      nxt.push_back(v + off);
    }
    xs.swap(nxt);
  }
  const double w = 1.0 / (static_cast<double>(xs.size()) * static_cast<double>(xs.size()));
  std::vector<Atom> atoms;
  atoms.reserve(xs.size() * xs.size());
  for (double x : xs) {
    for (double y : xs) atoms.push_back({{x, y}, w});
  }
  const double alpha = 2.0 * std::log(2.0) / std::log(1.0 / ratio);
  return DiscreteMeasure(std::move(atoms), alpha, std::pow(ratio, depth));
}

DiscreteMeasure single_atom(Vec2 p) {
  return DiscreteMeasure({{p, 1.0}}, 0.0, 1e-12);
}

void LacunarySchedule::validate() const {
  if (!(s > 0.0) || s > 2.0) throw std::invalid_argument("LacunarySchedule: s must lie in (0,2]");
  if (q.empty()) throw std::invalid_argument("LacunarySchedule: empty scale sequence");
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] < 1) throw std::invalid_argument("LacunarySchedule: scales must be positive");
    if (i + 1 < q.size()) {
      // q_{i+1} >= q_i^i with 1-based i; i = 1 gives q_2 >= q_1.
      const double bound = std::pow(static_cast<double>(q[i]), static_cast<double>(i + 1));
      if (static_cast<double>(q[i + 1]) < bound - 1e-9) {
        throw std::invalid_argument("LacunarySchedule: lacunarity q_{i+1} >= q_i^i violated");
      }
    }
  }
}

double LacunarySchedule::stage_radius(int i) const {
  if (i < 1 || i > depth()) throw std::invalid_argument("LacunarySchedule: stage out of range");
  return std::pow(static_cast<double>(q[i - 1]), -2.0 / s);
}

std::pair<PointSet, DiscreteMeasure> nested_grid_stage(const LacunarySchedule& c, int stage) {
  c.validate();
  if (stage < 1 || stage > c.depth()) {
    throw std::invalid_argument("nested_grid_stage: stage exceeds realized depth");
  }
  const long qi = c.q[stage - 1];
  const double inv = 1.0 / static_cast<double>(qi);
  PointSet ps;
  ps.generator = "nested-grid";
  ps.separation = inv;
  ps.density = 1.0;
  std::vector<Atom> atoms;
  const double w = 1.0 / (static_cast<double>(qi + 1) * static_cast<double>(qi + 1));
  for (long p1 = 0; p1 <= qi; ++p1) {
    for (long p2 = 0; p2 <= qi; ++p2) {
      const Vec2 pt{static_cast<double>(p1) * inv, static_cast<double>(p2) * inv};
      ps.points.push_back(pt);
      atoms.push_back({pt, w});
    }
  }
  DiscreteMeasure mu(std::move(atoms), c.s, c.stage_radius(stage));
  return {std::move(ps), std::move(mu)};
}

FrostmanReport frostman_constant(const DiscreteMeasure& mu, double alpha,
                                 const std::vector<double>& radii) {
  if (!(alpha > 0.0) || alpha > 2.0) {
    throw std::invalid_argument("frostman_constant: alpha must lie in (0,2]");
  }
  const auto& atoms = mu.atoms();
  // Radii are admissible up to the diameter of the ambient square.
  const double r_max = std::sqrt(2.0) * (1.0 + 1e-12);

  FrostmanReport rep;
  for (double r : radii) {
    if (r < mu.scale() * (1.0 - 1e-12)) {
      throw resolution_error("frostman_constant: radius below the construction scale");
    }
    if (r > r_max) {
      throw std::invalid_argument("frostman_constant: radius beyond the domain diameter");
    }
    double sup = 0.0;
    const double r2 = r * r;
    for (const Atom& c : atoms) {
      double mass = 0.0;
      for (const Atom& a : atoms) {
        if (norm_sq(a.p - c.p) <= r2) mass += a.w;
      }
      sup = std::max(sup, mass);
    }
    const double ratio = sup / std::pow(r, alpha);
    rep.profile.emplace_back(r, ratio);
    rep.constant = std::max(rep.constant, ratio);
  }
  return rep;
}

double energy_integral(const DiscreteMeasure& mu, double alpha) {
  if (!(alpha < 2.0)) throw std::invalid_argument("energy_integral: alpha must be < 2");
  const auto& atoms = mu.atoms();
  double acc = 0.0;
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    for (std::size_t l = j + 1; l < atoms.size(); ++l) {
      const double d = norm(atoms[j].p - atoms[l].p);
      if (d == 0.0) {
        throw std::invalid_argument("energy_integral: coincident distinct atoms (infinite energy)");
      }
      acc += 2.0 * atoms[j].w * atoms[l].w * std::pow(d, -alpha);
    }
  }
  return acc;
}

std::string PointSet::to_csv() const {
  std::ostringstream out;
  out << "x,y\n";
  char buf[96];
  for (const Vec2& p : points) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.x, p.y);
    out << buf;
  }
  return out.str();
}

PointSet PointSet::from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  PointSet ps;
  ps.generator = "file";
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    Vec2 p;
    if (std::sscanf(line.c_str(), "%lf,%lf", &p.x, &p.y) == 2) ps.points.push_back(p);
  }
  return ps;
}

PointSet delone_set(double R, DeloneKind kind, std::uint64_t seed, double jitter) {
  if (!(R >= 1.0)) throw std::invalid_argument("delone_set: R must be >= 1");
  if (kind == DeloneKind::perturbed_lattice && !(jitter >= 0.0 && jitter < 0.5)) {
    throw std::invalid_argument("delone_set: jitter must lie in [0, 1/2)");
  }
  const long m = static_cast<long>(std::floor(R));
  PointSet ps;
  ps.delone = true;
  ps.density = 1.0;  // (2R+1)^2 >= R^2 points in [-R,R]^2
  std::mt19937_64 rng(seed);
  if (kind == DeloneKind::lattice) {
    ps.generator = "lattice";
    ps.separation = 1.0;
    for (long i = -m; i <= m; ++i)
      for (long j = -m; j <= m; ++j)
        ps.points.push_back({static_cast<double>(i), static_cast<double>(j)});
  } else {
    ps.generator = "perturbed-lattice";
    ps.separation = 1.0 - 2.0 * jitter;
    for (long i = -m; i <= m; ++i) {
      for (long j = -m; j <= m; ++j) {
        // Uniform point of the disk of radius `jitter`.
        const double u = uniform01(rng);
        const double v = uniform01(rng);
        const double rad = jitter * std::sqrt(u);
        const double ang = 2.0 * std::numbers::pi * v;
        ps.points.push_back({static_cast<double>(i) + rad * std::cos(ang),
                             static_cast<double>(j) + rad * std::sin(ang)});
      }
    }
  }
  return ps;
}

}  // namespace fractdist
