#include "fractdist/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "fractdist/distance_sets.hpp"
#include "fractdist/errors.hpp"
#include "fractdist/fourier.hpp"
#include "fractdist/geometry.hpp"
#include "fractdist/mattila.hpp"
#include "fractdist/measures.hpp"

namespace fractdist {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        throw config_error("config line " + std::to_string(lineno) + ": unterminated section");
      }
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty()) {
        throw config_error("config line " + std::to_string(lineno) + ": empty section name");
      }
      cfg.sections_[section];
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw config_error("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw config_error("config line " + std::to_string(lineno) + ": empty key");
    }
    if (section.empty()) {
      throw config_error("config line " + std::to_string(lineno) + ": key outside any section");
    }
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  try {
    return parse(read_file(path));
  } catch (const std::runtime_error& e) {
    throw config_error(e.what());
  }
}

bool Config::has(const std::string& section, const std::string& key) const {
  auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) != 0;
}

std::string Config::get(const std::string& section, const std::string& key) const {
  auto s = sections_.find(section);
  if (s == sections_.end() || s->second.count(key) == 0) {
    throw config_error("missing config key [" + section + "] " + key);
  }
  return s->second.at(key);
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
  const std::string v = get(section, key);
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw config_error("config key [" + section + "] " + key + " is not a number: " + v);
  }
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

long Config::get_long_or(const std::string& section, const std::string& key,
                         long fallback) const {
  if (!has(section, key)) return fallback;
  const double d = get_double(section, key);
  const long l = static_cast<long>(d);
  if (static_cast<double>(l) != d) {
    throw config_error("config key [" + section + "] " + key + " is not an integer");
  }
  return l;
}

bool Config::get_bool_or(const std::string& section, const std::string& key,
                         bool fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = get(section, key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw config_error("config key [" + section + "] " + key + " is not a boolean: " + v);
}

std::vector<double> Config::get_list(const std::string& section, const std::string& key) const {
  const std::string v = get(section, key);
  std::vector<double> out;
  std::istringstream in(v);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw config_error("config key [" + section + "] " + key + ": bad list entry " + item);
    }
  }
  if (out.empty()) throw config_error("config key [" + section + "] " + key + ": empty list");
  return out;
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
  sections_[section][key] = value;
}

std::string Config::canonical() const {
  std::ostringstream out;
  for (const auto& [sec, kv] : sections_) {
    out << "[" << sec << "]\n";
    for (const auto& [k, v] : kv) out << k << " = " << v << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Shared builders
// ---------------------------------------------------------------------------

namespace {

DiscreteMeasure measure_from_config(const Config& cfg) {
  const std::string kind = cfg.get_or("measure", "kind", "cantor");
  if (kind == "cantor") {
    const double ratio = cfg.get_double_or("measure", "ratio", 1.0 / 3.0);
    const long depth = cfg.get_long_or("measure", "depth", 3);
    return cantor_dust(ratio, static_cast<int>(depth));
  }
  if (kind == "atom") {
    return single_atom({cfg.get_double_or("measure", "x", 0.0),
                        cfg.get_double_or("measure", "y", 0.0)});
  }
  if (kind == "file") {
    return DiscreteMeasure::from_csv(read_file(cfg.get("measure", "path")));
  }
  throw config_error("unknown measure kind: " + kind);
}

Ellipse norm_body_from_config(const Config& cfg) {
  Ellipse K;
  K.a1 = cfg.get_double_or("body", "a1", 1.0);
  K.a2 = cfg.get_double_or("body", "a2", 1.0);
  K.phi = cfg.get_double_or("body", "phi", 0.0);
  K.validate();
  return K;
}

ConvexBody geom_body_from_config(const Config& cfg) {
  const std::string kind = cfg.get_or("body", "kind", "ellipse");
  if (kind == "curve") {
    return ConvexBody::from_csv(read_file(cfg.get("body", "path")));
  }
  return ConvexBody::ellipse(cfg.get_double_or("body", "b1", 1.0),
                             cfg.get_double_or("body", "b2", 1.0),
                             cfg.get_double_or("body", "psi", 0.0));
}

std::vector<Ellipse> sampled_bodies_from_config(const Config& cfg) {
  const long count = cfg.get_long_or("sampler", "count", 16);
  if (count < 1) throw config_error("[sampler] count must be >= 1");
  const std::uint64_t seed =
      static_cast<std::uint64_t>(cfg.get_long_or("sampler", "seed", 1));
  EllipseSampler sampler(seed);
  std::vector<Ellipse> Ks;
  Ks.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) Ks.push_back(sampler.next());
  return Ks;
}

MattilaResolution resolution_from_config(const Config& cfg, bool default_exclude) {
  MattilaResolution res;
  res.nodes_per_block =
      static_cast<std::size_t>(cfg.get_long_or("resolution", "nodes_per_block", 64));
  res.max_spacing = cfg.get_double_or("resolution", "max_spacing", 0.05);
  res.profile_bins = static_cast<std::size_t>(cfg.get_long_or("resolution", "bins", 32768));
  res.angle_nodes = static_cast<std::size_t>(cfg.get_long_or("resolution", "angle_nodes", 0));
  res.exclude_diagonal =
      cfg.get_bool_or("resolution", "exclude_diagonal", default_exclude);
  return res;
}

Rational rational_from_string(const std::string& s) {
  const std::size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(boost::multiprecision::cpp_int(s));
    }
    const boost::multiprecision::cpp_int num(trim(s.substr(0, slash)));
    const boost::multiprecision::cpp_int den(trim(s.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument(s);
    return Rational(num, den);
  } catch (const std::exception&) {
    throw config_error("bad rational literal: " + s);
  }
}

json fit_to_json(const ExponentFit& fit) {
  return json{{"slope", fit.slope},
              {"intercept", fit.intercept},
              {"r_squared", fit.r_squared},
              {"range", {fit.t_min, fit.t_max}}};
}

Artifact manifest_artifact(const Config& cfg, const std::string& kind) {
  json m;
  m["experiment"] = kind;
  m["config"] = cfg.canonical();
  return {"manifest.json", m.dump(2) + "\n"};
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

std::vector<Vec2> points_from_config(const Config& cfg) {
  const std::string kind = cfg.get_or("points", "kind", "grid");
  if (kind == "grid") {
    const long q = cfg.get_long_or("points", "q", 2);
    if (q < 1) throw config_error("[points] q must be >= 1");
    std::vector<Vec2> pts;
    for (long i = 0; i <= q; ++i)
      for (long j = 0; j <= q; ++j) pts.push_back({double(i), double(j)});
    return pts;
  }
  if (kind == "lattice" || kind == "delone") {
    const double R = cfg.get_double_or("points", "R", 4.0);
    const double jitter = cfg.get_double_or("points", "jitter", kind == "lattice" ? 0.0 : 0.2);
    const std::uint64_t seed =
        static_cast<std::uint64_t>(cfg.get_long_or("points", "seed", 1));
    return delone_set(R, kind == "lattice" ? DeloneKind::lattice : DeloneKind::perturbed_lattice,
                      seed, jitter)
        .points;
  }
  if (kind == "file") {
    return PointSet::from_csv(read_file(cfg.get("points", "path"))).points;
  }
  throw config_error("unknown points kind: " + kind);
}

std::vector<Artifact> exp_distances(const Config& cfg) {
  const std::string mode = cfg.get_or("dedup", "mode", "tolerant");
  const bool include_zero = cfg.get_bool_or("dedup", "include_zero", false);
  std::vector<Artifact> out;
  json summary;
  std::ostringstream csv;

  if (mode == "exact") {
    const long q = cfg.get_long_or("points", "q", 2);
    if (cfg.get_or("points", "kind", "grid") != "grid") {
      throw config_error("exact mode supports integer grids; use tolerant mode otherwise");
    }
    std::vector<RationalPoint> pts;
    for (long i = 0; i <= q; ++i)
      for (long j = 0; j <= q; ++j) pts.push_back({Rational(i), Rational(j)});
    ExactEllipse K;
    K.a1_sq = rational_from_string(cfg.get_or("body", "a1_sq", "1"));
    K.a2_sq = rational_from_string(cfg.get_or("body", "a2_sq", "1"));
    const long m = cfg.get_long_or("body", "pyth_m", 1);
    const long n = cfg.get_long_or("body", "pyth_n", 0);
    K = ExactEllipse::pythagorean(K.a1_sq, K.a2_sq, m, n);
    const DistanceSetResult res = distance_set_exact(pts, K, include_zero);
    csv << "# squared distances, exact-rational dedup\nvalue_sq\n";
    for (double v : res.values) csv << fmt_double(v) << "\n";
    summary["count"] = res.count;
    summary["mode"] = "exact-rational";
    summary["squared"] = true;
  } else if (mode == "tolerant") {
    const std::vector<Vec2> pts = points_from_config(cfg);
    const Ellipse K = norm_body_from_config(cfg);
    const double tol = cfg.get_double_or("dedup", "tolerance", 0.0);
    const DistanceSetResult res = distance_set(pts, K, tol, include_zero);
    csv << "# distances, tolerant dedup\nvalue\n";
    for (double v : res.values) csv << fmt_double(v) << "\n";
    summary["count"] = res.count;
    summary["mode"] = "tolerant";
    summary["tolerance"] = res.tolerance;
    summary["squared"] = false;
  } else {
    throw config_error("unknown dedup mode: " + mode);
  }
  summary["include_zero"] = include_zero;
  out.push_back({"distances.csv", csv.str()});
  out.push_back({"summary.json", dump_json(summary)});
  out.push_back(manifest_artifact(cfg, "distances"));
  return out;
}

std::vector<Artifact> exp_mattila(const Config& cfg) {
  const DiscreteMeasure mu = measure_from_config(cfg);
  const double t_max = cfg.get_double_or("resolution", "t_max", 8.0);
  const MattilaResolution res = resolution_from_config(cfg, /*default_exclude=*/false);
  const SpectralMethod method = cfg.get_or("resolution", "method", "quadrature") == "profile"
                                    ? SpectralMethod::pair_profile
                                    : SpectralMethod::quadrature;
  std::vector<Artifact> out;
  json summary;
  summary["t_max"] = t_max;
  summary["exclude_diagonal"] = res.exclude_diagonal;
  summary["method"] = method == SpectralMethod::pair_profile ? "profile" : "quadrature";

  if (cfg.has("sampler", "count")) {
    const long count = cfg.get_long_or("sampler", "count", 64);
    const std::string box = cfg.get_or("sampler", "box", "cutoff");
    const auto samples = halton_ellipse_samples(
        static_cast<std::size_t>(count), box == "unit" ? SampleBox::unit : SampleBox::cutoff);
    summary["value"] = averaged_mattila(mu, samples, t_max, res, method);
    summary["samples"] = count;
    summary["box"] = box;
  } else {
    const Ellipse K = norm_body_from_config(cfg);
    summary["value"] = mattila_integral(mu, K, t_max, res, method);
    summary["body"] = K.to_text();
    // Diagnostic series on a per-octave grid.
    AverageSeries series;
    series.body = K.to_text();
    series.measure = cfg.get_or("measure", "kind", "cantor");
    const int per_octave = 8;
    const int octaves = static_cast<int>(std::ceil(std::log2(t_max)));
    for (int i = 0; i <= octaves * per_octave; ++i) {
      const double t = std::pow(2.0, static_cast<double>(i) / per_octave);
      if (t > t_max * (1 + 1e-12)) break;
      const std::size_t nodes = res.angle_nodes != 0
                                    ? res.angle_nodes
                                    : recommended_angle_nodes(t, std::max(K.a1, K.a2));
      series.grid.push_back(t);
      series.values.push_back(spherical_average(mu, t, K, nodes, res.exclude_diagonal));
    }
    out.push_back({"series.csv", series.to_csv("t", "S")});
  }
  out.push_back({"summary.json", dump_json(summary)});
  out.push_back(manifest_artifact(cfg, "mattila"));
  return out;
}

std::vector<Artifact> exp_sharpness(const Config& cfg) {
  LacunarySchedule sched;
  sched.s = cfg.get_double_or("schedule", "s", 0.8);
  for (double v : cfg.get_list("schedule", "q")) sched.q.push_back(static_cast<long>(v));
  const int stage = static_cast<int>(cfg.get_long_or("schedule", "stage", sched.depth()));
  const double slack = cfg.get_double_or("thresholds", "dim_slack", 0.15);
  const std::vector<Ellipse> Ks = sampled_bodies_from_config(cfg);

  const SharpnessReport rep = sharpness_experiment(sched, stage, Ks, slack);

  std::ostringstream csv;
  csv << "# covering counts at ell = " << fmt_double(rep.ell) << "\n";
  csv << "a1,a2,phi,covering,bound,box_dim,pass\n";
  for (const auto& s : rep.per_sample) {
    csv << fmt_double(s.K.a1) << "," << fmt_double(s.K.a2) << "," << fmt_double(s.K.phi) << ","
        << s.covering << "," << s.covering_bound << "," << fmt_double(s.box_dim) << ","
        << (s.pass ? "1" : "0") << "\n";
  }
  json summary;
  summary["ell"] = rep.ell;
  summary["dim_threshold"] = rep.dim_threshold;
  summary["all_pass"] = rep.all_pass;
  summary["samples"] = rep.per_sample.size();

  std::vector<Artifact> out;
  out.push_back({"covering.csv", csv.str()});
  out.push_back({"summary.json", dump_json(summary)});
  out.push_back(manifest_artifact(cfg, "sharpness"));
  return out;
}

std::vector<Artifact> exp_stationary_phase(const Config& cfg) {
  const ConvexBody K = geom_body_from_config(cfg);
  const Vec2 x{cfg.get_double_or("direction", "x", 1.0), cfg.get_double_or("direction", "y", 0.0)};
  const double z_lo = cfg.get_double_or("range", "z_lo", 10.0);
  const double z_hi = cfg.get_double_or("range", "z_hi", 200.0);
  const long points = cfg.get_long_or("range", "points", 96);
  const long window = cfg.get_long_or("range", "window", 8);
  const double slope_max = cfg.get_double_or("thresholds", "slope_max", -1.4);
  const double r2_min = cfg.get_double_or("thresholds", "r2_min", 0.9);
  if (!(z_hi > z_lo) || !(z_lo >= 1.0)) throw config_error("[range] needs 1 <= z_lo < z_hi");

  const double rho = support_function(K, x);
  std::vector<double> zs(points), residual(points);
  std::ostringstream csv;
  csv << "# stationary-phase residual, z = t rho*(x)\nz,quadrature,leading,residual\n";
  for (long i = 0; i < points; ++i) {
    const double z =
        z_lo * std::pow(z_hi / z_lo, static_cast<double>(i) / static_cast<double>(points - 1));
    const double t = z / rho;
    const double quad = arc_measure_ft(K, t, x, recommended_arc_nodes(K, t, x));
    const double lead = stationary_phase_leading(K, t, x);
    zs[static_cast<std::size_t>(i)] = z;
    residual[static_cast<std::size_t>(i)] = std::fabs(quad - lead);
    csv << fmt_double(z) << "," << fmt_double(quad) << "," << fmt_double(lead) << ","
        << fmt_double(std::fabs(quad - lead)) << "\n";
  }
  const ExponentFit fit =
      fit_exponent_envelope(zs, residual, static_cast<std::size_t>(window));
  json summary;
  summary["fit"] = fit_to_json(fit);
  summary["pass"] = fit.slope <= slope_max && fit.r_squared >= r2_min;
  summary["slope_max"] = slope_max;
  summary["r2_min"] = r2_min;

  std::vector<Artifact> out;
  out.push_back({"residual.csv", csv.str()});
  out.push_back({"fit.json", dump_json(fit_to_json(fit))});
  out.push_back({"summary.json", dump_json(summary)});
  out.push_back(manifest_artifact(cfg, "stationary-phase"));
  return out;
}

std::vector<Artifact> exp_erdos(const Config& cfg) {
  const std::vector<double> R_list = cfg.get_list("experiment", "R_list");
  const std::string kind = cfg.get_or("points", "kind", "delone");
  const double R_max = R_list.back();
  const double jitter = cfg.get_double_or("points", "jitter", 0.2);
  const std::uint64_t pseed = static_cast<std::uint64_t>(cfg.get_long_or("points", "seed", 1));
  const PointSet A =
      delone_set(R_max, kind == "lattice" ? DeloneKind::lattice : DeloneKind::perturbed_lattice,
                 pseed, jitter);
  const std::vector<Ellipse> Ks = sampled_bodies_from_config(cfg);
  const double tol = cfg.get_double_or("dedup", "tolerance", 0.0);
  const double slope_min = cfg.get_double_or("thresholds", "slope_min", 1.9);

  const ErdosReport rep = erdos_experiment(A, R_list, Ks, tol);

  std::ostringstream csv;
  csv << "# distinct distance counts per window radius and metric\nR,a1,a2,phi,count\n";
  json fits = json::array();
  for (const auto& s : rep.per_sample) {
    for (std::size_t i = 0; i < rep.R_list.size(); ++i) {
      csv << fmt_double(rep.R_list[i]) << "," << fmt_double(s.K.a1) << "," << fmt_double(s.K.a2)
          << "," << fmt_double(s.K.phi) << "," << s.counts[i] << "\n";
    }
    json f = fit_to_json(s.fit);
    f["a1"] = s.K.a1;
    f["a2"] = s.K.a2;
    f["phi"] = s.K.phi;
    fits.push_back(f);
  }
  json summary;
  summary["min_slope"] = rep.min_slope;
  summary["slope_min"] = slope_min;
  summary["pass"] = rep.min_slope >= slope_min;
  summary["generator"] = A.generator;

  std::vector<Artifact> out;
  out.push_back({"counts.csv", csv.str()});
  out.push_back({"fits.json", dump_json(fits)});
  out.push_back({"summary.json", dump_json(summary)});
  out.push_back(manifest_artifact(cfg, "erdos"));
  return out;
}

std::vector<Artifact> exp_decay(const Config& cfg) {
  const ConvexBody K = geom_body_from_config(cfg);
  const double t_lo = cfg.get_double_or("range", "t_lo", 4.0);
  const double t_hi = cfg.get_double_or("range", "t_hi", 256.0);
  const long ppo = cfg.get_long_or("range", "points_per_octave", 16);
  const long window = cfg.get_long_or("range", "window", 12);
  const long directions = cfg.get_long_or("range", "directions", 16);
  const double slope_max = cfg.get_double_or("thresholds", "slope_max", -0.45);

  const DecayReport rep =
      boundary_decay_fit(K, static_cast<std::size_t>(directions), t_lo, t_hi,
                         static_cast<std::size_t>(ppo), static_cast<std::size_t>(window));
  std::ostringstream csv;
  csv << "# max over directions of |arc measure transform|\nt,envelope\n";
  for (std::size_t i = 0; i < rep.grid.size(); ++i) {
    csv << fmt_double(rep.grid[i]) << "," << fmt_double(rep.envelope[i]) << "\n";
  }
  json summary;
  summary["fit"] = fit_to_json(rep.fit);
  summary["slope_max"] = slope_max;
  summary["pass"] = rep.fit.slope <= slope_max;

  std::vector<Artifact> out;
  out.push_back({"envelope.csv", csv.str()});
  out.push_back({"fit.json", dump_json(fit_to_json(rep.fit))});
  out.push_back({"summary.json", dump_json(summary)});
  out.push_back(manifest_artifact(cfg, "decay"));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Runner and CLI
// ---------------------------------------------------------------------------

RunResult run_experiment(const Config& cfg) {
  RunResult res;
  try {
    const std::string kind = cfg.get("experiment", "kind");
    if (kind == "distances") {
      res.artifacts = exp_distances(cfg);
    } else if (kind == "mattila") {
      res.artifacts = exp_mattila(cfg);
    } else if (kind == "sharpness") {
      res.artifacts = exp_sharpness(cfg);
    } else if (kind == "stationary-phase") {
      res.artifacts = exp_stationary_phase(cfg);
    } else if (kind == "erdos") {
      res.artifacts = exp_erdos(cfg);
    } else if (kind == "decay") {
      res.artifacts = exp_decay(cfg);
    } else {
      throw config_error("unknown experiment kind: " + kind);
    }
    res.message = kind + ": ok";
  } catch (const config_error& e) {
    res.exit_code = kExitValidation;
    res.message = e.what();
  } catch (const resolution_error& e) {
    res.exit_code = kExitResolution;
    res.message = e.what();
  } catch (const budget_error& e) {
    res.exit_code = kExitBudget;
    res.message = e.what();
  } catch (const std::invalid_argument& e) {
    res.exit_code = kExitValidation;
    res.message = e.what();
  } catch (const std::exception& e) {
    res.exit_code = kExitFailure;
    res.message = e.what();
  }
  if (res.exit_code != kExitOk) res.artifacts.clear();
  return res;
}

int run_cli(int argc, char** argv) {
  const std::vector<std::string> kinds = {"distances",        "mattila", "sharpness",
                                          "stationary-phase", "erdos",   "decay"};
  auto usage = [&]() {
    std::fprintf(stderr,
                 "usage: fractdist <subcommand> --config PATH [--seed N] [--out DIR]\n"
                 "subcommands: distances mattila sharpness stationary-phase erdos decay\n");
  };
  if (argc < 2) {
    usage();
    return kExitValidation;
  }
  const std::string sub = argv[1];
  if (std::find(kinds.begin(), kinds.end(), sub) == kinds.end()) {
    std::fprintf(stderr, "unknown subcommand: %s\n", sub.c_str());
    usage();
    return kExitValidation;
  }
  std::string config_path, out_dir;
  std::optional<long> seed;
  for (int i = 2; i < argc; ++i) {
    const std::string arg = argv[i];
    auto next = [&](const char* flag) -> std::string {
      if (i + 1 >= argc) {
        throw config_error(std::string(flag) + " requires a value");
      }
      return argv[++i];
    };
    try {
      if (arg == "--config") {
        config_path = next("--config");
      } else if (arg == "--seed") {
        seed = std::stol(next("--seed"));
      } else if (arg == "--out") {
        out_dir = next("--out");
      } else {
        std::fprintf(stderr, "unknown flag: %s\n", arg.c_str());
        return kExitValidation;
      }
    } catch (const std::exception& e) {
      std::fprintf(stderr, "%s\n", e.what());
      return kExitValidation;
    }
  }
  if (config_path.empty()) {
    std::fprintf(stderr, "--config is required\n");
    return kExitValidation;
  }

  Config cfg;
  try {
    cfg = Config::load(config_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitValidation;
  }
  if (!cfg.has("experiment", "kind")) cfg.set("experiment", "kind", sub);
  if (cfg.get("experiment", "kind") != sub) {
    std::fprintf(stderr, "config kind %s does not match subcommand %s\n",
                 cfg.get("experiment", "kind").c_str(), sub.c_str());
    return kExitValidation;
  }
  if (seed) cfg.set("sampler", "seed", std::to_string(*seed));
  if (out_dir.empty()) out_dir = cfg.get_or("output", "dir", "out");
  cfg.set("output", "dir", out_dir);

  const RunResult res = run_experiment(cfg);
  if (res.exit_code != kExitOk) {
    std::fprintf(stderr, "error: %s\n", res.message.c_str());
    return res.exit_code;
  }
  try {
    std::filesystem::create_directories(out_dir);
    for (const Artifact& a : res.artifacts) {
      write_file(out_dir + "/" + a.name, a.content);
      std::printf("wrote %s/%s\n", out_dir.c_str(), a.name.c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kExitFailure;
  }
  std::printf("%s\n", res.message.c_str());
  return kExitOk;
}

}  // namespace fractdist
