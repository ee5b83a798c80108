#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fractdist/errors.hpp"
#include "fractdist/mattila.hpp"
#include "fractdist/numerics.hpp"
#include "oracles.hpp"

using namespace fractdist;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

// 50-atom measure: deterministic subset of the depth-3 dust, renormalized.
DiscreteMeasure cantor_subset_50() {
  const DiscreteMeasure full = cantor_dust(1.0 / 3.0, 3);
  std::mt19937_64 rng(7);
  std::vector<std::size_t> idx(full.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = idx.size() - 1; i > 0; --i) {
    std::swap(idx[i], idx[static_cast<std::size_t>(uniform01(rng) * (i + 1))]);
  }
  idx.resize(50);
  std::sort(idx.begin(), idx.end());
  std::vector<Atom> atoms;
  for (std::size_t i : idx) atoms.push_back(full.atoms()[i]);
  for (Atom& a : atoms) a.w = 1.0 / 50.0;
  return DiscreteMeasure(std::move(atoms), full.alpha(), full.scale());
}
}  // namespace

TEST_CASE("lp_bump: plateau, support, exact windowed partition") {
  CHECK(lp_bump(1.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lp_bump(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lp_bump(0.3) == 0.0);
  CHECK(lp_bump(0.79) == 0.0);
  CHECK(lp_bump(2.0) == 0.0);
  CHECK(lp_bump(4.1) == 0.0);
  // plateau on [1, 1.6]
  for (double u = 1.0; u <= 1.6; u += 0.01) {
    CHECK(lp_bump(u) == doctest::Approx(1.0).epsilon(1e-14));
  }
  // smooth in (0.8, 1): strictly between 0 and 1
  CHECK(lp_bump(0.9) > 0.0);
  CHECK(lp_bump(0.9) < 1.0);

  // partition of unity over n >= 0 for t >= 1, dense grid up to 2^18
  for (int i = 0; i <= 4000; ++i) {
    const double t = std::pow(2.0, 18.0 * i / 4000.0);
    double sum = 0.0;
    for (int n = 0; n <= 20; ++n) sum += lp_block_weight(n, t);
    CHECK(std::fabs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("psi cutoff: plateau on [1,2]^2, support in (1/2,4)^2") {
  CHECK(psi_cutoff(1.0, 1.0) == doctest::Approx(1.0));
  CHECK(psi_cutoff(1.7, 1.3) == doctest::Approx(1.0));
  CHECK(psi_cutoff(2.0, 2.0) == doctest::Approx(1.0));
  CHECK(psi_cutoff(0.4, 1.5) == 0.0);
  CHECK(psi_cutoff(1.5, 4.2) == 0.0);
  CHECK(psi_cutoff(0.7, 1.0) > 0.0);
  CHECK(psi_cutoff(0.7, 1.0) < 1.0);
}

TEST_CASE("spherical_average: point mass, two-point Bessel form, S(0)") {
  const DiscreteMeasure atom = single_atom({0.3, 0.7});
  for (double t : {0.0, 1.0, 7.5}) {
    for (const Ellipse& K : {Ellipse{1, 1, 0}, Ellipse{2, 1, 0.4}}) {
      CHECK(spherical_average(atom, t, K, 256) == doctest::Approx(kTwoPi).epsilon(1e-14));
    }
  }

  // atoms one unit apart, Euclidean: S(t) = pi + pi J0(2 pi t)
  const DiscreteMeasure pair({{{0.0, 0.5}, 0.5}, {{1.0, 0.5}, 0.5}}, 1.0, 1e-9);
  for (double t = 0.5; t <= 16.0; t *= 2.0) {
    const double S = spherical_average(pair, t, {1, 1, 0}, 1024);
    CHECK(S == doctest::Approx(kPi + kPi * oracle::j0(kTwoPi * t)).epsilon(1e-8));
  }

  // 0 <= S <= 2 pi
  const DiscreteMeasure mu = cantor_dust(1.0 / 3.0, 3);
  for (double t = 1.0; t <= 16.0; t *= 2.0) {
    const double S = spherical_average(mu, t, {1.5, 1.2, 0.3}, 512);
    CHECK(S >= 0.0);
    CHECK(S <= kTwoPi + 1e-12);
  }

  // diagonal exclusion subtracts exactly 2 pi sum w^2
  const double s_full = spherical_average(mu, 4.0, {1, 1, 0}, 512, false);
  const double s_excl = spherical_average(mu, 4.0, {1, 1, 0}, 512, true);
  CHECK(s_full - s_excl == doctest::Approx(kTwoPi * mu.diagonal_mass()).epsilon(1e-12));

  // resolution gate: t a_max beyond 1/scale
  CHECK_THROWS_AS(spherical_average(mu, 30.0, {1, 1, 0}, 512), resolution_error);
  CHECK_THROWS_AS(spherical_average(mu, 15.0, {2, 1, 0}, 512), resolution_error);
}

TEST_CASE("identity: quadrature equals the pair sum (disk and ellipse)") {
  const DiscreteMeasure mu = cantor_subset_50();
  for (const Ellipse& K : {Ellipse{1, 1, 0}, Ellipse{2, 1, 0}}) {
    for (double t : {2.0, 4.0, 8.0}) {
      const std::size_t nodes = recommended_angle_nodes(t, std::max(K.a1, K.a2));
      const double via_quad = spherical_average(mu, t, K, nodes);
      const double via_pairs = spherical_average_pair_sum(mu, t, K);
      CHECK(std::fabs(via_quad - via_pairs) / std::fabs(via_pairs) < 1e-6);
    }
  }
}

TEST_CASE("boundary_average reduces to the circle case and matches arc pair sums") {
  const DiscreteMeasure mu = cantor_subset_50();
  // on the disk the parameter measure is arc length
  const double a = boundary_average(mu, 3.0, ConvexBody::disk(), 1024);
  const double b = spherical_average(mu, 3.0, {1, 1, 0}, 1024);
  CHECK(a == doctest::Approx(b).epsilon(1e-12));

  // general body: integral over dK of |mu_hat(t u)|^2 ds equals the
  // sigma_hat pair sum (the boundary form of the same identity)
  const ConvexBody E = ConvexBody::ellipse(2, 1);
  const double lhs = boundary_average(mu, 2.0, E, 2048);
  double rhs = 0.0;
  for (const Atom& p : mu.atoms()) {
    for (const Atom& q : mu.atoms()) {
      const Vec2 d = p.p - q.p;
      rhs += p.w * q.w * arc_measure_ft(E, 2.0, d, 2048);
    }
  }
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
}

TEST_CASE("PairDistanceProfile matches the exact pair sum") {
  const DiscreteMeasure mu = cantor_dust(1.0 / 3.0, 3);
  const Ellipse K{1.4, 1.1, 0.6};
  const PairDistanceProfile prof(mu, K, 65536);
  for (double t : {1.0, 3.0, 9.0, 20.0}) {
    const double exact = spherical_average_pair_sum(mu, t, K, true);
    const double binned = prof.spherical_average(t, true);
    CHECK(std::fabs(binned - exact) < 2e-4 * std::max(1.0, std::fabs(exact)));
  }
}

TEST_CASE("mattila_integral: point-mass closed form and monotonicity") {
  const DiscreteMeasure atom = single_atom({0.2, 0.9});
  MattilaResolution res;
  res.exclude_diagonal = false;
  for (double T : {2.0, 8.0, 64.0}) {
    CHECK(mattila_integral(atom, {1, 1, 0}, T, res) ==
          doctest::Approx(4.0 * kPi * kPi * (T * T - 1.0) / 2.0).epsilon(1e-12));
  }

  // two atoms: oracle quadrature of (pi + pi J0(2 pi t))^2 t
  const DiscreteMeasure pair({{{0.0, 0.5}, 0.5}, {{1.0, 0.5}, 0.5}}, 1.0, 1e-9);
  const double got = mattila_integral(pair, {1, 1, 0}, 8.0, res);
  const double want = oracle::integrate(
      [](double t) {
        const double S = kPi + kPi * oracle::j0(kTwoPi * t);
        return S * S * t;
      },
      1.0, 8.0, 1e-10);
  CHECK(got == doctest::Approx(want).epsilon(1e-6));

  // monotone nondecreasing in t_max
  const DiscreteMeasure mu = cantor_dust(1.0 / 3.0, 4);
  double prev = 0.0;
  for (double T : {2.0, 4.0, 8.0, 16.0}) {
    const double v = mattila_integral(mu, {1, 1, 0}, T, res);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }

  // resolution gate
  CHECK_THROWS_AS(mattila_integral(mu, {1, 1, 0}, 100.0, res), resolution_error);
}

TEST_CASE("averaged_mattila: invariance for a point mass; degenerate bit-equality") {
  const DiscreteMeasure atom = single_atom({0.5, 0.5});
  MattilaResolution res;
  res.exclude_diagonal = false;
  const auto samples = halton_ellipse_samples(8, SampleBox::unit);
  const double avg = averaged_mattila(atom, samples, 8.0, res);
  CHECK(avg == doctest::Approx(4.0 * kPi * kPi * 63.0 / 2.0).epsilon(1e-12));

  const std::vector<EllipseSample> degenerate{{Ellipse{1, 1, 0}, 1.0}};
  const DiscreteMeasure mu = cantor_dust(1.0 / 3.0, 3);
  const double a = averaged_mattila(mu, degenerate, 8.0, res);
  const double b = mattila_integral(mu, {1, 1, 0}, 8.0, res);
  CHECK(a == b);  // bitwise

  // profile method agrees with quadrature within the binning tolerance
  const double prof = averaged_mattila(mu, degenerate, 8.0, res, SpectralMethod::pair_profile);
  CHECK(prof == doctest::Approx(b).epsilon(1e-4));
}

TEST_CASE("halton ellipse samples: boxes and weights") {
  const auto unit = halton_ellipse_samples(64, SampleBox::unit);
  for (const auto& s : unit) {
    CHECK(s.K.a1 >= 1.0);
    CHECK(s.K.a1 < 2.0);
    CHECK(s.K.a2 >= 1.0);
    CHECK(s.K.a2 < 2.0);
    CHECK(s.K.phi >= 0.0);
    CHECK(s.K.phi < kPi);
    CHECK(s.weight == 1.0);
  }
  const auto wide = halton_ellipse_samples(64, SampleBox::cutoff);
  for (const auto& s : wide) {
    CHECK(s.K.a1 >= 0.5);
    CHECK(s.K.a1 < 4.0);
    CHECK(s.weight == doctest::Approx(psi_cutoff(s.K.a1, s.K.a2)));
  }
}

TEST_CASE("dyadic blocks: point-mass 4^n scaling, nonnegativity, gates") {
  const DiscreteMeasure atom = single_atom({0.1, 0.4});
  MattilaResolution res;
  res.exclude_diagonal = false;
  const std::vector<EllipseSample> samples{{Ellipse{1, 1, 0}, 1.0}};
  const DyadicBlockReport b0 = dyadic_block(atom, samples, 0, res);
  for (int n : {1, 2, 3}) {
    const DyadicBlockReport bn = dyadic_block(atom, samples, n, res);
    CHECK(bn.value == doctest::Approx(std::pow(4.0, n) * b0.value).epsilon(1e-10));
    CHECK(bn.value >= 0.0);
  }

  // resolution gate: depth-3 dust has 1/scale = 27; block 3 needs reach 32
  const DiscreteMeasure mu = cantor_dust(1.0 / 3.0, 3);
  CHECK(max_resolved_block(mu, samples) == 2);
  CHECK_THROWS_AS(dyadic_block(mu, samples, 3, res), resolution_error);
  CHECK_NOTHROW(dyadic_block(mu, samples, 2, res));
}

TEST_CASE("dyadic decomposition tiles the windowed integral") {
  const DiscreteMeasure mu = cantor_dust(1.0 / 3.0, 4);
  const auto samples = halton_ellipse_samples(8, SampleBox::cutoff);
  MattilaResolution res;
  const int n_max = max_resolved_block(mu, samples);
  CHECK(n_max >= 2);
  const BlockDecomposition dec = dyadic_decomposition(mu, samples, n_max, res);
  REQUIRE(dec.blocks.size() == static_cast<std::size_t>(n_max) + 1);
  for (const auto& b : dec.blocks) CHECK(b.value >= 0.0);
  CHECK(std::fabs(dec.block_sum() - dec.windowed_total) <
        1e-4 * std::fabs(dec.windowed_total));
  // report JSON carries the block index
  CHECK(dec.blocks[1].to_json().find("\"n\": 1") != std::string::npos);
}

TEST_CASE("distance_measure: single pair, anisotropic square, gauge consistency") {
  const DiscreteMeasure pair({{{0.0, 0.0}, 0.5}, {{1.0, 0.0}, 0.5}}, 1.0, 1e-9);
  const DistanceMeasure dm = distance_measure(pair, ConvexBody::disk());
  REQUIRE(dm.samples().size() == 1);
  CHECK(dm.samples()[0].s == doctest::Approx(1.0));
  CHECK(dm.samples()[0].w == doctest::Approx(0.5));
  CHECK(dm.excluded_diagonal() == doctest::Approx(0.5));
  CHECK(dm.total_weight() == doctest::Approx(0.5));

  // unit-square corners, gauge of the (2,1) body: sides split, 3 values
  const DiscreteMeasure square(
      {{{0.0, 0.0}, 0.25}, {{1.0, 0.0}, 0.25}, {{0.0, 1.0}, 0.25}, {{1.0, 1.0}, 0.25}}, 1.0,
      1e-9);
  const DistanceMeasure dsq = distance_measure(square, ConvexBody::ellipse(2, 1));
  CHECK(dsq.samples().size() == 3);
  CHECK(dsq.total_weight() == doctest::Approx(0.75));
  // Euclidean case merges the sides: 2 values
  const DistanceMeasure deu = distance_measure(square, ConvexBody::disk());
  CHECK(deu.samples().size() == 2);

  // gauge of the dual equals the support function of the primal
  const ConvexBody K = ConvexBody::ellipse(1.6, 0.9, 0.5);
  const ConvexBody Kd = dual_body(K);
  const DistanceMeasure via_dual = distance_measure(square, Kd);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec2 z{2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0};
    CHECK(minkowski_norm(Kd, z) == doctest::Approx(support_function(K, z)).epsilon(1e-12));
  }
  CHECK(via_dual.samples().size() >= 2);
}

TEST_CASE("distance_measure_ft: one-pair closed forms, evenness, route equality") {
  const DiscreteMeasure pair({{{0.0, 0.0}, 0.5}, {{1.0, 0.0}, 0.5}}, 1.0, 1e-9);
  const DistanceMeasure dm = distance_measure(pair, ConvexBody::disk());
  for (double k : {0.7, 2.0, 13.25}) {
    CHECK(distance_measure_ft(dm, k) ==
          doctest::Approx(2.0 * 0.5 * std::cos(kTwoPi * (k - 0.125))).epsilon(1e-12));
    CHECK(distance_measure_ft(dm, -k) == distance_measure_ft(dm, k));
  }
  // k = 0: sqrt(2) * integral s^{-1/2}
  CHECK(distance_measure_ft(dm, 0.0) == doctest::Approx(std::sqrt(2.0) * 0.5).epsilon(1e-12));

  // (definition via samples) == (direct pair formula with the support
  // function), 1e-12, on a 50-atom measure
  const DiscreteMeasure mu = cantor_subset_50();
  const ConvexBody K = ConvexBody::ellipse(1.5, 0.8, 0.9);
  const DistanceMeasure dmu = distance_measure(mu, dual_body(K));
  for (double k : {1.0, 4.0, 9.5}) {
    const double a = distance_measure_ft(dmu, k);
    const double b = distance_measure_ft_pairs(mu, K, k);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }

  // zero-distance samples are rejected
  CHECK_THROWS_AS(DistanceMeasure({{0.0, 0.5}}, 0.0, "x"), std::invalid_argument);
}

TEST_CASE("distance-transform consistency: single pair closed form and evenness") {
  // For a single off-diagonal pair both sides have closed forms
  const DiscreteMeasure pair({{{0.0, 0.0}, 0.5}, {{1.0, 0.0}, 0.5}}, 1.0, 1e-9);
  const ConsistencyReport rep = distance_ft_consistency(pair, ConvexBody::disk(), 2.0, 32.0, 12);
  REQUIRE(rep.k.size() == 12);
  for (std::size_t i = 0; i < rep.k.size(); ++i) {
    const double k = rep.k[i];
    const double nu = 2.0 * 0.5 * std::cos(kTwoPi * (k - 0.125));
    const double S = kPi * oracle::j0(kTwoPi * k);  // off-diagonal part only
    CHECK(rep.residual[i] == doctest::Approx(std::fabs(nu - std::sqrt(k) * S)).epsilon(1e-6));
    // residual bounded on the grid
    CHECK(rep.residual[i] < 2.0);
  }
}
