#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "caprise/core.hpp"
#include "caprise/error.hpp"
#include "oracles.hpp"

using namespace caprise;

namespace {

FluidPair study_row(double rho, double g, double sigma) {
  return {rho, rho / 1000, 0.01, 1e-5, sigma, g};
}

Geometry study_geom() { return {0.005, oracle::deg(30), 0.01, 0.04}; }

}  // namespace

TEST_CASE("dimensionless numbers of rounded reference rows") {
  const auto d1 = dimensionless_numbers(study_row(83.1, 4.17, 0.04), study_geom());
  CHECK(d1.Omega == Rel(1.0).epsilon(5e-3));
  const auto d05 = dimensionless_numbers(study_row(133.0, 6.51, 0.1), study_geom());
  CHECK(d05.Omega == Rel(0.5).epsilon(5e-3));
}

TEST_CASE("Eotvos number with density difference") {
  // h_Jurin = 4R fixes rho g R^2 / sigma = cos(theta) / 4.
  const double sigma = 0.04, R = 0.005, c = std::cos(oracle::deg(30));
  const double rho = 83.14, g = sigma * c / (4 * R * R * rho);
  const auto d = dimensionless_numbers(study_row(rho, g, sigma), study_geom());
  CHECK(d.Eo == Rel(c / 4 * (1 - 1.0 / 1000)).epsilon(1e-12));
  CHECK(d.Eo == Rel(0.2165064).epsilon(1.5e-3));
  CHECK(d.l_cap == Rel(std::sqrt(sigma / (rho * g))).epsilon(1e-14));
}

TEST_CASE("Oh identity on random parameter sets") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    FluidPair f{std::pow(10.0, 4 * u(rng)), 1.0, std::pow(10.0, -4 + 3 * u(rng)), 1e-5,
                std::pow(10.0, -3 + 2 * u(rng)), std::pow(10.0, 2 * u(rng))};
    f.rho_g = f.rho_l / 1000;
    Geometry gm{std::pow(10.0, -4 + 2 * u(rng)), 1.5 * u(rng), 0.0, 1.0};
    const auto d = dimensionless_numbers(f, gm);
    // The identity uses the liquid-only Eo.
    const double eo_l = f.rho_l * f.g * gm.R * gm.R / f.sigma;
    const double oh = d.Omega * eo_l / (3 * std::sqrt(std::cos(gm.theta_e)));
    worst = std::max(worst, std::abs(oh / d.Oh - 1));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("non-wetting angle is rejected") {
  Geometry gm = study_geom();
  gm.theta_e = oracle::deg(100);
  CHECK_THROWS_AS(dimensionless_numbers(study_row(83.1, 4.17, 0.04), gm), Error);
}

TEST_CASE("jurin height") {
  const FluidPair f = study_row(83.1, 4.17, 0.04);
  CHECK(jurin_height(f, study_geom()) == Rel(0.02).epsilon(1e-3));
  Geometry flat = study_geom();
  flat.theta_e = oracle::deg(90);
  CHECK(std::abs(jurin_height(f, flat)) < 1e-17);
  CHECK(jurin_height(study_row(1663.8, 1.04, 0.2), study_geom()) == Rel(0.020020).epsilon(2e-5));

  const double h = jurin_height(f, study_geom());
  FluidPair f2 = f;
  f2.sigma *= 2;
  CHECK(jurin_height(f2, study_geom()) / h == Rel(2.0).epsilon(1e-15));
  f2 = f;
  f2.rho_l *= 2;
  CHECK(jurin_height(f2, study_geom()) / h == Rel(0.5).epsilon(1e-15));
  f2 = f;
  f2.g *= 2;
  CHECK(jurin_height(f2, study_geom()) / h == Rel(0.5).epsilon(1e-15));
  Geometry g2 = study_geom();
  g2.R *= 2;
  CHECK(jurin_height(f, g2) / h == Rel(0.5).epsilon(1e-15));
}

TEST_CASE("height correction against quadrature") {
  for (double d : {5.0, 15.0, 30.0, 45.0, 60.0, 75.0, 89.0}) {
    CAPTURE(d);
    Geometry gm = study_geom();
    gm.theta_e = oracle::deg(d);
    const double ref = oracle::meniscus_rise(gm.R, gm.theta_e);
    CHECK(std::abs(height_correction(gm) / ref - 1) <= 1e-9);
  }
  // 30-digit evaluation of the meniscus integral: 0.16789370298670681...
  CHECK(std::abs(height_correction(study_geom()) / 0.005 - 0.16789370298670682) <= 1e-15);
  CHECK(height_correction(study_geom()) == Rel(8.39468e-4).epsilon(1e-6));

  Geometry g0{1.0, 0.0, 0.0, 8.0};
  CHECK(height_correction(g0) == Rel(1 - std::numbers::pi / 4).epsilon(1e-13));
  Geometry g90 = study_geom();
  g90.theta_e = oracle::deg(90);
  CHECK(height_correction(g90) == 0.0);
}

TEST_CASE("height correction near 90 degrees and monotonicity") {
  Geometry gm = study_geom();
  double prev = height_correction(gm);
  for (double d = 31; d <= 90; d += 1) {
    gm.theta_e = oracle::deg(d);
    const double h = height_correction(gm);
    CHECK(h < prev);
    CHECK(h >= 0.0);
    prev = h;
  }
  // Series branch and closed form meet smoothly.
  gm.theta_e = std::numbers::pi / 2 - 2e-6;
  const double outside = height_correction(gm);
  gm.theta_e = std::numbers::pi / 2 - 5e-7;
  const double inside = height_correction(gm);
  CHECK(outside == Rel(gm.R * std::cos(std::numbers::pi / 2 - 2e-6) / 6).epsilon(1e-4));
  CHECK(inside == Rel(gm.R * std::cos(gm.theta_e) / 6).epsilon(1e-6));
}

TEST_CASE("stationary height") {
  const double sigma = 0.04, R = 0.005, c = std::cos(oracle::deg(30));
  const double rho = 144 * 1e-4 / (R * sigma * c);
  const double g = sigma * c / (4 * R * R * rho);
  const FluidPair f = study_row(rho, g, sigma);
  CHECK(stationary_height(f, study_geom()) == Rel(0.0191605).epsilon(3e-6));
  CHECK(stationary_height(f, study_geom()) < jurin_height(f, study_geom()));

  Geometry g90 = study_geom();
  g90.theta_e = oracle::deg(90);
  CHECK(std::abs(stationary_height(f, g90)) < 1e-17);

  Geometry half = study_geom();
  half.R /= 2;
  CHECK(jurin_height(f, half) / jurin_height(f, study_geom()) == Rel(2.0).epsilon(1e-12));
}

TEST_CASE("slip spec") {
  CHECK(SlipSpec::numerical().length() == 0.0);
  CHECK(SlipSpec::navier(0.001).length() == 0.001);
  CHECK(SlipSpec::navier(0.001).describe() == "navier:0.001");
  CHECK(SlipSpec::numerical().describe() == "numerical");
  CHECK_THROWS_AS(SlipSpec::navier(-1.0).validate(), Error);
}
