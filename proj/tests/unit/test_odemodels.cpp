#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "caprise/core.hpp"
#include "oracles.hpp"
#include "caprise/error.hpp"
#include "caprise/ode_models.hpp"
#include "caprise/study.hpp"

using namespace caprise;

namespace {

const double kSigma[] = {0.2, 0.1, 0.04, 0.01, 0.001};
const double kOmega[] = {0.1, 0.5, 1, 10, 100};

StudyParams row(double omega) {
  for (int k = 0; k < 5; ++k) {
    if (kOmega[k] == omega) return synth_params(omega, kSigma[k]);
  }
  throw std::logic_error("no such row");
}

Trajectory synthetic(double h_inf, double A, double w, double t_end, double dt) {
  Trajectory tr;
  for (int k = 0; k * dt <= t_end + 1e-12; ++k) {
    const double t = k * dt;
    tr.samples.push_back({t, h_inf + A * std::exp(-t) * std::cos(w * t),
                          -A * std::exp(-t) * (std::cos(w * t) + w * std::sin(w * t))});
  }
  return tr;
}

}  // namespace

TEST_CASE("right-hand side equilibria") {
  const StudyParams p = row(1);
  const double hj = jurin_height(p.fluid, p.geom);
  const RiseRate c = rhs(ModelSpec::classical(), p.fluid, p.geom, {hj, 0});
  CHECK(c.dh == 0.0);
  CHECK(std::abs(c.dv) <= 1e-12);
  const ModelSpec ext = ModelSpec::extended(p.geom.R / 5);
  const RiseRate e = rhs(ext, p.fluid, p.geom, {hj - height_correction(p.geom), 0});
  CHECK(std::abs(e.dv) <= 1e-12);
  CHECK(model_stationary_height(ext, p.fluid, p.geom) == Rel(stationary_height(p.fluid, p.geom)));
  CHECK(model_stationary_height(ModelSpec::classical(), p.fluid, p.geom) == Rel(hj));
}

TEST_CASE("right-hand side values at h = 0.01") {
  const StudyParams p = row(1);
  const FluidPair& f = p.fluid;
  const double R = p.geom.R, c = std::cos(p.geom.theta_e);
  const double cap = f.sigma * c / (f.rho_l * R);

  const double ref_c = (cap - f.g * 0.01) / 0.01;
  const RiseRate rc = rhs(ModelSpec::classical(), f, p.geom, {0.01, 0});
  CHECK(rc.dv == Rel(ref_c).epsilon(1e-13));
  CHECK(rc.dv == Rel(4.16719).epsilon(2e-4));

  const double H = 0.01 + 8.39468e-4;
  const RiseRate re = rhs(ModelSpec::extended(R / 5), f, p.geom, {0.01, 0});
  CHECK(re.dv == Rel((cap - f.g * H) / H).epsilon(1e-6));
  CHECK(re.dv == Rel(3.52148).epsilon(2e-4));

  // Moving state, term by term.
  const double v = 0.05, L = R / 5, h = 0.012;
  const double Hm = h + height_correction(p.geom);
  const double conv = 3 * (15 * L * L + 10 * L * R + 2 * R * R) / (5 * std::pow(R + 3 * L, 2));
  const double ref = (cap - f.g * Hm - 3 * f.mu_l * v * Hm / (f.rho_l * R * (R + 3 * L)) +
                      conv * v * v - v * v) / Hm;
  CHECK(rhs(ModelSpec::extended(L), f, p.geom, {h, v}).dv == Rel(ref).epsilon(1e-13));
  const double ref_cl = (cap - f.g * h - 3 * f.mu_l * v * h / (f.rho_l * R * R) - v * v) / h;
  CHECK(rhs(ModelSpec::classical(), f, p.geom, {h, v}).dv == Rel(ref_cl).epsilon(1e-13));
}

TEST_CASE("singular heights") {
  const StudyParams p = row(1);
  CHECK_THROWS_AS(rhs(ModelSpec::classical(), p.fluid, p.geom, {0.0, 0}), Error);
  CHECK_THROWS_AS(rhs(ModelSpec::extended(0.001), p.fluid, p.geom, {-height_correction(p.geom), 0}), Error);
  CHECK_THROWS_AS(integrate(ModelSpec::classical(), p.fluid, p.geom, {0.0, 0}, 1.0), Error);
}

TEST_CASE("integrate levels at the stationary height") {
  const StudyParams p = row(10);
  const double t_end = auto_t_end(p.fluid, p.geom);
  const Trajectory tr = integrate(ModelSpec::extended(p.geom.R / 5), p.fluid, p.geom, {p.geom.h0, 0}, t_end);
  CHECK(tr.front().t == 0.0);
  CHECK(tr.back().t == t_end);
  CHECK(tr.size() == 2001);
  CHECK(std::abs(tr.back().h / stationary_height(p.fluid, p.geom) - 1) <= 1e-4);
  CHECK(detect_peaks(tr).empty());
  for (std::size_t k = 1; k < tr.size(); ++k) CHECK(tr.samples[k].t > tr.samples[k - 1].t);
}

TEST_CASE("integrate from equilibrium stays put") {
  const StudyParams p = row(0.5);
  const double hj = jurin_height(p.fluid, p.geom);
  const Trajectory tr = integrate(ModelSpec::classical(), p.fluid, p.geom, {hj, 0}, 1.0);
  for (const auto& s : tr.samples) CHECK(std::abs(s.h / hj - 1) <= 1e-10);
}

TEST_CASE("extended model reduces to the classical one") {
  const StudyParams p = row(1);
  ModelSpec red = ModelSpec::extended(0);
  red.include_convective = false;
  red.apply_height_correction = false;
  const double t_end = auto_t_end(p.fluid, p.geom);
  IntegrateOptions io;
  const Trajectory a = integrate(red, p.fluid, p.geom, {p.geom.h0, 0}, t_end, io);
  const Trajectory b = integrate(ModelSpec::classical(), p.fluid, p.geom, {p.geom.h0, 0}, t_end, io);
  REQUIRE(a.size() == b.size());
  double worst = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    worst = std::max(worst, std::abs(a.samples[k].h - b.samples[k].h) / std::abs(b.samples[k].h));
  }
  CHECK(worst <= 10 * io.tol.rel);
}

TEST_CASE("liquid rises initially") {
  for (double om : kOmega) {
    const StudyParams p = row(om);
    const ModelSpec m = ModelSpec::extended(p.geom.R / 5);
    CHECK(rhs(m, p.fluid, p.geom, {p.geom.h0, 0}).dv > 0);
    const Trajectory tr = integrate(m, p.fluid, p.geom, {p.geom.h0, 0}, auto_t_end(p.fluid, p.geom));
    const auto peaks = detect_peaks(tr);
    const double t_first = peaks.empty() ? tr.back().t : peaks.front().t;
    for (const auto& s : tr.samples) {
      if (s.t > 0 && s.t < t_first) CHECK(s.h > p.geom.h0);
    }
  }
}

TEST_CASE("tolerance halving converges") {
  for (double om : {0.1, 1.0, 10.0}) {
    const StudyParams p = row(om);
    const ModelSpec m = ModelSpec::extended(p.geom.R / 5);
    const double t_end = auto_t_end(p.fluid, p.geom);
    IntegrateOptions a, b;
    a.tol.rel = 1e-8;
    b.tol.rel = 5e-9;
    const double ha = integrate(m, p.fluid, p.geom, {p.geom.h0, 0}, t_end, a).back().h;
    const double hb = integrate(m, p.fluid, p.geom, {p.geom.h0, 0}, t_end, b).back().h;
    CHECK(std::abs(ha - hb) / std::abs(hb) < a.tol.rel);
  }
}

TEST_CASE("damped oscillation for Omega = 0.1") {
  const StudyParams p = row(0.1);
  const Trajectory tr = integrate(ModelSpec::extended(p.geom.R / 5), p.fluid, p.geom, {p.geom.h0, 0},
                                  auto_t_end(p.fluid, p.geom));
  const auto peaks = detect_peaks(tr);
  int maxima = 0;
  double prev = 1e9;
  for (std::size_t k = 0; k < peaks.size(); ++k) {
    if (k > 0) CHECK(peaks[k].is_max != peaks[k - 1].is_max);
    if (!peaks[k].is_max) continue;
    ++maxima;
    CHECK(peaks[k].h <= prev);
    prev = peaks[k].h;
  }
  CHECK(maxima >= 4);
}

TEST_CASE("detect peaks on a synthetic signal") {
  const double w = 3.0, dt = 1e-3;
  const Trajectory tr = synthetic(1.0, 0.5, w, 6.0, dt);
  const auto peaks = detect_peaks(tr, {1e-4, 1.0});
  REQUIRE(peaks.size() >= 4);
  // h' = 0 where tan(w t) = -1 / w.
  const double t0 = (std::atan(-1.0 / w) + std::numbers::pi) / w;
  for (std::size_t k = 0; k < peaks.size(); ++k) {
    const double t = t0 + k * std::numbers::pi / w;
    CHECK(std::abs(peaks[k].t - t) <= dt);
    CHECK(peaks[k].is_max == (k % 2 == 1));
  }

  Trajectory mono;
  for (int k = 0; k < 100; ++k) mono.samples.push_back({k * 0.1, 1 - std::exp(-0.1 * k), 0});
  CHECK(detect_peaks(mono).empty());

  const StudyParams p = row(100);
  const Trajectory e = integrate(ModelSpec::extended(p.geom.R / 5), p.fluid, p.geom, {p.geom.h0, 0},
                                 auto_t_end(p.fluid, p.geom));
  CHECK(detect_peaks(e).empty());
}

TEST_CASE("settle metrics") {
  Trajectory flat;
  for (int k = 0; k < 10; ++k) flat.samples.push_back({0.1 * k, 2.0, 0.0});
  const SettleMetrics f = settle_metrics(flat, 2.0);
  REQUIRE(f.t_settle);
  CHECK(*f.t_settle == 0.0);
  CHECK(f.overshoot == 0.0);
  CHECK(f.h_final == 2.0);

  // Slow oscillation: the signal leaves the 1% band for the last time near
  // the envelope crossing.
  const double A = 0.5, w = 0.05, dt = 1e-3;
  const Trajectory tr = synthetic(1.0, A, w, 8.0, dt);
  const SettleMetrics m = settle_metrics(tr, 1.0);
  REQUIRE(m.t_settle);
  double lo = 3.0, hi = 5.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (A * std::exp(-mid) * std::cos(w * mid) > 0.01 ? lo : hi) = mid;
  }
  CHECK(std::abs(*m.t_settle - lo) <= dt);
  CHECK(std::abs(*m.t_settle - std::log(A / 0.01)) <= 0.05);
  CHECK(m.overshoot == Rel(A).epsilon(1e-12));

  Trajectory never;
  for (int k = 0; k < 10; ++k) never.samples.push_back({0.1 * k, 1.5, 0.0});
  CHECK_FALSE(settle_metrics(never, 1.0).t_settle);

  const StudyParams p = row(1);
  const Trajectory e = integrate(ModelSpec::extended(p.geom.R / 5), p.fluid, p.geom, {p.geom.h0, 0},
                                 auto_t_end(p.fluid, p.geom));
  CHECK(settle_metrics(e, stationary_height(p.fluid, p.geom)).overshoot > 0);
}

TEST_CASE("maximum capillary number") {
  FluidPair f{1000, 1, 0.01, 1e-5, 0.1, 9.81};
  Trajectory z;
  z.samples = {{0, 1, 0}, {1, 1, 0}};
  CHECK(ca_max(z, f) == 0.0);
  Trajectory one;
  one.samples = {{0, 1, 0.5}, {1, 1, -1.0}, {2, 1, 0.2}};
  CHECK(ca_max(one, f) == Rel(0.1).epsilon(1e-15));
}

TEST_CASE("model names") {
  CHECK(parse_model_kind("classical") == ModelKind::Classical);
  CHECK(parse_model_kind("extended") == ModelKind::Extended);
  CHECK(to_string(ModelKind::Extended) == "extended");
  CHECK_THROWS_AS(parse_model_kind("vof"), Error);
}
