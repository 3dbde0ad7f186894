#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "caprise/error.hpp"
#include "caprise/harness.hpp"
#include "caprise/study.hpp"
#include "caprise/vof2d/vof2d.hpp"
#include "oracles.hpp"

using namespace caprise;
using namespace caprise::vof2d;

namespace {

CaseSetup2D omega1(int nx, SlipSpec slip = SlipSpec::navier(0.001)) {
  CaseSetup2D s;
  s.case_spec = harness::make_case(1.0, 0.04, slip, "omega-1");
  s.n_cells_per_radius = nx;
  s.t_end = 1.0;
  return s;
}

// Area of {x + y <= s} inside the unit square.
double diag_area(double s) {
  if (s <= 0) return 0;
  if (s <= 1) return 0.5 * s * s;
  if (s <= 2) return 1 - 0.5 * (2 - s) * (2 - s);
  return 1;
}

double max_curvature_error(int nx) {
  CaseSetup2D s = omega1(nx);
  const SimState st = init_case(s);
  const Geometry& g = s.case_spec.geom;
  const double k_exact = std::cos(g.theta_e) / g.R;
  const auto k = column_curvatures(st, g.theta_e);
  double err = 0;
  for (int i = 0; i + 1 < nx; ++i) err = std::max(err, std::abs(k[i] - k_exact) / k_exact);
  return err;
}

double mms_error(int nx) {
  const StudyParams p = synth_params(1, 0.04);
  const Grid g = make_grid(p.geom, nx);
  const double R = p.geom.R, H = 8 * R;
  Field2D bu(g.nx + 1, g.ny, 1.0), bv(g.nx, g.ny + 1, 1.0), rhs(g.nx, g.ny);
  auto exact = [&](double x, double y) {
    return std::cos(std::numbers::pi * x / R) * std::sin(std::numbers::pi * y / H);
  };
  const double k2 = std::pow(std::numbers::pi / R, 2) + std::pow(std::numbers::pi / H, 2);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) rhs(i, j) = k2 * exact(g.xc(i), g.yc(j));
  }
  const PressureResult r = solve_poisson(g, bu, bv, rhs, false, 1e-12);
  double err = 0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) err = std::max(err, std::abs(r.p(i, j) - exact(g.xc(i), g.yc(j))));
  }
  return err;
}

std::pair<double, double> centroid(const Field2D& a, const Grid& g) {
  double m = 0, mx = 0, my = 0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      m += a(i, j);
      mx += a(i, j) * g.xc(i);
      my += a(i, j) * g.yc(j);
    }
  }
  return {mx / m, my / m};
}

}  // namespace

TEST_CASE("grid") {
  const Grid g = make_grid(synth_params(1, 0.04).geom, 8);
  CHECK(g.nx == 8);
  CHECK(g.ny == 64);
  CHECK(g.dx == g.dy);
  CHECK(g.dx == Rel(0.005 / 8));
  CHECK_THROWS_AS(make_grid(synth_params(1, 0.04).geom, 3), Error);
}

TEST_CASE("initial volume fractions") {
  const CaseSetup2D s = omega1(16);
  const SimState st = init_case(s);
  const Geometry& g = s.case_spec.geom;
  const double dy = st.grid.dy, cell = st.grid.dx * dy;
  double vol = 0;
  for (double a : st.alpha.data()) {
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
    vol += a * cell;
  }
  const double ref = g.R * (g.h0 + oracle::meniscus_rise(g.R, g.theta_e));
  CHECK(std::abs(vol / ref - 1) <= 1e-10);

  double col = 0;
  for (int j = 0; j < st.grid.ny; ++j) col += st.alpha(0, j) * dy;
  // The symmetry column holds the arc averaged over [0, dx].
  const double r = g.R / std::cos(g.theta_e), dx = st.grid.dx;
  const double mean_rise =
      oracle::integrate([r](double x) { return r - std::sqrt(r * r - x * x); }, 0, dx, 1e-22) / dx;
  CHECK(std::abs(col / (g.h0 + mean_rise) - 1) <= 1e-10);
  CHECK(apex_height(st) == Rel(col).epsilon(1e-14));
  CHECK(std::abs(apex_height(st) / (2 * g.R) - 1) < 2e-3);

  CHECK(initial_contact_line_height(g) == Rel(g.h0 + 2.88675e-3).epsilon(1e-6));
  CHECK(st.u == Field2D(st.grid.nx + 1, st.grid.ny));
  CHECK(st.v == Field2D(st.grid.nx, st.grid.ny + 1));
  CHECK(st.p == Field2D(st.grid.nx, st.grid.ny));
}

TEST_CASE("flat initial interface") {
  CaseSetup2D s = omega1(8);
  s.case_spec.geom.theta_e = std::numbers::pi / 2;
  s.case_spec.geom.h0 = 0.0103;
  const SimState st = init_case(s);
  int partial_rows = 0;
  for (int j = 0; j < st.grid.ny; ++j) {
    const double a = st.alpha(0, j);
    for (int i = 1; i < st.grid.nx; ++i) CHECK(st.alpha(i, j) == Rel(a).epsilon(1e-12));
    if (a > 1e-12 && a < 1 - 1e-12) ++partial_rows;
    if (st.grid.yc(j) + 0.5 * st.grid.dy <= 0.0103) CHECK(a == 1.0);
  }
  CHECK(partial_rows == 1);
  CHECK(apex_height(st) == Rel(0.0103).epsilon(1e-12));

  SimState level = st;
  for (int j = 0; j < st.grid.ny; ++j) {
    for (int i = 1; i < st.grid.nx; ++i) level.alpha(i, j) = st.alpha(0, j);
  }
  for (double k : column_curvatures(level, s.case_spec.geom.theta_e)) CHECK(std::abs(k) <= 1e-12);
}

TEST_CASE("initial arc above the domain is rejected") {
  CaseSetup2D s = omega1(8);
  s.case_spec.geom.h0 = 0.038;
  CHECK_THROWS_AS(init_case(s), Error);
  try {
    init_case(s);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ArcExceedsDomain);
  }
}

TEST_CASE("time step limits") {
  const CaseSetup2D s = omega1(16);
  SimState st = init_case(s);
  const FluidPair& f = s.case_spec.fluid;
  const double dx = st.grid.dx;
  const double dt_sigma = std::sqrt((f.rho_l + f.rho_g) * dx * dx * dx / (4 * std::numbers::pi * f.sigma));
  const double dt_mu = f.rho_l * dx * dx / (6 * f.mu_l);
  CHECK(compute_dt(st, s) == Rel(0.9 * std::min(dt_sigma, dt_mu)).epsilon(1e-14));

  const CaseSetup2D s32 = omega1(32);
  const SimState st32 = init_case(s32);
  const auto l16 = timestep_limits(f, dx, 0), l32 = timestep_limits(f, dx / 2, 0);
  CHECK(l16.dt_sigma_solver / l32.dt_sigma_solver == Rel(std::pow(2.0, 1.5)).epsilon(1e-14));
  CHECK(compute_dt(st32, s32) <= compute_dt(st, s));

  st.v(3, 40) = 100.0;
  CHECK(compute_dt(st, s) == Rel(0.9 * dx / 100.0).epsilon(1e-14));
}

TEST_CASE("PLIC reconstruction") {
  const double dx = 1.0, dy = 1.0;
  Stencil3 horiz{};
  for (int di = 0; di < 3; ++di) horiz[di] = {1.0, 0.5, 0.0};
  const PlicPlane hp = plic_reconstruct(horiz, dx, dy);
  CHECK(std::abs(hp.normal.x) <= 1e-15);
  CHECK(hp.normal.y == Rel(1.0));
  CHECK(std::abs(hp.offset) <= 1e-12);

  // Rasterized x + y = s line through the centre cell (cell-local origin at
  // the lower-left corner of the stencil).
  Stencil3 diag{};
  const double s = 1.3 + 1.0 + 1.0;
  for (int di = 0; di < 3; ++di) {
    for (int dj = 0; dj < 3; ++dj) diag[di][dj] = diag_area(s - di - dj);
  }
  const PlicPlane dp = plic_reconstruct(diag, dx, dy);
  CHECK(dp.normal.x == Rel(1 / std::sqrt(2.0)).epsilon(1e-2));
  CHECK(dp.normal.y == Rel(1 / std::sqrt(2.0)).epsilon(1e-2));
  CHECK(plane_area(dp, {-0.5, 0.5, -0.5, 0.5}) == Rel(diag[1][1]).epsilon(1e-12));

  Stencil3 corner{};
  for (auto& c : corner) c = {1.0, 1.0, 1.0};
  corner[2][2] = 0.0;
  corner[1][1] = 0.8;
  const PlicPlane cp = plic_reconstruct(corner, 0.5, 0.5);
  CHECK(std::abs(plane_area(cp, {-0.25, 0.25, -0.25, 0.25}) - 0.8 * 0.25) <= 1e-12 * 0.25);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 2000; ++n) {
    Stencil3 a{};
    for (auto& c : a) c = {u(rng), u(rng), u(rng)};
    a[1][1] = 1e-6 + (1 - 2e-6) * u(rng);
    const PlicPlane p = plic_reconstruct(a, 2e-4, 2e-4);
    CHECK(std::abs(p.normal.x * p.normal.x + p.normal.y * p.normal.y - 1) <= 1e-14);
    REQUIRE(std::abs(plane_area(p, {-1e-4, 1e-4, -1e-4, 1e-4}) / 4e-8 - a[1][1]) <= 1e-12);
  }

  Stencil3 uniform{};
  for (auto& c : uniform) c = {0.5, 0.5, 0.5};
  CHECK_THROWS_AS(youngs_normal(uniform, 1, 1), Error);
  const PlicPlane fb = plic_reconstruct(uniform, 1, 1);
  CHECK(fb.normal.y == 1.0);
}

TEST_CASE("contact angle ghost") {
  const double dx = 1e-3;
  CHECK(contact_angle_ghost(0.01, std::numbers::pi / 2, dx) == Rel(0.01).epsilon(1e-15));
  CHECK(contact_angle_ghost(0.01, std::numbers::pi / 4, dx) == Rel(0.01 + dx).epsilon(1e-14));
  CHECK(contact_angle_ghost(0.01, std::numbers::pi / 6, dx) == Rel(0.01 + dx * std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("height-function curvature converges at second order") {
  const double e32 = max_curvature_error(32);
  const double e64 = max_curvature_error(64);
  const double order = std::log2(e32 / e64);
  MESSAGE("curvature error " << e32 << " -> " << e64 << ", order " << order);
  CHECK(order >= 1.8);
  CHECK(e64 < 1e-3);
}

TEST_CASE("wall boundary ghost factors") {
  BoundaryModel bc;
  bc.dx = 1e-4;
  bc.slip = SlipSpec::navier(1e12);
  CHECK(bc.wall_ghost_factor() == Rel(1.0).epsilon(1e-12));
  bc.slip = SlipSpec::navier(0.0);
  CHECK(bc.wall_ghost_factor() == -1.0);
  bc.slip = SlipSpec::navier(0.5e-4);
  CHECK(bc.wall_ghost_factor() == 0.0);
  bc.slip = SlipSpec::numerical();
  CHECK(bc.wall_ghost_factor() == -1.0);
}

TEST_CASE("apply boundaries") {
  CaseSetup2D s = omega1(4);
  SimState st = init_case(s);
  for (double& x : st.u.data()) x = 1.0;
  for (double& x : st.v.data()) x = 2.0;
  st.v(1, 1) = 5.0;
  st.v(1, st.grid.ny - 1) = 7.0;
  apply_boundaries(st, boundary_model(s));
  for (int j = 0; j < st.grid.ny; ++j) {
    CHECK(st.u(0, j) == 0.0);
    CHECK(st.u(st.grid.nx, j) == 0.0);
  }
  CHECK(st.v(1, 0) == 5.0);
  CHECK(st.v(1, st.grid.ny) == 7.0);

  s.closed_inflow = true;
  apply_boundaries(st, boundary_model(s));
  CHECK(st.v(1, 0) == 0.0);

  CHECK(alpha_ext(st, -1, 5) == st.alpha(0, 5));
  CHECK(alpha_ext(st, st.grid.nx, 5) == st.alpha(st.grid.nx - 1, 5));
  CHECK(alpha_ext(st, 2, -1) == 1.0);
  CHECK(alpha_ext(st, 2, st.grid.ny) == 0.0);
}

TEST_CASE("apex height") {
  CaseSetup2D s = omega1(4);
  SimState st = init_case(s);
  st.alpha.fill(1.0);
  CHECK(apex_height(st) == Rel(8 * s.case_spec.geom.R).epsilon(1e-14));
  st.alpha.fill(0.0);
  for (int j = 0; j < 5; ++j) st.alpha(0, j) = 1.0;
  st.alpha(0, 5) = 0.25;
  CHECK(apex_height(st) == Rel(5.25 * st.grid.dy).epsilon(1e-14));
  st.alpha(0, 9) = 0.5;
  CHECK_THROWS_AS(apex_height(st), Error);
}

TEST_CASE("momentum predictor") {
  CaseSetup2D s = omega1(8, SlipSpec::navier(1e12));
  s.gravity = false;
  SimState st = init_case(s);
  st.alpha.fill(1.0);
  const double dt = 1e-4;
  Predictor p = momentum_step(st, s, dt);
  CHECK(max_abs(p.u) == 0.0);
  CHECK(max_abs(p.v) == 0.0);

  s.gravity = true;
  p = momentum_step(st, s, dt);
  const double g = s.case_spec.fluid.g;
  CHECK(max_abs(p.u) <= 1e-14);
  for (double v : p.v.data()) CHECK(v == Rel(-g * dt).epsilon(1e-10));
}

TEST_CASE("static meniscus after one step") {
  CaseSetup2D s = omega1(16);
  s.gravity = false;
  s.closed_inflow = true;
  Simulation sim(s);
  const auto d = sim.step();
  const FluidPair& f = s.case_spec.fluid;
  CHECK(d.max_speed <= 1e-3 * f.sigma / f.mu_l);

  // Pressure below the meniscus, relative to the gas above it.
  const SimState& st = sim.state();
  const double jump = st.p(0, st.grid.ny - 1) - st.p(0, 0);
  const double ref = f.sigma * std::cos(s.case_spec.geom.theta_e) / s.case_spec.geom.R;
  CHECK(jump == Rel(ref).epsilon(0.05));
}

TEST_CASE("Poisson solver") {
  const double e8 = mms_error(8), e16 = mms_error(16);
  MESSAGE("manufactured pressure error " << e8 << " -> " << e16);
  CHECK(std::log2(e8 / e16) >= 1.8);

  const CaseSetup2D s = omega1(8);
  SimState st = init_case(s);
  const Predictor zero{st.u, st.v};
  const FluidFaces faces = face_densities(st, s.case_spec.fluid);
  const PressureResult r = pressure_solve(zero, faces, st.grid, 1e-4, false, 1e-10);
  CHECK(max_abs(r.p) == 0.0);

  Field2D b(st.grid.nx, st.grid.ny, 1.0);
  Field2D bu(st.grid.nx + 1, st.grid.ny, 1.0), bv(st.grid.nx, st.grid.ny + 1, 1.0);
  CHECK_THROWS_AS(solve_poisson(st.grid, bu, bv, b, false, 1e-12, 2), Error);
}

TEST_CASE("projection removes the divergence") {
  const CaseSetup2D s = omega1(8);
  SimState st = init_case(s);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.01, 0.01);
  Predictor p{st.u, st.v};
  for (int j = 0; j < st.grid.ny; ++j) {
    for (int i = 1; i < st.grid.nx; ++i) p.u(i, j) = u(rng);
  }
  for (int j = 0; j <= st.grid.ny; ++j) {
    for (int i = 0; i < st.grid.nx; ++i) p.v(i, j) = u(rng);
  }
  const double dt = 1e-4;
  const FluidFaces faces = face_densities(st, s.case_spec.fluid);
  const PressureResult r = pressure_solve(p, faces, st.grid, dt, false, 1e-10);
  project_velocity(st, p, faces, r.p, dt, false);
  const double before = max_abs(divergence(p.u, p.v, st.grid));
  const double after = max_abs(divergence(st.u, st.v, st.grid));
  CHECK(after <= 10 * 1e-10 * before);
}

TEST_CASE("advection") {
  const CaseSetup2D s = omega1(16);
  SimState st = init_case(s);
  const Field2D a0 = st.alpha;
  CHECK(advect_alpha(st, 1e-4, 0) == a0);
  CHECK(advect_alpha(st, 1e-4, 1) == a0);

  // Square blob translated by a uniform field.
  st.alpha.fill(0.0);
  for (int j = 58; j < 70; ++j) {
    for (int i = 2; i < 14; ++i) st.alpha(i, j) = 1.0;
  }
  const double dx = st.grid.dx, dt = 1e-4;
  const double U = 0.3 * dx / dt, V = -0.45 * dx / dt;
  st.u.fill(U);
  st.v.fill(V);
  for (int step = 0; step < 2; ++step) {
    const auto [x0, y0] = centroid(st.alpha, st.grid);
    double m0 = 0;
    for (double a : st.alpha.data()) m0 += a;
    AdvectionReport rep;
    st.alpha = advect_alpha(st, dt, step % 2, &rep);
    const auto [x1, y1] = centroid(st.alpha, st.grid);
    double m1 = 0;
    for (double a : st.alpha.data()) m1 += a;
    CHECK(std::abs(x1 - x0 - U * dt) <= 1e-3 * dx);
    CHECK(std::abs(y1 - y0 - V * dt) <= 1e-3 * dx);
    CHECK(std::abs(m1 / m0 - 1) <= 1e-12);
    CHECK(rep.max_courant == Rel(0.45));
  }

  st.v.fill(2 * dx / dt);
  CHECK_THROWS_AS(advect_alpha(st, dt, 0), Error);
}

TEST_CASE("dynamic step invariants") {
  CaseSetup2D s = omega1(8);
  Simulation sim(s);
  double worst_balance = 0, worst_clip = 0, worst_div = 0;
  for (int n = 0; n < 200; ++n) {
    const StepDiagnostics d = sim.step();
    worst_balance = std::max(worst_balance,
                             std::abs(d.volume_after - d.volume_before - d.boundary_inflow) / d.volume_after);
    worst_clip = std::max(worst_clip, d.clipped / d.volume_after);
    worst_div = std::max(worst_div, d.max_div / d.max_div_predictor);
    REQUIRE(d.alpha_min >= 0.0);
    REQUIRE(d.alpha_max <= 1.0);
  }
  CHECK(worst_balance <= 1e-10);
  CHECK(worst_clip <= 1e-10);
  CHECK(worst_div <= 10 * s.pressure_tol);
  CHECK(apex_height(sim.state()) > 2 * s.case_spec.geom.R);
}

TEST_CASE("runs are deterministic") {
  CaseSetup2D s = omega1(4);
  s.t_end = 0.02;
  const Trajectory a = run(s), b = run(s);
  REQUIRE(a.size() == b.size());
  CHECK(a.size() == 401);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a.samples[k].t == b.samples[k].t);
    CHECK(a.samples[k].h == b.samples[k].h);
    CHECK(a.samples[k].v == b.samples[k].v);
  }
  CHECK(a.back().t == 0.02);
  CHECK(a.meta.model == "vof2d");
  CHECK(a.meta.n_steps > 0);
}
