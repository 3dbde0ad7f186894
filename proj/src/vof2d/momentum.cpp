#include <algorithm>
#include <cmath>

#include "caprise/error.hpp"
#include "caprise/vof2d/stencil_solver.hpp"
#include "caprise/vof2d/vof2d.hpp"

namespace caprise::vof2d {

FluidFaces face_densities(const SimState& s, const FluidPair& fluid) {
  const Grid& g = s.grid;
  auto rho = [&](double a) { return a * fluid.rho_l + (1.0 - a) * fluid.rho_g; };
  FluidFaces f{Field2D(g.nx + 1, g.ny), Field2D(g.nx, g.ny + 1)};
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i <= g.nx; ++i) {
      f.rho_u(i, j) = 0.5 * (rho(alpha_ext(s, i - 1, j)) + rho(alpha_ext(s, i, j)));
    }
  }
  for (int j = 0; j <= g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      f.rho_v(i, j) = 0.5 * (rho(alpha_ext(s, i, j - 1)) + rho(alpha_ext(s, i, j)));
    }
  }
  return f;
}

namespace {

// Velocity access with ghost values.
struct Ghosts {
  const SimState& s;
  double beta;  // wall ghost factor for v

  double u(int i, int j) const {
    j = std::clamp(j, 0, s.grid.ny - 1);  // copied at in/outflow
    return s.u(i, j);
  }
  double v(int i, int j) const {
    if (i < 0) return s.v(0, j);
    if (i >= s.grid.nx) return beta * s.v(s.grid.nx - 1, j);
    return s.v(i, j);
  }
};

}  // namespace

Predictor momentum_step(const SimState& s, const CaseSetup2D& setup, double dt) {
  const Grid& g = s.grid;
  const FluidPair& fl = setup.case_spec.fluid;
  const BoundaryModel bc = boundary_model(setup);
  const double beta = bc.wall_ghost_factor();
  const Ghosts gh{s, beta};
  const double dx = g.dx;
  const double dy = g.dy;
  const double grav = setup.gravity ? fl.g : 0.0;
  const bool implicit = setup.viscous == ViscousScheme::SemiImplicit;

  const FluidFaces faces = face_densities(s, fl);
  auto mu_of = [&](double a) { return a * fl.mu_l + (1.0 - a) * fl.mu_g; };
  auto mu_cell = [&](int i, int j) { return mu_of(alpha_ext(s, i, j)); };
  // Corner at x = i dx, y = j dy.
  auto mu_corner = [&](int i, int j) {
    return 0.25 * (mu_cell(i - 1, j - 1) + mu_cell(i, j - 1) + mu_cell(i - 1, j) + mu_cell(i, j));
  };

  const std::vector<double> kappa = column_curvatures(s, bc.theta);
  const double sigma = fl.sigma;

  Predictor pred{s.u, s.v};

  // ---- x momentum on interior u faces ----
  Stencil5 Au(g.nx + 1, g.ny);
  std::vector<double> bu((g.nx + 1) * g.ny, 0.0);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i <= g.nx; ++i) {
      const int k = j * (g.nx + 1) + i;
      if (i == 0 || i == g.nx) {
        Au.diag[k] = 1.0;
        bu[k] = 0.0;
        continue;
      }
      const double uc = s.u(i, j);
      const double vc = 0.25 * (s.v(i - 1, j) + s.v(i, j) + s.v(i - 1, j + 1) + s.v(i, j + 1));
      const double dudx = uc > 0 ? (uc - s.u(i - 1, j)) / dx : (s.u(i + 1, j) - uc) / dx;
      const double dudy = vc > 0 ? (uc - gh.u(i, j - 1)) / dy : (gh.u(i, j + 1) - uc) / dy;
      const double adv = uc * dudx + vc * dudy;

      const double mu_e = mu_cell(i, j);
      const double mu_w = mu_cell(i - 1, j);
      const double mu_n = mu_corner(i, j + 1);
      const double mu_s = mu_corner(i, j);
      // Open ends copy u, so the shear flux through y = 0 and y = 8R vanishes.
      const double cn = j + 1 < g.ny ? mu_n / (dy * dy) : 0.0;
      const double cs = j > 0 ? mu_s / (dy * dy) : 0.0;
      const double ce = 2.0 * mu_e / (dx * dx);
      const double cw = 2.0 * mu_w / (dx * dx);
      // Transposed part d/dy(mu dv/dx).
      const double cross = (mu_n * (s.v(i, j + 1) - s.v(i - 1, j + 1)) / dx -
                            mu_s * (s.v(i, j) - s.v(i - 1, j)) / dx) /
                           dy;
      const double rho_f = faces.rho_u(i, j);
      const double da = alpha_ext(s, i, j) - alpha_ext(s, i - 1, j);
      const double f_sigma = da != 0.0 ? -sigma * 0.5 * (kappa[i - 1] + kappa[i]) * da / dx : 0.0;
      const double explicit_rhs = -rho_f * adv + cross + f_sigma;

      if (implicit) {
        Au.diag[k] = rho_f / dt + ce + cw + cn + cs;
        if (i + 1 < g.nx) Au.east[k] = -ce;
        if (j + 1 < g.ny) Au.north[k] = -cn;
        // The previous pressure gradient enters the implicit solve and is
        // removed again below, so a balanced state stays at rest.
        bu[k] = rho_f / dt * uc + explicit_rhs - (s.p(i, j) - s.p(i - 1, j)) / dx;
      } else {
        const double lap = ce * (s.u(i + 1, j) - uc) - cw * (uc - s.u(i - 1, j)) +
                           cn * (gh.u(i, j + 1) - uc) - cs * (uc - gh.u(i, j - 1));
        pred.u(i, j) = uc + dt * (lap + explicit_rhs) / rho_f;
      }
    }
  }

  // ---- y momentum on interior v faces ----
  Stencil5 Av(g.nx, g.ny + 1);
  std::vector<double> bv(g.nx * (g.ny + 1), 0.0);
  for (int j = 0; j <= g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const int k = j * g.nx + i;
      if (j == 0 || j == g.ny) {
        Av.diag[k] = 1.0;
        continue;
      }
      const double vc = s.v(i, j);
      const double uc = 0.25 * (s.u(i, j - 1) + s.u(i + 1, j - 1) + s.u(i, j) + s.u(i + 1, j));
      const double dvdx = uc > 0 ? (vc - gh.v(i - 1, j)) / dx : (gh.v(i + 1, j) - vc) / dx;
      const double dvdy = vc > 0 ? (vc - s.v(i, j - 1)) / dy : (s.v(i, j + 1) - vc) / dy;
      const double adv = uc * dvdx + vc * dvdy;

      const double mu_n = mu_cell(i, j);
      const double mu_s = mu_cell(i, j - 1);
      const double mu_e = mu_corner(i + 1, j);
      const double mu_w = mu_corner(i, j);
      const double cn = 2.0 * mu_n / (dy * dy);
      const double cs = 2.0 * mu_s / (dy * dy);
      const double ce = mu_e / (dx * dx);
      const double cw = mu_w / (dx * dx);
      const double cross = (mu_e * (s.u(i + 1, j) - s.u(i + 1, j - 1)) / dy -
                            mu_w * (s.u(i, j) - s.u(i, j - 1)) / dy) /
                           dx;
      const double rho_f = faces.rho_v(i, j);
      const double da = alpha_ext(s, i, j) - alpha_ext(s, i, j - 1);
      const double f_sigma = da != 0.0 ? -sigma * kappa[i] * da / dy : 0.0;
      const double explicit_rhs = -rho_f * adv - rho_f * grav + cross + f_sigma;

      // Ghost columns: mirror at x = 0 (no flux), beta * v at the wall.
      const double c_wall = i == g.nx - 1 ? ce * (1.0 - beta) : 0.0;
      // Open boundary faces are copies of their neighbours: no normal flux.
      const bool copy_below = j == 1 && !bc.closed_inflow;
      const bool copy_above = j == g.ny - 1;
      const double cs_eff = copy_below ? 0.0 : cs;
      const double cn_eff = copy_above ? 0.0 : cn;

      if (implicit) {
        Av.diag[k] = rho_f / dt + cn_eff + cs_eff + (i + 1 < g.nx ? ce : c_wall) + (i > 0 ? cw : 0.0);
        if (i + 1 < g.nx) Av.east[k] = -ce;
        if (j + 1 < g.ny) Av.north[k] = -cn;
        bv[k] = rho_f / dt * vc + explicit_rhs - (s.p(i, j) - s.p(i, j - 1)) / dy;
      } else {
        const double lap = cn_eff * (s.v(i, j + 1) - vc) - cs_eff * (vc - s.v(i, j - 1)) +
                           ce * (gh.v(i + 1, j) - vc) - cw * (vc - gh.v(i - 1, j));
        pred.v(i, j) = vc + dt * (lap + explicit_rhs) / rho_f;
      }
    }
  }

  if (implicit) {
    const int max_it = 10 * (g.nx + 1) * (g.ny + 1);
    std::vector<double> xu(s.u.data());
    const PcgResult ru = pcg_solve(Au, bu, xu, 1e-12, max_it);
    std::vector<double> xv(s.v.data());
    const PcgResult rv = pcg_solve(Av, bv, xv, 1e-12, max_it);
    if (!ru.converged || !rv.converged) {
      throw Error(ErrorKind::SolverDiverged, "viscous predictor solve did not converge");
    }
    pred.u.data() = std::move(xu);
    pred.v.data() = std::move(xv);
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 1; i < g.nx; ++i) pred.u(i, j) += dt / faces.rho_u(i, j) * (s.p(i, j) - s.p(i - 1, j)) / dx;
    }
    for (int j = 1; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) pred.v(i, j) += dt / faces.rho_v(i, j) * (s.p(i, j) - s.p(i, j - 1)) / dy;
    }
  }

  for (int j = 0; j < g.ny; ++j) {
    pred.u(0, j) = 0.0;
    pred.u(g.nx, j) = 0.0;
  }
  for (int i = 0; i < g.nx; ++i) {
    pred.v(i, 0) = bc.closed_inflow ? 0.0 : pred.v(i, 1);
    pred.v(i, g.ny) = pred.v(i, g.ny - 1);
  }
  return pred;
}

}  // namespace caprise::vof2d
