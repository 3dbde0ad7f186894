#include <algorithm>
#include <cmath>

#include "caprise/error.hpp"
#include "caprise/vof2d/stencil_solver.hpp"
#include "caprise/vof2d/vof2d.hpp"

namespace caprise::vof2d {

Field2D divergence(const Field2D& u, const Field2D& v, const Grid& g) {
  Field2D d(g.nx, g.ny);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      d(i, j) = (u(i + 1, j) - u(i, j)) / g.dx + (v(i, j + 1) - v(i, j)) / g.dy;
    }
  }
  return d;
}

PressureResult solve_poisson(const Grid& g, const Field2D& beta_u, const Field2D& beta_v,
                             const Field2D& rhs, bool closed_inflow, double tol,
                             int max_iterations) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "pressure tolerance must be positive");
  const double ix2 = 1.0 / (g.dx * g.dx);
  const double iy2 = 1.0 / (g.dy * g.dy);
  Stencil5 A(g.nx, g.ny);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const int k = j * g.nx + i;
      double d = 0.0;
      // Faces at x = 0 and x = R are Neumann.
      if (i > 0) d += beta_u(i, j) * ix2;
      if (i + 1 < g.nx) {
        d += beta_u(i + 1, j) * ix2;
        A.east[k] = -beta_u(i + 1, j) * ix2;
      }
      if (j > 0) {
        d += beta_v(i, j) * iy2;
      } else if (!closed_inflow) {
        d += 2.0 * beta_v(i, 0) * iy2;
      }
      if (j + 1 < g.ny) {
        d += beta_v(i, j + 1) * iy2;
        A.north[k] = -beta_v(i, j + 1) * iy2;
      } else {
        d += 2.0 * beta_v(i, g.ny) * iy2;
      }
      A.diag[k] = d;
    }
  }
  if (max_iterations <= 0) max_iterations = 10 * g.nx * g.ny;
  std::vector<double> x(rhs.data().size(), 0.0);
  const PcgResult r = pcg_solve(A, rhs.data(), x, tol, max_iterations);
  if (!r.converged || !std::isfinite(r.residual)) {
    throw Error(ErrorKind::SolverDiverged,
                "pressure solve stalled at relative residual " + std::to_string(r.residual));
  }
  PressureResult out{Field2D(g.nx, g.ny), r.iterations, r.residual};
  out.p.data() = std::move(x);
  return out;
}

PressureResult pressure_solve(const Predictor& pred, const FluidFaces& faces, const Grid& g,
                              double dt, bool closed_inflow, double tol, int max_iterations) {
  Field2D bu(g.nx + 1, g.ny);
  Field2D bv(g.nx, g.ny + 1);
  for (std::size_t k = 0; k < bu.data().size(); ++k) bu.data()[k] = 1.0 / faces.rho_u.data()[k];
  for (std::size_t k = 0; k < bv.data().size(); ++k) bv.data()[k] = 1.0 / faces.rho_v.data()[k];
  Field2D rhs = divergence(pred.u, pred.v, g);
  for (double& r : rhs.data()) r = -r / dt;
  return solve_poisson(g, bu, bv, rhs, closed_inflow, tol, max_iterations);
}

void project_velocity(SimState& s, const Predictor& pred, const FluidFaces& faces,
                      const Field2D& p, double dt, bool closed_inflow) {
  const Grid& g = s.grid;
  s.u = pred.u;
  s.v = pred.v;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 1; i < g.nx; ++i) {
      s.u(i, j) -= dt / faces.rho_u(i, j) * (p(i, j) - p(i - 1, j)) / g.dx;
    }
  }
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 1; j < g.ny; ++j) {
      s.v(i, j) -= dt / faces.rho_v(i, j) * (p(i, j) - p(i, j - 1)) / g.dy;
    }
    // Ghost pressure -p outside the open ends.
    if (closed_inflow) {
      s.v(i, 0) = 0.0;
    } else {
      s.v(i, 0) -= dt / faces.rho_v(i, 0) * 2.0 * p(i, 0) / g.dy;
    }
    s.v(i, g.ny) += dt / faces.rho_v(i, g.ny) * 2.0 * p(i, g.ny - 1) / g.dy;
  }
  s.p = p;
}

}  // namespace caprise::vof2d
