#include <algorithm>
#include <cmath>

#include "caprise/error.hpp"
#include "caprise/vof2d/vof2d.hpp"

namespace caprise::vof2d {

namespace {

constexpr double kPure = 1e-12;

double ext(const Field2D& a, int i, int j) {
  const int nx = a.nx();
  const int ny = a.ny();
  if (j < 0) return 1.0;
  if (j >= ny) return 0.0;
  if (i < 0) i = std::min(-1 - i, nx - 1);
  if (i >= nx) i = nx - 1;
  return a(i, j);
}

// Liquid area within the donor strip of cell (i, j); `rect` in cell-local
// coordinates.
double donor_area(const Field2D& a, int i, int j, const Rect& rect, const Grid& g) {
  const double ac = ext(a, i, j);
  const double strip = (rect.x1 - rect.x0) * (rect.y1 - rect.y0);
  if (ac <= kPure || ac >= 1.0 - kPure || i < 0 || i >= g.nx || j < 0 || j >= g.ny) {
    return ac * strip;
  }
  Stencil3 st{};
  for (int di = -1; di <= 1; ++di) {
    for (int dj = -1; dj <= 1; ++dj) st[di + 1][dj + 1] = ext(a, i + di, j + dj);
  }
  const PlicPlane plane = plic_reconstruct(st, g.dx, g.dy);
  return std::clamp(plane_area(plane, rect), 0.0, strip);
}

}  // namespace

Field2D advect_alpha(const SimState& s, double dt, int sweep_parity, AdvectionReport* report) {
  const Grid& g = s.grid;
  const double hx = 0.5 * g.dx;
  const double hy = 0.5 * g.dy;
  const double cell = g.dx * g.dy;
  AdvectionReport rep;

  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i <= g.nx; ++i) rep.max_courant = std::max(rep.max_courant, std::abs(s.u(i, j)) * dt / g.dx);
  }
  for (int j = 0; j <= g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) rep.max_courant = std::max(rep.max_courant, std::abs(s.v(i, j)) * dt / g.dy);
  }
  if (rep.max_courant > 1.0) {
    throw Error(ErrorKind::CourantViolation,
                "face Courant number " + std::to_string(rep.max_courant) + " exceeds 1");
  }

  // Dilatation coefficient fixed from the old field for both sweeps.
  Field2D c(g.nx, g.ny);
  for (std::size_t k = 0; k < c.data().size(); ++k) c.data()[k] = s.alpha.data()[k] > 0.5 ? 1.0 : 0.0;

  Field2D a = s.alpha;

  auto sweep_x = [&]() {
    Field2D flux(g.nx + 1, g.ny);  // area through face i, positive in +x
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 1; i < g.nx; ++i) {
        const double w = s.u(i, j) * dt;
        if (w > 0) {
          flux(i, j) = donor_area(a, i - 1, j, Rect{hx - w, hx, -hy, hy}, g);
        } else if (w < 0) {
          flux(i, j) = -donor_area(a, i, j, Rect{-hx, -hx - w, -hy, hy}, g);
        }
      }
    }
    Field2D next = a;
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        const double corr = c(i, j) * dt * (s.u(i + 1, j) - s.u(i, j)) / g.dx;
        next(i, j) = a(i, j) - (flux(i + 1, j) - flux(i, j)) / cell + corr;
        rep.correction += corr * cell;
      }
    }
    a = std::move(next);
  };

  auto sweep_y = [&]() {
    Field2D flux(g.nx, g.ny + 1);
    for (int j = 0; j <= g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        const double w = s.v(i, j) * dt;
        if (w > 0) {
          flux(i, j) = donor_area(a, i, j - 1, Rect{-hx, hx, hy - w, hy}, g);
        } else if (w < 0) {
          flux(i, j) = -donor_area(a, i, j, Rect{-hx, hx, -hy, -hy - w}, g);
        }
      }
    }
    for (int i = 0; i < g.nx; ++i) rep.boundary_inflow += flux(i, 0) - flux(i, g.ny);
    Field2D next = a;
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        const double corr = c(i, j) * dt * (s.v(i, j + 1) - s.v(i, j)) / g.dy;
        next(i, j) = a(i, j) - (flux(i, j + 1) - flux(i, j)) / cell + corr;
        rep.correction += corr * cell;
      }
    }
    a = std::move(next);
  };

  auto clip = [&]() {
    for (double& x : a.data()) {
      if (x < 0.0) {
        rep.clipped += -x * cell;
        x = 0.0;
      } else if (x > 1.0) {
        rep.clipped += (x - 1.0) * cell;
        x = 1.0;
      }
    }
  };

  if (sweep_parity % 2 == 0) {
    sweep_x();
    clip();
    sweep_y();
    clip();
  } else {
    sweep_y();
    clip();
    sweep_x();
    clip();
  }
  if (report) *report = rep;
  return a;
}

}  // namespace caprise::vof2d
