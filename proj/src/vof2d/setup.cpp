#include <cmath>
#include <limits>

#include "caprise/error.hpp"
#include "caprise/study.hpp"
#include "caprise/vof2d/vof2d.hpp"

namespace caprise::vof2d {

Grid make_grid(const Geometry& geom, int n_cells_per_radius) {
  if (n_cells_per_radius < 4) {
    throw Error(ErrorKind::InvalidArgument, "need at least 4 cells per radius");
  }
  const double ratio = geom.h_domain / geom.R;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * ratio) {
    throw Error(ErrorKind::InvalidArgument, "domain height must be a multiple of R");
  }
  Grid g;
  g.nx = n_cells_per_radius;
  g.ny = static_cast<int>(rounded) * n_cells_per_radius;
  g.dx = geom.R / n_cells_per_radius;
  g.dy = g.dx;
  return g;
}

void CaseSetup2D::validate() const {
  case_spec.fluid.validate();
  case_spec.geom.validate();
  case_spec.slip.validate();
  if (!(dt_safety > 0 && dt_safety <= 1)) {
    throw Error(ErrorKind::InvalidArgument, "dt_safety must lie in (0, 1]");
  }
  if (!(t_end > 0)) throw Error(ErrorKind::InvalidArgument, "t_end must be positive");
  if (dt_out && !(*dt_out > 0)) throw Error(ErrorKind::InvalidArgument, "dt_out must be positive");
  if (!(pressure_tol > 0 && pressure_tol <= 1e-8)) {
    throw Error(ErrorKind::InvalidArgument, "pressure tolerance must lie in (0, 1e-8]");
  }
}

namespace {

struct Arc {
  bool flat;
  double h0;
  double r;
  double yc;

  explicit Arc(const Geometry& geom) {
    const double c = std::cos(geom.theta_e);
    h0 = geom.h0;
    flat = c < 1e-12;
    r = flat ? std::numeric_limits<double>::infinity() : geom.R / c;
    yc = h0 + r;
  }

  double y(double x) const { return flat ? h0 : yc - std::sqrt(r * r - x * x); }

  // Antiderivative of y(x).
  double F(double x) const {
    if (flat) return h0 * x;
    return yc * x - 0.5 * (x * std::sqrt(r * r - x * x) + r * r * std::asin(x / r));
  }

  // Integral of min(y(x), Y) over [x0, x1]; y is increasing in x.
  double clipped_integral(double x0, double x1, double Y) const {
    if (Y <= y(x0)) return Y * (x1 - x0);
    if (Y >= y(x1)) return F(x1) - F(x0);
    const double d = yc - Y;
    const double xs = std::clamp(std::sqrt(r * r - d * d), x0, x1);
    return F(xs) - F(x0) + Y * (x1 - xs);
  }
};

}  // namespace

double arc_area(const Geometry& geom, double x0, double x1, double y0, double y1) {
  const Arc arc(geom);
  return arc.clipped_integral(x0, x1, y1) - arc.clipped_integral(x0, x1, y0);
}

double initial_contact_line_height(const Geometry& geom) {
  const double c = std::cos(geom.theta_e);
  if (c < 1e-12) return geom.h0;
  return geom.h0 + geom.R * (1.0 - std::sin(geom.theta_e)) / c;
}

SimState init_case(const CaseSetup2D& setup) {
  setup.validate();
  const Geometry& geom = setup.case_spec.geom;
  if (initial_contact_line_height(geom) >= geom.h_domain) {
    throw Error(ErrorKind::ArcExceedsDomain, "initial meniscus does not fit in the domain");
  }
  SimState s;
  s.grid = make_grid(geom, setup.n_cells_per_radius);
  const Grid& g = s.grid;
  s.u = Field2D(g.nx + 1, g.ny);
  s.v = Field2D(g.nx, g.ny + 1);
  s.p = Field2D(g.nx, g.ny);
  s.alpha = Field2D(g.nx, g.ny);
  const double cell = g.dx * g.dy;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double a = arc_area(geom, i * g.dx, (i + 1) * g.dx, j * g.dy, (j + 1) * g.dy) / cell;
      s.alpha(i, j) = a < 1e-14 ? 0.0 : (a > 1.0 - 1e-14 ? 1.0 : a);
    }
  }
  return s;
}

double BoundaryModel::wall_ghost_factor() const {
  if (slip.is_navier()) {
    const double L = slip.length();
    return (2.0 * L - dx) / (2.0 * L + dx);
  }
  return -1.0;
}

BoundaryModel boundary_model(const CaseSetup2D& setup) {
  BoundaryModel bc;
  bc.slip = setup.case_spec.slip;
  bc.theta = setup.case_spec.geom.theta_e;
  bc.closed_inflow = setup.closed_inflow;
  bc.dx = setup.case_spec.geom.R / setup.n_cells_per_radius;
  return bc;
}

double compute_dt(const SimState& state, const CaseSetup2D& setup) {
  double u_max = max_abs(state.u);
  u_max = std::max(u_max, max_abs(state.v));
  const TimestepLimits lim = timestep_limits(setup.case_spec.fluid, state.grid.dx, u_max);
  return setup.dt_safety * std::min({lim.dt_sigma_solver, lim.dt_mu, lim.dt_u});
}

double max_abs(const Field2D& f) {
  double m = 0.0;
  for (double x : f.data()) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace caprise::vof2d
