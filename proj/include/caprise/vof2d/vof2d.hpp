#pragma once

// Half-gap capillary rise on a staggered Cartesian grid with geometric VOF.
//
// Layout: cells (i, j), i in [0, nx) across the half gap (x = 0 symmetry
// plane, x = R wall), j in [0, ny) along the rise direction (y = 0 inflow,
// y = 8R outflow). u lives on vertical faces (nx+1 by ny), v on horizontal
// faces (nx by ny+1).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "caprise/core.hpp"
#include "caprise/trajectory.hpp"
#include "caprise/vof2d/field.hpp"

namespace caprise::vof2d {

struct Grid {
  int nx = 0;
  int ny = 0;
  double dx = 0.0;
  double dy = 0.0;

  double width() const { return nx * dx; }
  double height() const { return ny * dy; }
  double xc(int i) const { return (i + 0.5) * dx; }
  double yc(int j) const { return (j + 0.5) * dy; }
};

/// nx cells across the half gap, ny = (h_domain / R) nx along the gap.
Grid make_grid(const Geometry& geom, int n_cells_per_radius);

struct SimState {
  Grid grid;
  Field2D u;      // (nx+1, ny)
  Field2D v;      // (nx, ny+1)
  Field2D p;      // (nx, ny)
  Field2D alpha;  // (nx, ny), liquid volume fraction
  double t = 0.0;
  long step_count = 0;
};

enum class ViscousScheme {
  Explicit,
  /// Backward Euler for the div(mu grad u) part, explicit transpose part.
  SemiImplicit,
};

struct CaseSetup2D {
  CaseSpec case_spec;
  int n_cells_per_radius = 16;
  double dt_safety = 0.9;
  double t_end = 0.0;
  /// Apex sampling interval; t_end / 400 when absent.
  std::optional<double> dt_out;
  bool gravity = true;
  /// Replace the inflow by a closed free-slip wall (static meniscus tests).
  bool closed_inflow = false;
  double pressure_tol = 1e-10;
  ViscousScheme viscous = ViscousScheme::SemiImplicit;
  /// Field snapshot dump (CSV) every `dump_every` steps when > 0.
  long dump_every = 0;
  std::string dump_prefix;

  void validate() const;
};

/// Exact arc/cell area fractions for a circular meniscus with its apex at
/// (0, h0); zero velocity and pressure.
SimState init_case(const CaseSetup2D& setup);

/// Liquid area below the initial arc over [x0, x1] x [y0, y1] (exact).
double arc_area(const Geometry& geom, double x0, double x1, double y0, double y1);

/// Height of the contact line of the initial arc.
double initial_contact_line_height(const Geometry& geom);

double compute_dt(const SimState& state, const CaseSetup2D& setup);

// ---- interface reconstruction -------------------------------------------

struct Vec2 {
  double x;
  double y;
};

/// Liquid occupies {p : normal . (p - cell_center) <= offset}.
struct PlicPlane {
  Vec2 normal;
  double offset;
};

/// 3x3 volume fractions indexed [di + 1][dj + 1].
using Stencil3 = std::array<std::array<double, 3>, 3>;

struct Rect {
  double x0, x1, y0, y1;
};

/// Area of the part of `rect` (cell-local coordinates) on the liquid side.
double plane_area(const PlicPlane& plane, const Rect& rect);

/// Youngs normal from the 3x3 stencil and an offset matching the centre
/// fraction. Falls back to a horizontal plane (normal +y) when |grad alpha|
/// vanishes.
PlicPlane plic_reconstruct(const Stencil3& alpha, double dx, double dy);

/// Youngs normal only; throws DegenerateNormal when |grad alpha| < 1e-14.
Vec2 youngs_normal(const Stencil3& alpha, double dx, double dy);

/// Offset for a given normal such that the cut area equals alpha dx dy.
double plane_offset(Vec2 normal, double alpha, double dx, double dy);

// ---- boundaries -----------------------------------------------------------

struct BoundaryModel {
  SlipSpec slip;
  double theta = 0.0;
  bool closed_inflow = false;
  double dx = 0.0;

  /// v_ghost = factor * v_interior at the wall x = R.
  double wall_ghost_factor() const;
};

BoundaryModel boundary_model(const CaseSetup2D& setup);

/// Enforces the boundary values stored in the face arrays: u = 0 on the wall
/// and symmetry plane, copied normal velocity on open in/outflow faces,
/// v = 0 on a closed inflow.
void apply_boundaries(SimState& state, const BoundaryModel& bc);

/// Volume fraction including ghost layers: mirrored at x < 0, copied at
/// x >= R, 1 below the inflow and 0 above the outflow.
double alpha_ext(const SimState& state, int i, int j);

// ---- curvature ------------------------------------------------------------

/// H_ghost = H_wall + dx / tan(theta) for the wall on the high-x side.
double contact_angle_ghost(double h_wall, double theta, double dx);

/// Height-function curvature of column `column` (vertical heights y(x)),
/// positive for a meniscus concave toward the gas.
double curvature_height_function(const SimState& state, int column, double theta);

/// Curvature of every column.
std::vector<double> column_curvatures(const SimState& state, double theta);

// ---- momentum, projection, advection --------------------------------------

struct FluidFaces {
  Field2D rho_u;  // face densities on u faces
  Field2D rho_v;  // face densities on v faces
};

FluidFaces face_densities(const SimState& state, const FluidPair& fluid);

/// Predictor velocities (u*, v*) without the pressure gradient.
struct Predictor {
  Field2D u;
  Field2D v;
};

/// Explicit scheme: u* = u + dt (advection, viscous, gravity, CSF) / rho.
/// SemiImplicit: the same terms with div(mu grad u) backward in time; the
/// previous pressure gradient is carried through the implicit solve and then
/// removed, so the returned field is pressure-free in both cases.
Predictor momentum_step(const SimState& state, const CaseSetup2D& setup, double dt);

/// Pressure balancing gravity and surface tension for the current interface
/// with the fluid at rest. Used to start the semi-implicit scheme.
Field2D balanced_pressure(const SimState& state, const CaseSetup2D& setup);

struct PressureResult {
  Field2D p;
  int iterations = 0;
  double residual = 0.0;  // max-norm residual relative to max-norm rhs
};

/// Solves -div((1/rho) grad p) = -div(u*) / dt with p = 0 on open
/// in/outflow faces and homogeneous Neumann elsewhere.
PressureResult pressure_solve(const Predictor& pred, const FluidFaces& faces,
                              const Grid& grid, double dt, bool closed_inflow, double tol,
                              int max_iterations = 0);

/// Generic variable-coefficient Poisson solve on the cell grid:
/// -div(beta grad p) = rhs with beta given on faces. Exposed for testing.
PressureResult solve_poisson(const Grid& grid, const Field2D& beta_u, const Field2D& beta_v,
                             const Field2D& rhs, bool closed_inflow, double tol,
                             int max_iterations = 0);

/// u = u* - dt / rho grad p on all non-fixed faces.
void project_velocity(SimState& state, const Predictor& pred, const FluidFaces& faces,
                      const Field2D& p, double dt, bool closed_inflow);

/// Discrete divergence per cell.
Field2D divergence(const Field2D& u, const Field2D& v, const Grid& grid);
double max_abs(const Field2D& f);

struct AdvectionReport {
  double boundary_inflow = 0.0;  // liquid area entering through y = 0 minus leaving at y = 8R
  double clipped = 0.0;          // |area| removed by clipping to [0, 1]
  double correction = 0.0;       // net area added by the divergence correction
  double max_courant = 0.0;
};

/// Split geometric advection, x then y for even `sweep_parity`, y then x
/// otherwise. Throws CourantViolation if any face CFL exceeds 1.
Field2D advect_alpha(const SimState& state, double dt, int sweep_parity,
                     AdvectionReport* report = nullptr);

double liquid_volume(const SimState& state);

/// Integral height of the column next to the symmetry plane. Throws
/// MultiValuedColumn when partial cells are not contiguous.
double apex_height(const SimState& state);

// ---- driver ---------------------------------------------------------------

struct StepDiagnostics {
  double dt = 0.0;
  double volume_before = 0.0;
  double volume_after = 0.0;
  double boundary_inflow = 0.0;
  double clipped = 0.0;
  double correction = 0.0;
  double max_div_predictor = 0.0;
  double max_div = 0.0;
  double alpha_min = 0.0;
  double alpha_max = 0.0;
  int pressure_iterations = 0;
  double max_speed = 0.0;
};

class Simulation {
 public:
  explicit Simulation(CaseSetup2D setup);

  const SimState& state() const { return state_; }
  SimState& state() { return state_; }
  const CaseSetup2D& setup() const { return setup_; }

  /// One time step; dt defaults to compute_dt.
  StepDiagnostics step(std::optional<double> dt = std::nullopt);

  /// Runs to t_end, sampling the apex height every dt_out.
  Trajectory run();

  void dump_fields(const std::string& path) const;

 private:
  CaseSetup2D setup_;
  BoundaryModel bc_;
  SimState state_;
};

/// Convenience: Simulation(setup).run().
Trajectory run(const CaseSetup2D& setup);

}  // namespace caprise::vof2d
