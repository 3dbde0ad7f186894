#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "caprise/error.hpp"
#include "caprise/vof2d/vof2d.hpp"

namespace caprise::vof2d {

Simulation::Simulation(CaseSetup2D setup)
    : setup_(std::move(setup)), bc_(boundary_model(setup_)), state_(init_case(setup_)) {
  state_.p = balanced_pressure(state_, setup_);
}

Field2D balanced_pressure(const SimState& state, const CaseSetup2D& setup) {
  SimState rest = state;
  rest.u.fill(0.0);
  rest.v.fill(0.0);
  rest.p.fill(0.0);
  CaseSetup2D explicit_setup = setup;
  explicit_setup.viscous = ViscousScheme::Explicit;
  const double dt = compute_dt(rest, setup);
  const Predictor pred = momentum_step(rest, explicit_setup, dt);
  const FluidFaces faces = face_densities(rest, setup.case_spec.fluid);
  return pressure_solve(pred, faces, rest.grid, dt, setup.closed_inflow, setup.pressure_tol).p;
}

StepDiagnostics Simulation::step(std::optional<double> dt_opt) {
  StepDiagnostics d;
  const double dt = dt_opt ? *dt_opt : compute_dt(state_, setup_);
  if (!(dt > 0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidArgument, "time step must be positive");
  d.dt = dt;
  d.volume_before = liquid_volume(state_);

  apply_boundaries(state_, bc_);
  const Predictor pred = momentum_step(state_, setup_, dt);
  d.max_div_predictor = max_abs(divergence(pred.u, pred.v, state_.grid));
  const FluidFaces faces = face_densities(state_, setup_.case_spec.fluid);
  const PressureResult pr =
      pressure_solve(pred, faces, state_.grid, dt, bc_.closed_inflow, setup_.pressure_tol);
  d.pressure_iterations = pr.iterations;
  project_velocity(state_, pred, faces, pr.p, dt, bc_.closed_inflow);
  d.max_div = max_abs(divergence(state_.u, state_.v, state_.grid));
  d.max_speed = std::max(max_abs(state_.u), max_abs(state_.v));
  if (!std::isfinite(d.max_speed)) {
    throw Error(ErrorKind::SolverDiverged, "non-finite velocity at step " + std::to_string(state_.step_count));
  }

  AdvectionReport rep;
  state_.alpha = advect_alpha(state_, dt, static_cast<int>(state_.step_count % 2), &rep);
  state_.t += dt;
  ++state_.step_count;

  d.volume_after = liquid_volume(state_);
  d.boundary_inflow = rep.boundary_inflow;
  d.clipped = rep.clipped;
  d.correction = rep.correction;
  const auto [lo, hi] = std::minmax_element(state_.alpha.data().begin(), state_.alpha.data().end());
  d.alpha_min = *lo;
  d.alpha_max = *hi;

  if (setup_.dump_every > 0 && state_.step_count % setup_.dump_every == 0) {
    std::ostringstream name;
    name << setup_.dump_prefix << std::setw(8) << std::setfill('0') << state_.step_count << ".csv";
    dump_fields(name.str());
  }
  return d;
}

Trajectory Simulation::run() {
  const double t_end = setup_.t_end;
  const double dt_out = setup_.dt_out ? *setup_.dt_out : t_end / 400.0;
  const auto times = output_times(state_.t, t_end, dt_out);

  Trajectory traj;
  traj.meta.label = setup_.case_spec.label;
  traj.meta.model = "vof2d";
  traj.samples.reserve(times.size());
  traj.samples.push_back({state_.t, apex_height(state_), 0.0});

  for (std::size_t k = 1; k < times.size(); ++k) {
    const double target = times[k];
    while (state_.t < target) {
      double dt = compute_dt(state_, setup_);
      const double remaining = target - state_.t;
      // Land exactly on the output time; absorb slivers into this step.
      if (dt >= remaining || remaining - dt < 1e-6 * dt) dt = remaining;
      step(dt);
      if (dt == remaining) state_.t = target;
    }
    traj.samples.push_back({state_.t, apex_height(state_), 0.0});
  }

  traj.meta.n_steps = state_.step_count;
  auto& s = traj.samples;
  const std::size_t n = s.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (n < 2) break;
    if (k == 0) {
      s[k].v = (s[1].h - s[0].h) / (s[1].t - s[0].t);
    } else if (k + 1 == n) {
      s[k].v = (s[k].h - s[k - 1].h) / (s[k].t - s[k - 1].t);
    } else {
      s[k].v = (s[k + 1].h - s[k - 1].h) / (s[k + 1].t - s[k - 1].t);
    }
  }
  return traj;
}

void Simulation::dump_fields(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path);
  const Grid& g = state_.grid;
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "i,j,x,y,alpha,p,u,v\n";
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double uc = 0.5 * (state_.u(i, j) + state_.u(i + 1, j));
      const double vc = 0.5 * (state_.v(i, j) + state_.v(i, j + 1));
      out << i << ',' << j << ',' << g.xc(i) << ',' << g.yc(j) << ',' << state_.alpha(i, j) << ','
          << state_.p(i, j) << ',' << uc << ',' << vc << '\n';
    }
  }
}

Trajectory run(const CaseSetup2D& setup) { return Simulation(setup).run(); }

}  // namespace caprise::vof2d
