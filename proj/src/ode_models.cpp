#include "caprise/ode_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "caprise/error.hpp"
#include "caprise/scaling.hpp"

namespace caprise {

std::vector<double> output_times(double t0, double t_end, double dt_out) {
  if (!(dt_out > 0) || !(t_end > t0)) {
    throw Error(ErrorKind::InvalidArgument, "need dt_out > 0 and t_end > t0");
  }
  const double span = t_end - t0;
  const auto n = static_cast<long>(std::floor(span / dt_out * (1 + 1e-12)));
  std::vector<double> times;
  times.reserve(n + 2);
  for (long k = 0; k <= n; ++k) times.push_back(t0 + k * dt_out);
  if (std::abs(times.back() - t_end) <= 1e-9 * span) {
    times.back() = t_end;
  } else {
    times.push_back(t_end);
  }
  return times;
}

std::string to_string(ModelKind kind) {
  return kind == ModelKind::Classical ? "classical" : "extended";
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "classical") return ModelKind::Classical;
  if (name == "extended") return ModelKind::Extended;
  throw Error(ErrorKind::InvalidArgument, "unknown model '" + name + "'");
}

namespace {

double effective_offset(const ModelSpec& model, const Geometry& geom) {
  if (model.kind == ModelKind::Classical || !model.apply_height_correction) return 0.0;
  return height_correction(geom);
}

}  // namespace

RiseRate rhs(const ModelSpec& model, const FluidPair& fluid, const Geometry& geom,
             const RiseState& state) {
  const double rho = fluid.rho_l;
  const double mu = fluid.mu_l;
  const double R = geom.R;
  const double capillary = fluid.sigma * std::cos(geom.theta_e) / (rho * R);
  const double v = state.v;

  if (model.kind == ModelKind::Classical) {
    const double h = state.h;
    if (h <= 1e-14 * R) {
      throw Error(ErrorKind::SingularHeight, "classical model needs h > 0");
    }
    const double dv = (capillary - fluid.g * h - 3.0 * mu * v * h / (rho * R * R) - v * v) / h;
    return {v, dv};
  }

  const double L = model.slip_length;
  const double H = state.h + effective_offset(model, geom);
  if (H <= 1e-14 * R) {
    throw Error(ErrorKind::SingularHeight, "extended model needs h + h_hat > 0");
  }
  const double convective =
      model.include_convective
          ? 3.0 * (15.0 * L * L + 10.0 * L * R + 2.0 * R * R) / (5.0 * (R + 3.0 * L) * (R + 3.0 * L))
          : 0.0;
  const double dv = (capillary - fluid.g * H - 3.0 * mu * v * H / (rho * R * (R + 3.0 * L)) +
                     convective * v * v - v * v) /
                    H;
  return {v, dv};
}

double model_stationary_height(const ModelSpec& model, const FluidPair& fluid,
                               const Geometry& geom) {
  return jurin_height(fluid, geom) - effective_offset(model, geom);
}

Trajectory integrate(const ModelSpec& model, const FluidPair& fluid, const Geometry& geom,
                     const RiseState& init, double t_end, const IntegrateOptions& options) {
  if (!(t_end > 0)) throw Error(ErrorKind::InvalidArgument, "t_end must be positive");
  const Tolerance& tol = options.tol;
  if (!(tol.rel >= 1e-12 && tol.rel <= 1e-3) || !(tol.abs > 0)) {
    throw Error(ErrorKind::InvalidArgument, "tol.rel must lie in [1e-12, 1e-3], tol.abs > 0");
  }
  if (model.kind == ModelKind::Classical && init.h <= 1e-9 * geom.R) {
    throw Error(ErrorKind::SingularHeight, "classical model requires h(t0) > 0");
  }
  const double dt_out = options.dt_out.value_or(t_end / 2000.0);
  const auto times = output_times(0.0, t_end, dt_out);

  Trajectory traj;
  traj.meta.label = options.label;
  traj.meta.model = to_string(model.kind);
  traj.meta.rtol = tol.rel;
  traj.meta.atol = tol.abs;
  traj.samples.reserve(times.size());

  auto f = [&](double, const StateN<2>& y) {
    const RiseRate r = rhs(model, fluid, geom, {y[0], y[1]});
    return StateN<2>{r.dh, r.dv};
  };
  const Dopri5Stats stats =
      dopri5<2>(f, 0.0, StateN<2>{init.h, init.v}, times, tol,
                [&](double t, const StateN<2>& y) { traj.samples.push_back({t, y[0], y[1]}); });
  traj.meta.n_steps = stats.accepted;
  return traj;
}

double auto_t_end(const FluidPair& fluid, const Geometry& geom) {
  const ScaleSet s = coefficients(fluid, geom, Dim::Two);
  double longest = 0.0;
  for (ScalingKind k : {ScalingKind::I, ScalingKind::II, ScalingKind::III}) {
    longest = std::max(longest, 1.0 / units(k, s).t_rate);
  }
  return 10.0 * longest;
}

PeakList detect_peaks(const Trajectory& traj, const PeakOptions& options) {
  PeakList peaks;
  const auto& s = traj.samples;
  if (s.size() < 3) return peaks;
  const double h_ref = options.h_ref.value_or(std::abs(s.back().h));
  const double delta = options.eps_peak * h_ref;

  // Hysteresis scan: an extremum is confirmed once the signal has moved away
  // from it by more than delta.
  std::size_t i_max = 0, i_min = 0;
  int looking = 0;  // +1 searching a max, -1 searching a min, 0 undecided
  std::vector<std::pair<std::size_t, bool>> raw;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double h = s[i].h;
    if (h > s[i_max].h) i_max = i;
    if (h < s[i_min].h) i_min = i;
    if (looking >= 0 && h < s[i_max].h - delta) {
      if (looking == 1 || i_max > 0) raw.emplace_back(i_max, true);
      looking = -1;
      i_min = i;
    } else if (looking <= 0 && h > s[i_min].h + delta) {
      if (looking == -1 || i_min > 0) raw.emplace_back(i_min, false);
      looking = 1;
      i_max = i;
    }
  }

  for (const auto& [i, is_max] : raw) {
    if (i == 0 || i + 1 >= s.size()) continue;
    if (!peaks.empty() && peaks.back().is_max == is_max) continue;
    const double t0 = s[i - 1].t, t1 = s[i].t, t2 = s[i + 1].t;
    const double h0 = s[i - 1].h, h1 = s[i].h, h2 = s[i + 1].h;
    // Vertex of the parabola through the three samples.
    const double d01 = (h1 - h0) / (t1 - t0);
    const double d12 = (h2 - h1) / (t2 - t1);
    const double curv = (d12 - d01) / (t2 - t0);
    Peak p{t1, h1, is_max};
    if (curv != 0.0) {
      // d01 is the slope at (t0+t1)/2; the vertex lies where the slope is zero.
      const double tv = 0.5 * (t0 + t1) - d01 / (2.0 * curv);
      if (tv > t0 && tv < t2) {
        p.t = tv;
        p.h = h1 + d01 * (tv - t1) + curv * (tv - t0) * (tv - t1);
      }
    }
    peaks.push_back(p);
  }
  return peaks;
}

SettleMetrics settle_metrics(const Trajectory& traj, double h_inf) {
  if (!(h_inf > 0)) throw Error(ErrorKind::InvalidArgument, "h_inf must be positive");
  if (traj.empty()) throw Error(ErrorKind::InvalidArgument, "empty trajectory");
  SettleMetrics m{};
  m.h_final = traj.back().h;
  double over = 0.0;
  for (const auto& s : traj.samples) over = std::max(over, s.h - h_inf);
  m.overshoot = over;
  const double band = 0.01 * h_inf;
  // Walk backwards to the last band violation.
  std::optional<std::size_t> first_inside;
  for (std::size_t k = traj.size(); k-- > 0;) {
    if (std::abs(traj.samples[k].h - h_inf) > band) break;
    first_inside = k;
  }
  if (first_inside) m.t_settle = traj.samples[*first_inside].t;
  return m;
}

double ca_max(const Trajectory& traj, const FluidPair& fluid) {
  if (traj.empty()) throw Error(ErrorKind::InvalidArgument, "empty trajectory");
  double vmax = 0.0;
  for (const auto& s : traj.samples) vmax = std::max(vmax, std::abs(s.v));
  return fluid.mu_l * vmax / fluid.sigma;
}

}  // namespace caprise
