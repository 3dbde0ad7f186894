#include "caprise/scaling.hpp"

#include <cmath>

#include "caprise/error.hpp"

namespace caprise {

std::string to_string(ScalingKind kind) {
  switch (kind) {
    case ScalingKind::I: return "I";
    case ScalingKind::II: return "II";
    case ScalingKind::III: return "III";
  }
  return "?";
}

ScalingKind parse_scaling_kind(const std::string& name) {
  if (name == "I" || name == "1") return ScalingKind::I;
  if (name == "II" || name == "2") return ScalingKind::II;
  if (name == "III" || name == "3") return ScalingKind::III;
  throw Error(ErrorKind::InvalidArgument, "unknown scaling '" + name + "'");
}

ScaleSet coefficients(const FluidPair& fluid, const Geometry& geom, Dim dim) {
  const double cos_t = std::cos(geom.theta_e);
  if (!(cos_t > 0)) {
    throw Error(ErrorKind::NonWettingAngle, "scaling needs cos(theta) > 0");
  }
  const double rho = fluid.rho_l;
  const double R = geom.R;
  const double sc = fluid.sigma * cos_t;
  ScaleSet s{};
  s.dim = dim;
  if (dim == Dim::Two) {
    s.a = rho * R / sc;
    s.b = 3.0 * fluid.mu_l / (R * sc);
    s.c = rho * fluid.g * R / sc;
  } else {
    s.a = rho * R / (2.0 * sc);
    s.b = 4.0 * fluid.mu_l / (R * sc);
    s.c = rho * fluid.g * R / (2.0 * sc);
  }
  s.omega = std::sqrt(s.b * s.b / (s.a * s.c * s.c));
  return s;
}

ScaleUnits units(ScalingKind kind, const ScaleSet& s) {
  switch (kind) {
    case ScalingKind::I: return {s.c * s.c / s.b, s.c};
    case ScalingKind::II: return {std::sqrt(s.c * s.c / s.a), s.c};
    case ScalingKind::III: return {s.b / s.a, s.b / std::sqrt(2.0 * s.a)};
  }
  return {1.0, 1.0};
}

SlipGroups slip_groups(double L, double R) {
  if (!(L >= 0) || !(R > 0)) {
    throw Error(ErrorKind::InvalidArgument, "need L >= 0 and R > 0");
  }
  const double S = L / R;
  const double d = 1.0 + 3.0 * S;
  return {S, 1.0 / d, 3.0 * (15.0 * S * S + 10.0 * S + 2.0) / (5.0 * d * d)};
}

namespace {

Trajectory rescale(const Trajectory& traj, double t_rate, double h_rate) {
  Trajectory out;
  out.meta = traj.meta;
  out.samples.reserve(traj.size());
  const double v_rate = h_rate / t_rate;
  for (const auto& s : traj.samples) {
    out.samples.push_back({t_rate * s.t, h_rate * s.h, v_rate * s.v});
  }
  return out;
}

}  // namespace

Trajectory nondimensionalize(const Trajectory& traj, ScalingKind kind, const ScaleSet& s) {
  const ScaleUnits u = units(kind, s);
  Trajectory out = rescale(traj, u.t_rate, u.h_rate);
  out.meta.scaling = to_string(kind);
  return out;
}

Trajectory redimensionalize(const Trajectory& traj, ScalingKind kind, const ScaleSet& s) {
  const ScaleUnits u = units(kind, s);
  Trajectory out = rescale(traj, 1.0 / u.t_rate, 1.0 / u.h_rate);
  out.meta.scaling = "none";
  return out;
}

ScaledCoefficients scaled_coefficients(ScalingKind kind, double omega,
                                       const SlipGroups& groups) {
  const double K = groups.K;
  const double Q = groups.Q;
  switch (kind) {
    case ScalingKind::I: {
      const double w2 = omega * omega;
      return {1.0 / w2, K, 1.0, Q / w2};
    }
    case ScalingKind::II: return {1.0, K * omega, 1.0, Q};
    case ScalingKind::III: return {2.0, 2.0 * K, std::sqrt(2.0) / omega, 2.0 * Q};
  }
  return {1, 1, 1, 1};
}

RiseRate rhs_scaled(ScalingKind kind, double omega, const SlipGroups& groups,
                    double h_hat_star, const RiseState& state) {
  const double H = state.h + h_hat_star;
  if (H <= 1e-14) {
    throw Error(ErrorKind::SingularHeight, "scaled model needs h* + h_hat* > 0");
  }
  const ScaledCoefficients k = scaled_coefficients(kind, omega, groups);
  const double v = state.v;
  // A (dv H + v^2) = 1 + D v^2 - B v H - C H
  const double dv = ((1.0 + k.D * v * v - k.B * v * H - k.C * H) / k.A - v * v) / H;
  return {v, dv};
}

Trajectory integrate_scaled(ScalingKind kind, double omega, const SlipGroups& groups,
                            double h_hat_star, const RiseState& init, double t_end,
                            double dt_out, const Tolerance& tol) {
  const auto times = output_times(0.0, t_end, dt_out);
  Trajectory traj;
  traj.meta.model = "extended";
  traj.meta.scaling = to_string(kind);
  traj.meta.rtol = tol.rel;
  traj.meta.atol = tol.abs;
  traj.samples.reserve(times.size());
  auto f = [&](double, const StateN<2>& y) {
    const RiseRate r = rhs_scaled(kind, omega, groups, h_hat_star, {y[0], y[1]});
    return StateN<2>{r.dh, r.dv};
  };
  dopri5<2>(f, 0.0, StateN<2>{init.h, init.v}, times, tol,
            [&](double t, const StateN<2>& y) { traj.samples.push_back({t, y[0], y[1]}); });
  return traj;
}

}  // namespace caprise
