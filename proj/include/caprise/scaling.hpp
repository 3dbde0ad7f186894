#pragma once

#include <string>

#include "caprise/core.hpp"
#include "caprise/dopri5.hpp"
#include "caprise/ode_models.hpp"
#include "caprise/trajectory.hpp"

namespace caprise {

enum class Dim { Two, Three };

/// Scaling coefficients a, b, c of the rise model and the group
/// Omega = sqrt(b^2 / (a c^2)).
struct ScaleSet {
  double a;
  double b;
  double c;
  Dim dim;
  double omega;
};

enum class ScalingKind { I, II, III };

std::string to_string(ScalingKind kind);
ScalingKind parse_scaling_kind(const std::string& name);

/// Multiplicative rates: t* = t_rate t, h* = h_rate h.
struct ScaleUnits {
  double t_rate;
  double h_rate;
};

struct SlipGroups {
  double S;
  double K;
  double Q;
};

ScaleSet coefficients(const FluidPair& fluid, const Geometry& geom, Dim dim);
ScaleUnits units(ScalingKind kind, const ScaleSet& s);
SlipGroups slip_groups(double L, double R);

/// Applies the scaling sample-wise (v* = h_rate / t_rate v).
Trajectory nondimensionalize(const Trajectory& traj, ScalingKind kind, const ScaleSet& s);
/// Inverse of nondimensionalize.
Trajectory redimensionalize(const Trajectory& traj, ScalingKind kind, const ScaleSet& s);

/// Scaled extended model in the form
///   A d/dt(v H) + B v H + C H = 1 + D v^2,  H = h + h_hat.
struct ScaledCoefficients {
  double A, B, C, D;
};
ScaledCoefficients scaled_coefficients(ScalingKind kind, double omega,
                                       const SlipGroups& groups);

/// Scaled extended model right-hand side. Throws SingularHeight when
/// h* + h_hat* <= 1e-14.
RiseRate rhs_scaled(ScalingKind kind, double omega, const SlipGroups& groups,
                    double h_hat_star, const RiseState& state);

/// Integrates rhs_scaled with the same DOPRI5 integrator as the dimensional
/// models. Times and states are in scaled units.
Trajectory integrate_scaled(ScalingKind kind, double omega, const SlipGroups& groups,
                            double h_hat_star, const RiseState& init, double t_end,
                            double dt_out, const Tolerance& tol = {});

}  // namespace caprise
