#pragma once

#include <array>
#include <limits>

#include "caprise/core.hpp"

namespace caprise {

/// Fixed constraints of the Omega study.
struct StudyConstants {
  static constexpr double R = 0.005;
  static constexpr double mu_l = 0.01;
  static constexpr double theta_deg = 30.0;
  static constexpr double density_ratio = 1000.0;
  static constexpr double viscosity_ratio = 1000.0;
  static constexpr double jurin_over_R = 4.0;
  static constexpr double h0_over_R = 2.0;
  static constexpr double domain_over_R = 8.0;
};

struct StudyParams {
  FluidPair fluid;
  Geometry geom;
};

/// Unique (rho_l, g) for which h_Jurin = 4R and the group equals `omega` at
/// the given surface tension.
StudyParams synth_params(double omega, double sigma);

struct TimestepLimits {
  double dt_sigma_liquid;  // sqrt(rho_l dx^3 / (4 pi sigma)), cost estimates
  double dt_sigma_solver;  // sqrt((rho_l + rho_g) dx^3 / (4 pi sigma)), solver
  double dt_mu;            // rho_l dx^2 / (6 mu_l)
  double dt_u;             // dx / u_max, +inf at rest
};

TimestepLimits timestep_limits(const FluidPair& fluid, double dx, double u_max);

/// Cells per radius where the capillary and viscous limits coincide.
double crossover_cells(const FluidPair& fluid, const Geometry& geom);

/// Steps needed to reach scaled time 1, indexed [k-1] for scaling k.
struct StepCounts {
  std::array<double, 3> sigma;
  std::array<double, 3> mu;
};

/// t_scale,k of the cost analysis (rates in 1/s).
std::array<double, 3> cost_time_rates(const FluidPair& fluid, const Geometry& geom);

StepCounts step_counts(const FluidPair& fluid, const Geometry& geom, double n_cells);

}  // namespace caprise
