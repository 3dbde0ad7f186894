#include "caprise/study.hpp"

#include <cmath>
#include <numbers>

#include "caprise/error.hpp"

namespace caprise {

StudyParams synth_params(double omega, double sigma) {
  if (!(omega > 0) || !(sigma > 0)) {
    throw Error(ErrorKind::InvalidArgument, "omega and sigma must be positive");
  }
  using C = StudyConstants;
  const double R = C::R;
  const double mu = C::mu_l;
  const double theta = deg_to_rad(C::theta_deg);
  const double cos_t = std::cos(theta);
  // h_Jurin = 4R fixes g given rho; substituting into Omega leaves rho alone.
  const double rho = 9.0 * C::jurin_over_R * C::jurin_over_R * mu * mu /
                     (omega * omega * R * sigma * cos_t);
  const double g = sigma * cos_t / (C::jurin_over_R * R * R * rho);

  StudyParams p;
  p.fluid = {rho, rho / C::density_ratio, mu, mu / C::viscosity_ratio, sigma, g};
  p.geom = {R, theta, C::h0_over_R * R, C::domain_over_R * R};
  return p;
}

TimestepLimits timestep_limits(const FluidPair& fluid, double dx, double u_max) {
  if (!(dx > 0) || !(u_max >= 0)) {
    throw Error(ErrorKind::InvalidArgument, "need dx > 0 and u_max >= 0");
  }
  const double dx3 = dx * dx * dx;
  const double four_pi_sigma = 4.0 * std::numbers::pi * fluid.sigma;
  TimestepLimits out{};
  out.dt_sigma_liquid = std::sqrt(fluid.rho_l * dx3 / four_pi_sigma);
  out.dt_sigma_solver = std::sqrt((fluid.rho_l + fluid.rho_g) * dx3 / four_pi_sigma);
  out.dt_mu = fluid.rho_l * dx * dx / (6.0 * fluid.mu_l);
  out.dt_u = u_max > 0 ? dx / u_max : std::numeric_limits<double>::infinity();
  return out;
}

double crossover_cells(const FluidPair& fluid, const Geometry& geom) {
  if (!(std::cos(geom.theta_e) > 0)) {
    throw Error(ErrorKind::NonWettingAngle, "cos(theta) must be positive");
  }
  const double oh = fluid.mu_l / std::sqrt(fluid.sigma * fluid.rho_l * geom.R);
  return std::numbers::pi / (9.0 * oh * oh);
}

std::array<double, 3> cost_time_rates(const FluidPair& fluid, const Geometry& geom) {
  const double rho = fluid.rho_l;
  const double mu = fluid.mu_l;
  const double g = fluid.g;
  const double R = geom.R;
  const double sc = fluid.sigma * std::cos(geom.theta_e);
  return {rho * rho * g * g * R * R * R / (3.0 * mu * sc),
          std::sqrt(rho * g * g * R / sc),
          3.0 * mu / (rho * R * R)};
}

StepCounts step_counts(const FluidPair& fluid, const Geometry& geom, double n_cells) {
  if (!(n_cells >= 1)) throw Error(ErrorKind::InvalidArgument, "n_cells must be >= 1");
  const double dx = geom.R / n_cells;
  const TimestepLimits lim = timestep_limits(fluid, dx, 0.0);
  const auto rates = cost_time_rates(fluid, geom);
  StepCounts out{};
  for (std::size_t k = 0; k < 3; ++k) {
    out.sigma[k] = 1.0 / (rates[k] * lim.dt_sigma_liquid);
    out.mu[k] = 1.0 / (rates[k] * lim.dt_mu);
  }
  return out;
}

}  // namespace caprise
