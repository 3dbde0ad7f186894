#include "caprise/core.hpp"

#include <charconv>
#include <cmath>

#include "caprise/error.hpp"

namespace caprise {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonWettingAngle: return "NonWettingAngle";
    case ErrorKind::SingularHeight: return "SingularHeight";
    case ErrorKind::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorKind::ArcExceedsDomain: return "ArcExceedsDomain";
    case ErrorKind::DegenerateNormal: return "DegenerateNormal";
    case ErrorKind::CourantViolation: return "CourantViolation";
    case ErrorKind::StencilInvalid: return "StencilInvalid";
    case ErrorKind::SolverDiverged: return "SolverDiverged";
    case ErrorKind::MultiValuedColumn: return "MultiValuedColumn";
    case ErrorKind::NoOverlap: return "NoOverlap";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw Error(ErrorKind::InvalidArgument, msg);
}

}  // namespace

void FluidPair::validate() const {
  require(rho_l > 0 && rho_g > 0 && mu_l > 0 && mu_g > 0 && sigma > 0 && g > 0,
          "fluid properties must be positive");
  require(rho_l >= rho_g, "liquid must be at least as dense as the gas");
  require(mu_l >= mu_g, "liquid must be at least as viscous as the gas");
}

void Geometry::validate() const {
  require(R > 0, "half gap width must be positive");
  if (!(theta_e > 0 && theta_e <= std::numbers::pi / 2 + 1e-15)) {
    throw Error(ErrorKind::NonWettingAngle,
                "contact angle must lie in (0, 90] degrees");
  }
  require(h0 >= 0 && h0 < h_domain, "need 0 <= h0 < h_domain");
}

double SlipSpec::length() const {
  if (const auto* n = std::get_if<NavierSlip>(&variant)) return n->L;
  return 0.0;
}

std::string SlipSpec::describe() const {
  if (const auto* n = std::get_if<NavierSlip>(&variant)) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, n->L);
    return "navier:" + std::string(buf, res.ptr);
  }
  return "numerical";
}

void SlipSpec::validate() const {
  if (const auto* n = std::get_if<NavierSlip>(&variant)) {
    require(n->L > 0, "Navier slip length must be positive");
  }
}

DimensionlessNumbers dimensionless_numbers(const FluidPair& fluid,
                                           const Geometry& geom) {
  const double cos_t = std::cos(geom.theta_e);
  if (!(cos_t > 0)) {
    throw Error(ErrorKind::NonWettingAngle, "Omega undefined for cos(theta) <= 0");
  }
  const double rho = fluid.rho_l;
  const double mu = fluid.mu_l;
  const double R = geom.R;
  DimensionlessNumbers out{};
  out.Eo = (fluid.rho_l - fluid.rho_g) * fluid.g * R * R / fluid.sigma;
  out.Oh = mu / std::sqrt(fluid.sigma * rho * R);
  out.Omega = std::sqrt(9.0 * fluid.sigma * cos_t * mu * mu /
                        (rho * rho * rho * fluid.g * fluid.g * std::pow(R, 5)));
  out.l_cap = std::sqrt(fluid.sigma / (rho * fluid.g));
  return out;
}

double jurin_height(const FluidPair& fluid, const Geometry& geom) {
  return fluid.sigma * std::cos(geom.theta_e) / (geom.R * fluid.rho_l * fluid.g);
}

double height_correction(const Geometry& geom) {
  const double theta = geom.theta_e;
  const double R = geom.R;
  const double c = std::cos(theta);
  // Close to 90 degrees the closed form is 0/0; use its expansion in cos(theta).
  if (std::numbers::pi / 2 - theta < 1e-6) {
    if (c < 1e-15) return 0.0;
    const double e = c;
    return R * (e / 6.0 + e * e * e / 40.0);
  }
  return R / (2.0 * c) * (2.0 - std::sin(theta) - std::asin(c) / c);
}

double stationary_height(const FluidPair& fluid, const Geometry& geom) {
  return jurin_height(fluid, geom) - height_correction(geom);
}

}  // namespace caprise
