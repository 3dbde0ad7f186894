#pragma once

#include <numbers>
#include <string>
#include <variant>

namespace caprise {

/// SI material properties of the liquid/gas pair.
struct FluidPair {
  double rho_l = 0.0;  // kg/m^3
  double rho_g = 0.0;  // kg/m^3
  double mu_l = 0.0;   // Pa s
  double mu_g = 0.0;   // Pa s
  double sigma = 0.0;  // N/m
  double g = 0.0;      // m/s^2

  void validate() const;
};

/// Planar gap of half width R; angles in radians.
struct Geometry {
  double R = 0.0;
  double theta_e = 0.0;
  double h0 = 0.0;
  double h_domain = 0.0;

  void validate() const;
};

struct NumericalSlip {};

/// Navier condition u_t + L du_t/dn = 0 at the wall.
struct NavierSlip {
  double L = 0.0;
  double friction(double mu_l) const { return mu_l / L; }
};

struct SlipSpec {
  std::variant<NumericalSlip, NavierSlip> variant;

  static SlipSpec numerical() { return {NumericalSlip{}}; }
  static SlipSpec navier(double L) { return {NavierSlip{L}}; }

  bool is_navier() const { return std::holds_alternative<NavierSlip>(variant); }
  /// Slip length, 0 for numerical slip.
  double length() const;
  std::string describe() const;
  void validate() const;
};

struct CaseSpec {
  std::string label;
  FluidPair fluid;
  Geometry geom;
  SlipSpec slip;
  double omega_nominal = 0.0;
};

struct DimensionlessNumbers {
  double Eo;
  double Oh;
  double Omega;
  double l_cap;
};

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Eo (with rho_l - rho_g), Oh, Omega and capillary length, all from liquid
/// properties. Throws NonWettingAngle when cos(theta_e) <= 0.
DimensionlessNumbers dimensionless_numbers(const FluidPair& fluid,
                                           const Geometry& geom);

/// sigma cos(theta) / (R rho g).
double jurin_height(const FluidPair& fluid, const Geometry& geom);

/// Apex-height reduction from the liquid stored in the circular meniscus.
double height_correction(const Geometry& geom);

/// jurin_height - height_correction; may be negative for extreme inputs.
double stationary_height(const FluidPair& fluid, const Geometry& geom);

}  // namespace caprise
