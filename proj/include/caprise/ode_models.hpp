#pragma once

#include <optional>
#include <string>
#include <vector>

#include "caprise/core.hpp"
#include "caprise/dopri5.hpp"
#include "caprise/trajectory.hpp"

namespace caprise {

struct RiseState {
  double h = 0.0;  // apex height, m
  double v = 0.0;  // dh/dt, m/s
};

enum class ModelKind { Classical, Extended };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& name);

/// Rise model selection. `slip_length` and the two flags only affect the
/// extended model; the flags exist for the reduction to the classical model.
struct ModelSpec {
  ModelKind kind = ModelKind::Extended;
  double slip_length = 0.0;
  bool include_convective = true;
  bool apply_height_correction = true;

  static ModelSpec classical() { return {ModelKind::Classical, 0.0, true, true}; }
  static ModelSpec extended(double L) { return {ModelKind::Extended, L, true, true}; }
};

struct RiseRate {
  double dh;
  double dv;
};

/// Right-hand side of the expanded first-order system (h, v).
/// Throws SingularHeight when the effective column height is <= 1e-14 R.
RiseRate rhs(const ModelSpec& model, const FluidPair& fluid, const Geometry& geom,
             const RiseState& state);

/// Stationary apex height the model levels at: h_Jurin (classical) or
/// h_Jurin - h_hat (extended with height correction).
double model_stationary_height(const ModelSpec& model, const FluidPair& fluid,
                               const Geometry& geom);

struct IntegrateOptions {
  Tolerance tol{};
  /// Output spacing; defaults to t_end / 2000.
  std::optional<double> dt_out;
  std::string label;
};

Trajectory integrate(const ModelSpec& model, const FluidPair& fluid, const Geometry& geom,
                     const RiseState& init, double t_end,
                     const IntegrateOptions& options = {});

/// 10 x the largest time unit of the three scalings, so that every scaled
/// representation reaches scaled time 10.
double auto_t_end(const FluidPair& fluid, const Geometry& geom);

struct Peak {
  double t;
  double h;
  bool is_max;
};
using PeakList = std::vector<Peak>;

struct PeakOptions {
  double eps_peak = 1e-4;
  /// Reference height for the prominence threshold; last sample if absent.
  std::optional<double> h_ref;
};

/// Interior extrema of h(t), alternating max/min, each with prominence of at
/// least eps_peak * h_ref, located by a parabola through three samples.
PeakList detect_peaks(const Trajectory& traj, const PeakOptions& options = {});

struct SettleMetrics {
  std::optional<double> t_settle;  // absent: NotSettled
  double h_final;
  double overshoot;
};

/// 1% settling band around h_inf.
SettleMetrics settle_metrics(const Trajectory& traj, double h_inf);

/// mu_l max|v| / sigma.
double ca_max(const Trajectory& traj, const FluidPair& fluid);

}  // namespace caprise
