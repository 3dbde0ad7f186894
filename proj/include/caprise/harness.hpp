#pragma once

#include <optional>
#include <string>
#include <vector>

#include "caprise/core.hpp"
#include "caprise/ode_models.hpp"
#include "caprise/scaling.hpp"
#include "caprise/trajectory.hpp"

namespace caprise::harness {

/// "omega-0.1", "omega-10", ...
std::string omega_label(double omega);

CaseSpec make_case(double omega, double sigma, const SlipSpec& slip, const std::string& label);

/// The five base cases (Navier slip L = R/5).
std::vector<CaseSpec> omega_suite();

/// Slip variants of every base case: L = R/50 ("-navier-r50") and numerical
/// slip ("-numerical").
std::vector<CaseSpec> omega_suite_variants();

/// Base case or variant by label; throws InvalidArgument when unknown.
CaseSpec find_case(const std::string& label);

struct DeviationMetrics {
  double l2_rel = 0.0;
  double linf_rel = 0.0;
  double l2_numerator = 0.0;  // ||h_a - h_b||_2 on the union grid
  std::optional<double> first_peak_time_ratio;
  std::optional<double> first_peak_overshoot_ratio;
  std::size_t peak_count_a = 0;
  std::size_t peak_count_b = 0;
};

struct CompareOptions {
  /// Stationary heights for the overshoot ratio; the last sample otherwise.
  std::optional<double> h_inf_a;
  std::optional<double> h_inf_b;
  double eps_peak = 1e-4;
};

/// Linear resampling of both trajectories onto the union of their sample
/// times within the overlap. Norms are relative to b. Throws NoOverlap.
DeviationMetrics compare(const Trajectory& a, const Trajectory& b, const CompareOptions& options = {});

/// h at time t by linear interpolation (clamped to the end samples).
double interpolate_h(const Trajectory& traj, double t);

struct BenchOptions {
  std::vector<std::string> models{"classical", "extended"};
  /// Any of "none", "I", "II", "III".
  std::vector<std::string> scalings{"none"};
  /// Cells per radius for vof2d runs; vof2d is skipped when absent.
  std::optional<int> pde_cells;
  /// vof2d end time; the case's auto t_end when absent.
  std::optional<double> pde_t_end;
  Dim dim = Dim::Two;
  int workers = 0;  // 0: hardware concurrency
  bool timing = false;
  /// Output directory; nothing is written when empty.
  std::string out_dir;
};

struct BenchResult {
  CaseSpec case_spec;
  std::string model;
  Trajectory trajectory;
  double h_jurin = 0.0;
  double h_hat = 0.0;
  double h_inf_predicted = 0.0;
  double h_final = 0.0;
  double rel_stationary_err = 0.0;
  double ca_max = 0.0;
  std::optional<double> t_settle;
  PeakList peaks;
  std::optional<double> wall_time_s;
  long n_steps = 0;
  std::optional<std::string> error;
  std::vector<std::string> files;
};

/// Runs one (case, model) pair; the model is "classical", "extended" or
/// "vof2d". Failures are captured in `error`.
BenchResult run_case(const CaseSpec& c, const std::string& model, const BenchOptions& options);

/// Runs every (case, model) pair, possibly concurrently, and exports
/// `<label>_<model>_<scaling>.csv` files plus `summary.json` when
/// options.out_dir is set. Results come back in input order.
std::vector<BenchResult> run_suite(const std::vector<CaseSpec>& cases, const BenchOptions& options);

}  // namespace caprise::harness
