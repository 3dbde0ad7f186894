#pragma once

#include <string>
#include <vector>

namespace caprise {

struct TrajectorySample {
  double t;
  double h;
  double v;
};

struct TrajectoryMeta {
  std::string label;
  std::string model;
  std::string scaling = "none";
  double rtol = 0.0;
  double atol = 0.0;
  long n_steps = 0;  // accepted integrator or solver steps
};

/// Height-vs-time curve sampled on a uniform output grid (the final interval
/// may be shorter so that the last sample sits exactly at t_end).
struct Trajectory {
  std::vector<TrajectorySample> samples;
  TrajectoryMeta meta;

  bool empty() const { return samples.empty(); }
  std::size_t size() const { return samples.size(); }
  const TrajectorySample& front() const { return samples.front(); }
  const TrajectorySample& back() const { return samples.back(); }
};

/// Uniform output times t0, t0+dt, ..., ending exactly at t_end.
std::vector<double> output_times(double t0, double t_end, double dt_out);

}  // namespace caprise
