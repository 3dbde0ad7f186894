#include "caprise/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "caprise/error.hpp"
#include "caprise/study.hpp"
#include "caprise/trajectory_io.hpp"
#include "caprise/vof2d/vof2d.hpp"
#include "json.hpp"

namespace caprise::harness {

namespace {

struct OmegaRow {
  double omega;
  double sigma;
};

constexpr OmegaRow kRows[] = {{0.1, 0.2}, {0.5, 0.1}, {1.0, 0.04}, {10.0, 0.01}, {100.0, 0.001}};

}  // namespace

std::string omega_label(double omega) {
  std::ostringstream s;
  s << omega;
  return "omega-" + s.str();
}

CaseSpec make_case(double omega, double sigma, const SlipSpec& slip, const std::string& label) {
  const StudyParams p = synth_params(omega, sigma);
  CaseSpec c;
  c.label = label;
  c.fluid = p.fluid;
  c.geom = p.geom;
  c.slip = slip;
  c.omega_nominal = omega;
  return c;
}

std::vector<CaseSpec> omega_suite() {
  std::vector<CaseSpec> out;
  for (const auto& r : kRows) {
    out.push_back(make_case(r.omega, r.sigma, SlipSpec::navier(StudyConstants::R / 5), omega_label(r.omega)));
  }
  return out;
}

std::vector<CaseSpec> omega_suite_variants() {
  std::vector<CaseSpec> out;
  for (const auto& r : kRows) {
    const std::string base = omega_label(r.omega);
    out.push_back(make_case(r.omega, r.sigma, SlipSpec::navier(StudyConstants::R / 50), base + "-navier-r50"));
    out.push_back(make_case(r.omega, r.sigma, SlipSpec::numerical(), base + "-numerical"));
  }
  return out;
}

CaseSpec find_case(const std::string& label) {
  for (const auto& list : {omega_suite(), omega_suite_variants()}) {
    for (const auto& c : list) {
      if (c.label == label) return c;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown case '" + label + "'");
}

double interpolate_h(const Trajectory& traj, double t) {
  const auto& s = traj.samples;
  if (s.empty()) throw Error(ErrorKind::InvalidArgument, "empty trajectory");
  if (t <= s.front().t) return s.front().h;
  if (t >= s.back().t) return s.back().h;
  const auto it = std::upper_bound(s.begin(), s.end(), t,
                                   [](double x, const TrajectorySample& p) { return x < p.t; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (t - lo.t) / (hi.t - lo.t);
  return lo.h + w * (hi.h - lo.h);
}

DeviationMetrics compare(const Trajectory& a, const Trajectory& b, const CompareOptions& options) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::NoOverlap, "empty trajectory");
  const double t0 = std::max(a.front().t, b.front().t);
  const double t1 = std::min(a.back().t, b.back().t);
  if (!(t1 > t0)) throw Error(ErrorKind::NoOverlap, "trajectories do not overlap in time");

  std::vector<double> grid;
  for (const auto* tr : {&a, &b}) {
    for (const auto& s : tr->samples) {
      if (s.t >= t0 && s.t <= t1) grid.push_back(s.t);
    }
  }
  grid.push_back(t0);
  grid.push_back(t1);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  double num2 = 0.0, den2 = 0.0, num_inf = 0.0, den_inf = 0.0;
  for (double t : grid) {
    const double ha = interpolate_h(a, t);
    const double hb = interpolate_h(b, t);
    const double d = ha - hb;
    num2 += d * d;
    den2 += hb * hb;
    num_inf = std::max(num_inf, std::abs(d));
    den_inf = std::max(den_inf, std::abs(hb));
  }
  DeviationMetrics m;
  m.l2_numerator = std::sqrt(num2);
  m.l2_rel = den2 > 0 ? m.l2_numerator / std::sqrt(den2) : 0.0;
  m.linf_rel = den_inf > 0 ? num_inf / den_inf : 0.0;

  const double hia = options.h_inf_a.value_or(a.back().h);
  const double hib = options.h_inf_b.value_or(b.back().h);
  const PeakList pa = detect_peaks(a, {options.eps_peak, hia});
  const PeakList pb = detect_peaks(b, {options.eps_peak, hib});
  auto count_max = [](const PeakList& p) {
    return static_cast<std::size_t>(std::count_if(p.begin(), p.end(), [](const Peak& x) { return x.is_max; }));
  };
  m.peak_count_a = count_max(pa);
  m.peak_count_b = count_max(pb);
  auto first_max = [](const PeakList& p) -> std::optional<Peak> {
    for (const auto& x : p) {
      if (x.is_max) return x;
    }
    return std::nullopt;
  };
  const auto fa = first_max(pa);
  const auto fb = first_max(pb);
  if (fa && fb) {
    if (fb->t > 0) m.first_peak_time_ratio = fa->t / fb->t;
    const double ob = fb->h - hib;
    if (ob != 0.0) m.first_peak_overshoot_ratio = (fa->h - hia) / ob;
  }
  return m;
}

namespace {

Trajectory run_model(const CaseSpec& c, const std::string& model, const BenchOptions& options) {
  const RiseState init{c.geom.h0, 0.0};
  if (model == "classical" || model == "extended") {
    const ModelSpec spec = model == "classical" ? ModelSpec::classical() : ModelSpec::extended(c.slip.length());
    IntegrateOptions io;
    io.label = c.label;
    return integrate(spec, c.fluid, c.geom, init, auto_t_end(c.fluid, c.geom), io);
  }
  if (model == "vof2d") {
    if (!options.pde_cells) throw Error(ErrorKind::InvalidArgument, "vof2d requires a resolution");
    vof2d::CaseSetup2D setup;
    setup.case_spec = c;
    setup.n_cells_per_radius = *options.pde_cells;
    setup.t_end = options.pde_t_end.value_or(auto_t_end(c.fluid, c.geom));
    return vof2d::run(setup);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown model '" + model + "'");
}

}  // namespace

BenchResult run_case(const CaseSpec& c, const std::string& model, const BenchOptions& options) {
  BenchResult r;
  r.case_spec = c;
  r.model = model;
  r.h_jurin = jurin_height(c.fluid, c.geom);
  r.h_hat = height_correction(c.geom);
  r.h_inf_predicted = model == "classical" ? r.h_jurin : r.h_jurin - r.h_hat;
  const auto start = std::chrono::steady_clock::now();
  try {
    r.trajectory = run_model(c, model, options);
  } catch (const Error& e) {
    r.error = e.what();
    return r;
  }
  if (options.timing) {
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  r.trajectory.meta.label = c.label;
  r.n_steps = r.trajectory.meta.n_steps;
  r.h_final = r.trajectory.back().h;
  r.rel_stationary_err = std::abs(r.h_final - r.h_inf_predicted) / r.h_inf_predicted;
  r.ca_max = ca_max(r.trajectory, c.fluid);
  r.t_settle = settle_metrics(r.trajectory, r.h_inf_predicted).t_settle;
  r.peaks = detect_peaks(r.trajectory, {1e-4, r.h_inf_predicted});
  return r;
}

namespace {

nlohmann::ordered_json optional_number(const std::optional<double>& x) {
  return x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json result_json(const BenchResult& r) {
  using nlohmann::ordered_json;
  const CaseSpec& c = r.case_spec;
  ordered_json j;
  j["label"] = c.label;
  j["omega"] = c.omega_nominal;
  j["model"] = r.model;
  j["slip"] = c.slip.describe();
  j["params"] = {{"rho", c.fluid.rho_l},
                 {"mu", c.fluid.mu_l},
                 {"sigma", c.fluid.sigma},
                 {"g", c.fluid.g},
                 {"R", c.geom.R},
                 {"theta_deg", rad_to_deg(c.geom.theta_e)}};
  j["h_jurin"] = r.h_jurin;
  j["h_hat"] = r.h_hat;
  j["h_inf"] = r.h_inf_predicted;
  if (r.error) {
    j["error"] = *r.error;
    return j;
  }
  j["h_final"] = r.h_final;
  j["rel_stationary_err"] = r.rel_stationary_err;
  j["ca_max"] = r.ca_max;
  j["t_settle"] = optional_number(r.t_settle);
  ordered_json peaks = ordered_json::array();
  for (const auto& p : r.peaks) peaks.push_back({{"t", p.t}, {"h", p.h}, {"is_max", p.is_max}});
  j["peaks"] = peaks;
  j["n_steps"] = r.n_steps;
  j["wall_time_s"] = optional_number(r.wall_time_s);
  j["files"] = r.files;
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << text;
}

void export_result(BenchResult& r, const BenchOptions& options) {
  namespace fs = std::filesystem;
  if (r.error) return;
  const fs::path dir(options.out_dir);
  for (const std::string& scaling : options.scalings) {
    const std::string stem = r.case_spec.label + "_" + r.model + "_" + scaling;
    if (scaling == "none") {
      write_csv((dir / (stem + ".csv")).string(), r.trajectory);
    } else {
      const ScalingKind kind = parse_scaling_kind(scaling);
      const ScaleSet s = coefficients(r.case_spec.fluid, r.case_spec.geom, options.dim);
      const ScaleUnits u = units(kind, s);
      write_csv((dir / (stem + ".csv")).string(), nondimensionalize(r.trajectory, kind, s));
      nlohmann::ordered_json side = {{"scaling", to_string(kind)},
                                     {"dim", options.dim == Dim::Two ? 2 : 3},
                                     {"t_rate", u.t_rate},
                                     {"h_rate", u.h_rate},
                                     {"v_rate", u.h_rate / u.t_rate},
                                     {"omega", s.omega}};
      write_text(dir / (stem + ".json"), side.dump(2) + "\n");
    }
    r.files.push_back(stem + ".csv");
  }
}

}  // namespace

std::vector<BenchResult> run_suite(const std::vector<CaseSpec>& cases, const BenchOptions& options) {
  for (const auto& s : options.scalings) {
    if (s != "none") parse_scaling_kind(s);
  }
  for (const auto& m : options.models) {
    if (m != "classical" && m != "extended" && m != "vof2d") {
      throw Error(ErrorKind::InvalidArgument, "unknown model '" + m + "'");
    }
  }
  std::vector<std::pair<std::size_t, std::string>> tasks;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    for (const auto& m : options.models) {
      if (m == "vof2d" && !options.pde_cells) continue;
      tasks.emplace_back(i, m);
    }
  }
  std::vector<BenchResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      results[k] = run_case(cases[tasks[k].first], tasks[k].second, options);
    }
  };
  int n = options.workers > 0 ? options.workers : static_cast<int>(std::thread::hardware_concurrency());
  n = std::clamp(n, 1, std::max<int>(1, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (!options.out_dir.empty()) {
    std::filesystem::create_directories(options.out_dir);
    nlohmann::ordered_json summary;
    summary["suite"] = "omega-study";
    summary["results"] = nlohmann::ordered_json::array();
    for (auto& r : results) {
      export_result(r, options);
      summary["results"].push_back(result_json(r));
    }
    write_text(std::filesystem::path(options.out_dir) / "summary.json", summary.dump(2) + "\n");
  }
  return results;
}

}  // namespace caprise::harness
