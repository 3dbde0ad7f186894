// caprise command-line interface.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "caprise/core.hpp"
#include "caprise/error.hpp"
#include "caprise/harness.hpp"
#include "caprise/ode_models.hpp"
#include "caprise/scaling.hpp"
#include "caprise/study.hpp"
#include "caprise/trajectory_io.hpp"
#include "caprise/vof2d/vof2d.hpp"
#include "json.hpp"

using nlohmann::ordered_json;
using namespace caprise;

namespace {

constexpr int kOk = 0;
constexpr int kBadArgs = 2;
constexpr int kNumerical = 3;

void print_json(const ordered_json& j) { std::cout << j.dump(2) << '\n'; }

ordered_json opt(const std::optional<double>& x) { return x ? ordered_json(*x) : ordered_json(nullptr); }

double parse_t_end(const std::string& text, const FluidPair& fluid, const Geometry& geom) {
  if (text == "auto") return auto_t_end(fluid, geom);
  try {
    std::size_t pos = 0;
    const double t = std::stod(text, &pos);
    if (pos != text.size() || !(t > 0)) throw std::invalid_argument(text);
    return t;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, "--t-end must be 'auto' or a positive number, got '" + text + "'");
  }
}

SlipSpec parse_slip(const std::string& text) {
  if (text == "numerical") return SlipSpec::numerical();
  const std::string prefix = "navier:";
  if (text.rfind(prefix, 0) == 0) {
    try {
      std::size_t pos = 0;
      const std::string num = text.substr(prefix.size());
      const double L = std::stod(num, &pos);
      if (pos == num.size()) {
        SlipSpec s = SlipSpec::navier(L);
        s.validate();
        return s;
      }
    } catch (const std::logic_error&) {
    }
  }
  throw Error(ErrorKind::InvalidArgument, "--slip must be 'numerical' or 'navier:<length>', got '" + text + "'");
}

ordered_json params_json(const FluidPair& f, const Geometry& g) {
  return {{"rho", f.rho_l}, {"mu", f.mu_l}, {"sigma", f.sigma}, {"g", f.g}, {"R", g.R}, {"theta_deg", rad_to_deg(g.theta_e)}};
}

ordered_json peaks_json(const PeakList& peaks) {
  ordered_json a = ordered_json::array();
  for (const auto& p : peaks) a.push_back({{"t", p.t}, {"h", p.h}, {"is_max", p.is_max}});
  return a;
}

ordered_json trajectory_summary(const std::string& model, double omega, const CaseSpec& c, const Trajectory& tr,
                                double h_inf) {
  const double h_final = tr.back().h;
  return {{"label", c.label},
          {"omega", omega},
          {"model", model},
          {"slip", c.slip.describe()},
          {"params", params_json(c.fluid, c.geom)},
          {"h_jurin", jurin_height(c.fluid, c.geom)},
          {"h_hat", height_correction(c.geom)},
          {"h_inf", h_inf},
          {"h_final", h_final},
          {"rel_stationary_err", std::abs(h_final - h_inf) / h_inf},
          {"ca_max", ca_max(tr, c.fluid)},
          {"t_settle", opt(settle_metrics(tr, h_inf).t_settle)},
          {"peaks", peaks_json(detect_peaks(tr, {1e-4, h_inf}))},
          {"n_steps", tr.meta.n_steps},
          {"wall_time_s", nullptr}};
}

void write_sidecar(const std::string& csv_path, const ordered_json& j) {
  std::filesystem::path p(csv_path);
  p.replace_extension(".json");
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + p.string());
  out << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capillary rise models, scalings and a 2D VOF solver"};
  app.require_subcommand(1);

  double omega = 0.0, sigma = 0.0;
  auto add_omega_sigma = [&](CLI::App* sub) {
    sub->add_option("--omega", omega, "Non-dimensional group Omega")->required();
    sub->add_option("--sigma", sigma, "Surface tension [N/m]")->required();
  };

  auto* steady = app.add_subcommand("steady", "Stationary heights h_Jurin, h_hat and h_inf");
  add_omega_sigma(steady);

  auto* params = app.add_subcommand("params", "Synthesized material parameters for (Omega, sigma)");
  add_omega_sigma(params);

  auto* cost = app.add_subcommand("cost", "Time step limits and step-count estimates");
  add_omega_sigma(cost);
  double cells = 32;
  cost->add_option("--cells", cells, "Cells per radius")->required();

  auto* ode = app.add_subcommand("ode", "Integrate the classical or extended rise model");
  add_omega_sigma(ode);
  std::string model_name, t_end_text = "auto", out_path;
  std::optional<double> slip_length, h0, dt_out;
  ode->add_option("--model", model_name, "classical|extended")->required();
  ode->add_option("--slip-length", slip_length, "Navier slip length [m] (extended; default R/5)");
  ode->add_option("--h0", h0, "Initial apex height [m] (default 2R)");
  ode->add_option("--t-end", t_end_text, "End time [s] or 'auto'");
  ode->add_option("--dt-out", dt_out, "Output spacing [s] (default t_end/2000)");
  ode->add_option("--out", out_path, "Trajectory CSV path (stdout when absent)");

  auto* scale = app.add_subcommand("scale", "Nondimensionalize a trajectory CSV");
  add_omega_sigma(scale);
  std::string in_path, scaling_name;
  int dim = 2;
  scale->add_option("--input", in_path, "Trajectory CSV")->required();
  scale->add_option("--scaling", scaling_name, "I|II|III")->required();
  scale->add_option("--dim", dim, "2 or 3")->check(CLI::IsMember({2, 3}));
  scale->add_option("--out", out_path, "Scaled CSV path")->required();

  auto* sim2d = app.add_subcommand("sim2d", "Run the 2D VOF capillary rise");
  add_omega_sigma(sim2d);
  int cells_per_radius = 16;
  std::string slip_text;
  long dump_every = 0;
  std::string dump_prefix = "fields_";
  sim2d->add_option("--cells-per-radius", cells_per_radius, "Cells across the half gap")->required();
  sim2d->add_option("--slip", slip_text, "numerical|navier:<m>")->required();
  sim2d->add_option("--t-end", t_end_text, "End time [s] or 'auto'");
  sim2d->add_option("--dt-out", dt_out, "Apex sampling interval [s] (default t_end/400)");
  sim2d->add_option("--dump-every", dump_every, "Write a field CSV every n steps");
  sim2d->add_option("--dump-prefix", dump_prefix, "Path prefix for field dumps");
  sim2d->add_option("--out", out_path, "Trajectory CSV path")->required();

  auto* bench = app.add_subcommand("bench", "Run the Omega study and export CSV/JSON");
  std::string suite;
  std::vector<std::string> models{"classical", "extended"}, scalings{"none"}, case_labels;
  std::optional<int> with_pde;
  std::optional<double> pde_t_end;
  std::string out_dir;
  int workers = 0;
  bool timing = false, variants = false;
  bench->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember({"omega-study"}));
  bench->add_option("--models", models, "classical extended vof2d");
  bench->add_option("--scalings", scalings, "none I II III");
  bench->add_option("--cases", case_labels, "Case labels (default: the five base cases)");
  bench->add_flag("--variants", variants, "Also run the slip variants");
  bench->add_option("--with-pde", with_pde, "Cells per radius for vof2d runs");
  bench->add_option("--pde-t-end", pde_t_end, "End time for vof2d runs [s]");
  bench->add_option("--workers", workers, "Concurrent cases (default: hardware threads)");
  bench->add_flag("--timing", timing, "Record wall times (output is then not reproducible)");
  bench->add_option("--out-dir", out_dir, "Output directory")->required();

  auto* cmp = app.add_subcommand("compare", "Deviation metrics between two trajectory CSVs");
  std::string a_path, b_path;
  std::optional<double> h_inf_a, h_inf_b;
  cmp->add_option("--a", a_path, "Trajectory A")->required();
  cmp->add_option("--b", b_path, "Trajectory B (reference)")->required();
  cmp->add_option("--h-inf-a", h_inf_a, "Stationary height of A (default: last sample)");
  cmp->add_option("--h-inf-b", h_inf_b, "Stationary height of B (default: last sample)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadArgs;
  }

  try {
    if (steady->parsed()) {
      const StudyParams p = synth_params(omega, sigma);
      const double hj = jurin_height(p.fluid, p.geom);
      const double hh = height_correction(p.geom);
      print_json({{"h_jurin", hj}, {"h_hat", hh}, {"h_inf", stationary_height(p.fluid, p.geom)}, {"h_jurin_minus_h_hat", hj - hh}});
    } else if (params->parsed()) {
      const StudyParams p = synth_params(omega, sigma);
      const DimensionlessNumbers d = dimensionless_numbers(p.fluid, p.geom);
      print_json({{"omega", omega},
                  {"R", p.geom.R},
                  {"rho", p.fluid.rho_l},
                  {"mu", p.fluid.mu_l},
                  {"g", p.fluid.g},
                  {"sigma", p.fluid.sigma},
                  {"theta_deg", rad_to_deg(p.geom.theta_e)},
                  {"Eo", d.Eo},
                  {"Oh", d.Oh},
                  {"Omega", d.Omega},
                  {"l_cap", d.l_cap},
                  {"rho_g", p.fluid.rho_g},
                  {"mu_g", p.fluid.mu_g},
                  {"h_jurin", jurin_height(p.fluid, p.geom)},
                  {"t_end_auto", auto_t_end(p.fluid, p.geom)}});
    } else if (cost->parsed()) {
      if (!(cells > 0)) throw Error(ErrorKind::InvalidArgument, "--cells must be positive");
      const StudyParams p = synth_params(omega, sigma);
      const double dx = p.geom.R / cells;
      const TimestepLimits lim = timestep_limits(p.fluid, dx, 0.0);
      const StepCounts n = step_counts(p.fluid, p.geom, cells);
      const auto rates = cost_time_rates(p.fluid, p.geom);
      print_json({{"omega", omega},
                  {"cells", cells},
                  {"dx", dx},
                  {"dt_sigma_liquid", lim.dt_sigma_liquid},
                  {"dt_sigma_solver", lim.dt_sigma_solver},
                  {"dt_mu", lim.dt_mu},
                  {"n_cells_star", crossover_cells(p.fluid, p.geom)},
                  {"t_scale", rates},
                  {"n_steps",
                   {{"1_sigma", n.sigma[0]},
                    {"2_sigma", n.sigma[1]},
                    {"3_sigma", n.sigma[2]},
                    {"1_mu", n.mu[0]},
                    {"2_mu", n.mu[1]},
                    {"3_mu", n.mu[2]}}}});
    } else if (ode->parsed()) {
      const ModelKind kind = parse_model_kind(model_name);
      const StudyParams p = synth_params(omega, sigma);
      CaseSpec c;
      c.label = harness::omega_label(omega);
      c.fluid = p.fluid;
      c.geom = p.geom;
      c.omega_nominal = omega;
      const double L = slip_length.value_or(p.geom.R / 5);
      c.slip = kind == ModelKind::Extended ? SlipSpec::navier(L) : SlipSpec::numerical();
      const ModelSpec spec = kind == ModelKind::Classical ? ModelSpec::classical() : ModelSpec::extended(L);
      const double t_end = parse_t_end(t_end_text, p.fluid, p.geom);
      IntegrateOptions io;
      io.label = c.label;
      io.dt_out = dt_out;
      const Trajectory tr = integrate(spec, p.fluid, p.geom, {h0.value_or(2 * p.geom.R), 0.0}, t_end, io);
      if (out_path.empty()) {
        write_csv(std::cout, tr);
      } else {
        write_csv(out_path, tr);
        ordered_json j = trajectory_summary(model_name, omega, c, tr, model_stationary_height(spec, p.fluid, p.geom));
        if (kind == ModelKind::Classical) j["slip"] = nullptr;
        print_json(j);
      }
    } else if (scale->parsed()) {
      const StudyParams p = synth_params(omega, sigma);
      const ScalingKind kind = parse_scaling_kind(scaling_name);
      const ScaleSet s = coefficients(p.fluid, p.geom, dim == 2 ? Dim::Two : Dim::Three);
      const ScaleUnits u = units(kind, s);
      const Trajectory scaled = nondimensionalize(read_csv(in_path), kind, s);
      write_csv(out_path, scaled);
      const ordered_json side = {{"scaling", to_string(kind)},
                                 {"dim", dim},
                                 {"t_rate", u.t_rate},
                                 {"h_rate", u.h_rate},
                                 {"v_rate", u.h_rate / u.t_rate},
                                 {"omega", s.omega}};
      write_sidecar(out_path, side);
      print_json(side);
    } else if (sim2d->parsed()) {
      const StudyParams p = synth_params(omega, sigma);
      vof2d::CaseSetup2D setup;
      setup.case_spec.label = harness::omega_label(omega);
      setup.case_spec.fluid = p.fluid;
      setup.case_spec.geom = p.geom;
      setup.case_spec.slip = parse_slip(slip_text);
      setup.case_spec.omega_nominal = omega;
      setup.n_cells_per_radius = cells_per_radius;
      setup.t_end = parse_t_end(t_end_text, p.fluid, p.geom);
      setup.dt_out = dt_out;
      setup.dump_every = dump_every;
      setup.dump_prefix = dump_prefix;
      const Trajectory tr = vof2d::run(setup);
      write_csv(out_path, tr);
      print_json(trajectory_summary("vof2d", omega, setup.case_spec, tr, stationary_height(p.fluid, p.geom)));
    } else if (bench->parsed()) {
      std::vector<CaseSpec> cases;
      if (case_labels.empty()) {
        cases = harness::omega_suite();
        if (variants) {
          const auto v = harness::omega_suite_variants();
          cases.insert(cases.end(), v.begin(), v.end());
        }
      } else {
        for (const auto& l : case_labels) cases.push_back(harness::find_case(l));
      }
      harness::BenchOptions options;
      options.models = models;
      options.scalings = scalings;
      options.pde_cells = with_pde;
      options.pde_t_end = pde_t_end;
      options.workers = workers;
      options.timing = timing;
      options.out_dir = out_dir;
      const auto results = harness::run_suite(cases, options);
      int failures = 0;
      for (const auto& r : results) {
        if (r.error) {
          ++failures;
          std::cerr << r.case_spec.label << " " << r.model << ": " << *r.error << '\n';
        }
      }
      std::cout << "wrote " << results.size() << " result(s) to " << out_dir << '\n';
      if (failures > 0) return kNumerical;
    } else if (cmp->parsed()) {
      harness::CompareOptions co;
      co.h_inf_a = h_inf_a;
      co.h_inf_b = h_inf_b;
      const harness::DeviationMetrics m = harness::compare(read_csv(a_path), read_csv(b_path), co);
      print_json({{"l2_rel", m.l2_rel},
                  {"linf_rel", m.linf_rel},
                  {"first_peak_time_ratio", opt(m.first_peak_time_ratio)},
                  {"first_peak_overshoot_ratio", opt(m.first_peak_overshoot_ratio)},
                  {"peak_count_a", m.peak_count_a},
                  {"peak_count_b", m.peak_count_b}});
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.is_argument_error() ? kBadArgs : kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
