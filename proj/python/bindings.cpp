#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "caprise/core.hpp"
#include "caprise/error.hpp"
#include "caprise/harness.hpp"
#include "caprise/ode_models.hpp"
#include "caprise/scaling.hpp"
#include "caprise/study.hpp"
#include "caprise/vof2d/vof2d.hpp"

namespace py = pybind11;
using namespace caprise;

namespace {

py::dict to_dict(const Trajectory& tr) {
  const std::size_t n = tr.size();
  std::vector<double> tv(n), hv(n), vv(n);
  for (std::size_t i = 0; i < n; ++i) {
    tv[i] = tr.samples[i].t;
    hv[i] = tr.samples[i].h;
    vv[i] = tr.samples[i].v;
  }
  py::array_t<double> t(n, tv.data()), h(n, hv.data()), v(n, vv.data());
  py::dict d;
  d["t"] = t;
  d["h"] = h;
  d["hdot"] = v;
  d["label"] = tr.meta.label;
  d["model"] = tr.meta.model;
  d["scaling"] = tr.meta.scaling;
  d["n_steps"] = tr.meta.n_steps;
  return d;
}

Trajectory from_arrays(py::array_t<double> t, py::array_t<double> h, py::array_t<double> v) {
  auto pt = t.unchecked<1>();
  auto ph = h.unchecked<1>();
  auto pv = v.unchecked<1>();
  if (pt.shape(0) != ph.shape(0) || pt.shape(0) != pv.shape(0)) {
    throw Error(ErrorKind::InvalidArgument, "t, h and hdot must have equal length");
  }
  Trajectory tr;
  for (py::ssize_t i = 0; i < pt.shape(0); ++i) tr.samples.push_back({pt(i), ph(i), pv(i)});
  return tr;
}

SlipSpec slip_from(double slip_length) {
  return slip_length > 0 ? SlipSpec::navier(slip_length) : SlipSpec::numerical();
}

}  // namespace

PYBIND11_MODULE(_caprise, m) {
  m.doc() = "Capillary rise models, scalings and a 2D VOF solver";

  py::register_exception<Error>(m, "CapriseError", PyExc_RuntimeError);

  py::class_<FluidPair>(m, "FluidPair")
      .def(py::init<>())
      .def_readwrite("rho_l", &FluidPair::rho_l)
      .def_readwrite("rho_g", &FluidPair::rho_g)
      .def_readwrite("mu_l", &FluidPair::mu_l)
      .def_readwrite("mu_g", &FluidPair::mu_g)
      .def_readwrite("sigma", &FluidPair::sigma)
      .def_readwrite("g", &FluidPair::g);

  py::class_<Geometry>(m, "Geometry")
      .def(py::init<>())
      .def_readwrite("R", &Geometry::R)
      .def_readwrite("theta_e", &Geometry::theta_e)
      .def_readwrite("h0", &Geometry::h0)
      .def_readwrite("h_domain", &Geometry::h_domain);

  py::class_<DimensionlessNumbers>(m, "DimensionlessNumbers")
      .def_readonly("Eo", &DimensionlessNumbers::Eo)
      .def_readonly("Oh", &DimensionlessNumbers::Oh)
      .def_readonly("Omega", &DimensionlessNumbers::Omega)
      .def_readonly("l_cap", &DimensionlessNumbers::l_cap);

  m.def("synth_params", [](double omega, double sigma) {
    const StudyParams p = synth_params(omega, sigma);
    return py::make_tuple(p.fluid, p.geom);
  }, py::arg("omega"), py::arg("sigma"), "Material parameters (FluidPair, Geometry) for (Omega, sigma).");
  m.def("dimensionless_numbers", &dimensionless_numbers, py::arg("fluid"), py::arg("geom"));
  m.def("jurin_height", &jurin_height, py::arg("fluid"), py::arg("geom"));
  m.def("height_correction", &height_correction, py::arg("geom"));
  m.def("stationary_height", &stationary_height, py::arg("fluid"), py::arg("geom"));
  m.def("auto_t_end", &auto_t_end, py::arg("fluid"), py::arg("geom"));

  m.def("integrate", [](const std::string& model, const FluidPair& fluid, const Geometry& geom, double slip_length,
                        std::optional<double> h0, std::optional<double> t_end, std::optional<double> dt_out,
                        double rtol, double atol) {
    const ModelKind kind = parse_model_kind(model);
    const ModelSpec spec = kind == ModelKind::Classical ? ModelSpec::classical() : ModelSpec::extended(slip_length);
    IntegrateOptions io;
    io.tol = {rtol, atol};
    io.dt_out = dt_out;
    const Trajectory tr = integrate(spec, fluid, geom, {h0.value_or(geom.h0), 0.0},
                                    t_end.value_or(auto_t_end(fluid, geom)), io);
    return to_dict(tr);
  }, py::arg("model"), py::arg("fluid"), py::arg("geom"), py::arg("slip_length") = 0.0, py::arg("h0") = py::none(),
     py::arg("t_end") = py::none(), py::arg("dt_out") = py::none(), py::arg("rtol") = 1e-10, py::arg("atol") = 1e-12,
     "Integrate the classical or extended rise model from rest.");

  m.def("detect_peaks", [](py::array_t<double> t, py::array_t<double> h, std::optional<double> h_ref, double eps_peak) {
    const Trajectory tr = from_arrays(t, h, py::array_t<double>(t.size()));
    py::list out;
    for (const Peak& p : detect_peaks(tr, {eps_peak, h_ref})) out.append(py::make_tuple(p.t, p.h, p.is_max));
    return out;
  }, py::arg("t"), py::arg("h"), py::arg("h_ref") = py::none(), py::arg("eps_peak") = 1e-4,
     "Interior extrema as (t, h, is_max) tuples.");

  m.def("scaling_units", [](const FluidPair& fluid, const Geometry& geom, const std::string& kind, int dim) {
    const ScaleSet s = coefficients(fluid, geom, dim == 3 ? Dim::Three : Dim::Two);
    const ScaleUnits u = units(parse_scaling_kind(kind), s);
    py::dict d;
    d["a"] = s.a;
    d["b"] = s.b;
    d["c"] = s.c;
    d["omega"] = s.omega;
    d["t_rate"] = u.t_rate;
    d["h_rate"] = u.h_rate;
    return d;
  }, py::arg("fluid"), py::arg("geom"), py::arg("kind"), py::arg("dim") = 2);

  m.def("timestep_limits", [](const FluidPair& fluid, double dx, double u_max) {
    const TimestepLimits l = timestep_limits(fluid, dx, u_max);
    py::dict d;
    d["dt_sigma_liquid"] = l.dt_sigma_liquid;
    d["dt_sigma_solver"] = l.dt_sigma_solver;
    d["dt_mu"] = l.dt_mu;
    d["dt_u"] = l.dt_u;
    return d;
  }, py::arg("fluid"), py::arg("dx"), py::arg("u_max") = 0.0);
  m.def("crossover_cells", &crossover_cells, py::arg("fluid"), py::arg("geom"));
  m.def("step_counts", [](const FluidPair& fluid, const Geometry& geom, double n_cells) {
    const StepCounts n = step_counts(fluid, geom, n_cells);
    return py::make_tuple(n.sigma, n.mu);
  }, py::arg("fluid"), py::arg("geom"), py::arg("n_cells"), "((N1s, N2s, N3s), (N1m, N2m, N3m))");

  m.def("omega_suite", []() {
    py::list out;
    for (const CaseSpec& c : harness::omega_suite()) {
      out.append(py::make_tuple(c.label, c.omega_nominal, c.fluid.sigma, c.slip.length()));
    }
    return out;
  }, "(label, omega, sigma, slip_length) of the five base cases.");

  m.def("compare", [](py::dict a, py::dict b) {
    const Trajectory ta = from_arrays(a["t"].cast<py::array_t<double>>(), a["h"].cast<py::array_t<double>>(),
                                      a["hdot"].cast<py::array_t<double>>());
    const Trajectory tb = from_arrays(b["t"].cast<py::array_t<double>>(), b["h"].cast<py::array_t<double>>(),
                                      b["hdot"].cast<py::array_t<double>>());
    const harness::DeviationMetrics dm = harness::compare(ta, tb);
    py::dict d;
    d["l2_rel"] = dm.l2_rel;
    d["linf_rel"] = dm.linf_rel;
    d["first_peak_time_ratio"] = dm.first_peak_time_ratio;
    d["first_peak_overshoot_ratio"] = dm.first_peak_overshoot_ratio;
    d["peak_count_a"] = dm.peak_count_a;
    d["peak_count_b"] = dm.peak_count_b;
    return d;
  }, py::arg("a"), py::arg("b"), "Deviation metrics of trajectory dicts a and b (b is the reference).");

  m.def("run_vof2d", [](double omega, double sigma, int cells_per_radius, double slip_length, double t_end,
                        std::optional<double> dt_out) {
    vof2d::CaseSetup2D setup;
    setup.case_spec = harness::make_case(omega, sigma, slip_from(slip_length), harness::omega_label(omega));
    setup.n_cells_per_radius = cells_per_radius;
    setup.t_end = t_end;
    setup.dt_out = dt_out;
    Trajectory tr;
    {
      py::gil_scoped_release release;
      tr = vof2d::run(setup);
    }
    return to_dict(tr);
  }, py::arg("omega"), py::arg("sigma"), py::arg("cells_per_radius"), py::arg("slip_length"), py::arg("t_end"),
     py::arg("dt_out") = py::none(), "2D VOF run; slip_length <= 0 selects numerical slip.");
}
