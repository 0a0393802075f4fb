// Python bindings for the ensemble pipeline: families -> spectra -> field
// evaluation, plus the focusing, dispersionless, convergence, and acceptance
// entry points.  Mirrors the C++ API one-to-one; heavy calls release the GIL.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sse/acceptance.hpp"
#include "sse/dispersionless.hpp"
#include "sse/ensemble.hpp"
#include "sse/fitting.hpp"
#include "sse/focusing.hpp"
#include "sse/potentials.hpp"
#include "sse/scattering.hpp"

namespace py = pybind11;
using namespace sse;

PYBIND11_MODULE(_sse, m) {
  m.doc() = "semiclassical soliton ensembles of the focusing NLS hierarchy";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<CollapseError>(m, "CollapseError", PyExc_RuntimeError);

  // ---- potential families -------------------------------------------------
  py::class_<PotentialFamily>(m, "PotentialFamily")
      .def_property_readonly("kind", &PotentialFamily::kind_name)
      .def_readonly("A_max", &PotentialFamily::A_max)
      .def_readonly("X_minus", &PotentialFamily::X_minus)
      .def_readonly("X_plus", &PotentialFamily::X_plus)
      .def_readonly("x0", &PotentialFamily::x0)
      .def("__repr__", [](const PotentialFamily& f) {
        return "<PotentialFamily " + f.kind_name() + ">";
      });
  m.def("semicircle_family", &semicircle_family, py::arg("A_max"),
        py::arg("X_minus"), py::arg("X_plus"));
  m.def("hirota_family", &hirota_family, py::arg("A_max"), py::arg("X_minus"),
        py::arg("X_plus"), py::arg("xi"));
  m.def("lpd_family", &lpd_family, py::arg("A_max"), py::arg("X_minus"),
        py::arg("X_plus"), py::arg("gamma"));
  m.def("interpolation_family", &interpolation_family, py::arg("delta"));
  m.def("amplitude", &amplitude, py::arg("family"), py::arg("x"));
  m.def("inverse_branches", &inverse_branches, py::arg("family"), py::arg("s"));
  m.def("phase_integral", &phase_integral, py::arg("family"), py::arg("s"));
  m.def("tail_integral", &tail_integral, py::arg("family"), py::arg("s"));
  m.def("density", &density, py::arg("family"), py::arg("s"));
  m.def("amplitude_mass", &amplitude_mass, py::arg("family"));

  // ---- spectra ------------------------------------------------------------
  py::class_<SpectralData>(m, "SpectralData")
      .def_readonly("N", &SpectralData::N)
      .def_readonly("epsilon", &SpectralData::epsilon)
      .def_readonly("s", &SpectralData::s)
      .def_readonly("log_tau", &SpectralData::log_tau)
      .def_readonly("tau_sign", &SpectralData::tau_sign)
      .def_readonly("log_c0", &SpectralData::log_c0)
      .def_readonly("c0_phase", &SpectralData::c0_phase)
      .def_readonly("data_bits", &SpectralData::data_bits)
      .def("__repr__", [](const SpectralData& sd) {
        return "<SpectralData N=" + std::to_string(sd.N) +
               " eps=" + std::to_string(sd.epsilon) + ">";
      });
  m.def("epsilon_for", &epsilon_for, py::arg("family"), py::arg("N"));
  m.def("wkb_spectrum", &wkb_spectrum, py::arg("family"), py::arg("N"),
        py::arg("data_bits") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("trace_l2", &trace_l2, py::arg("spectrum"));

  // ---- field evaluation ---------------------------------------------------
  py::enum_<Formulation>(m, "Formulation")
      .value("Auto", Formulation::Auto)
      .value("Primary", Formulation::Primary)
      .value("Renormalized", Formulation::Renormalized);
  py::class_<EvalOptions>(m, "EvalOptions")
      .def(py::init<>())
      .def_readwrite("formulation", &EvalOptions::formulation)
      .def_readwrite("forced_bits", &EvalOptions::forced_bits)
      .def_readwrite("residual_tol", &EvalOptions::residual_tol)
      .def_readwrite("max_bits", &EvalOptions::max_bits);
  py::class_<FieldSample>(m, "FieldSample")
      .def_readonly("x", &FieldSample::x)
      .def_readonly("times", &FieldSample::times)
      .def_readonly("psi", &FieldSample::psi)
      .def_readonly("used", &FieldSample::used)
      .def_readonly("bits", &FieldSample::bits)
      .def_readonly("residual", &FieldSample::residual)
      .def_readonly("ok", &FieldSample::ok)
      .def("__repr__", [](const FieldSample& s) {
        return "<FieldSample x=" + std::to_string(s.x) +
               " |psi|=" + std::to_string(std::abs(s.psi)) + ">";
      });
  py::class_<FieldGrid>(m, "FieldGrid")
      .def_readonly("pts", &FieldGrid::pts)
      .def_readonly("nx", &FieldGrid::nx)
      .def_readonly("nt", &FieldGrid::nt);
  m.def("recommended_bits", &recommended_bits, py::arg("spectrum"),
        py::arg("x"), py::arg("times"), py::arg("formulation") = Formulation::Auto);
  m.def("evaluate", &evaluate, py::arg("spectrum"), py::arg("x"),
        py::arg("times"), py::arg("options") = EvalOptions{},
        py::call_guard<py::gil_scoped_release>());
  m.def("evaluate_grid", &evaluate_grid, py::arg("spectrum"), py::arg("xs"),
        py::arg("time_list"), py::arg("options") = EvalOptions{},
        py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("mixture_times", &mixture_times, py::arg("a"), py::arg("t"));

  py::enum_<Flow>(m, "Flow")
      .value("NLS2", Flow::NLS2)
      .value("NLS3", Flow::NLS3)
      .value("Hirota", Flow::Hirota);
  py::class_<FlowSpec>(m, "FlowSpec")
      .def(py::init<>())
      .def_readwrite("kind", &FlowSpec::kind)
      .def_readwrite("a2", &FlowSpec::a2)
      .def_readwrite("a3", &FlowSpec::a3);
  m.def("pde_residual", &pde_residual, py::arg("spectrum"), py::arg("x"),
        py::arg("times"), py::arg("flow"), py::arg("h"),
        py::arg("options") = EvalOptions{},
        py::call_guard<py::gil_scoped_release>());

  // ---- focusing -----------------------------------------------------------
  py::class_<FocusEvent>(m, "FocusEvent")
      .def_readonly("K", &FocusEvent::K)
      .def_readonly("x0", &FocusEvent::x0)
      .def_readonly("t0", &FocusEvent::t0)
      .def_readonly("nu", &FocusEvent::nu)
      .def_readonly("M", &FocusEvent::M);
  py::class_<FlowMixture>(m, "FlowMixture")
      .def_readwrite("a", &FlowMixture::a)
      .def_readonly("alpha", &FlowMixture::alpha)
      .def_readonly("periodic", &FlowMixture::periodic)
      .def_readwrite("t_focus", &FlowMixture::t_focus);
  py::class_<PeakReport>(m, "PeakReport")
      .def_readonly("max_abs", &PeakReport::max_abs)
      .def_readonly("X_arg", &PeakReport::X_arg)
      .def_readonly("T_arg", &PeakReport::T_arg)
      .def_readonly("r", &PeakReport::r)
      .def_readonly("phase_center", &PeakReport::phase_center)
      .def_readonly("phase_error", &PeakReport::phase_error)
      .def_readonly("failures", &PeakReport::failures)
      .def_readonly("X", &PeakReport::X)
      .def_readonly("T", &PeakReport::T)
      .def_readonly("grid", &PeakReport::grid);
  m.def("nu", &nu, py::arg("family"));
  m.def("focus_point", &focus_point, py::arg("family"), py::arg("K"));
  m.def("mixture_coefficients", &mixture_coefficients, py::arg("family"),
        py::arg("K"), py::arg("alpha"));
  m.def("hirota_tuned_a3", &hirota_tuned_a3, py::arg("a2"), py::arg("xi"),
        py::arg("A_max"), py::arg("K"));
  m.def("lpd_tuned_a4", &lpd_tuned_a4, py::arg("a2"), py::arg("gamma"),
        py::arg("A_max"));
  m.def("peak_check", &peak_check, py::arg("spectrum"), py::arg("event"),
        py::arg("m"), py::arg("halfwidth") = 3.0, py::arg("grid") = 41,
        py::arg("threads") = 1, py::arg("options") = EvalOptions{},
        py::call_guard<py::gil_scoped_release>());
  m.def("peak_check_mixture", &peak_check_mixture, py::arg("spectrum"),
        py::arg("event"), py::arg("mixture"), py::arg("halfwidth") = 3.0,
        py::arg("grid") = 41, py::arg("threads") = 1,
        py::arg("options") = EvalOptions{},
        py::call_guard<py::gil_scoped_release>());

  // ---- convergence fits ---------------------------------------------------
  py::class_<FitSample>(m, "FitSample")
      .def(py::init<>())
      .def_readwrite("eps", &FitSample::eps)
      .def_readwrite("error", &FitSample::error);
  py::class_<FitReport>(m, "FitReport")
      .def_readonly("exponent", &FitReport::exponent)
      .def_readonly("prefactor", &FitReport::prefactor)
      .def_readonly("residual", &FitReport::residual)
      .def_readonly("samples", &FitReport::samples);
  py::class_<RegionSpec>(m, "RegionSpec")
      .def(py::init<>())
      .def_readwrite("lo", &RegionSpec::lo)
      .def_readwrite("hi", &RegionSpec::hi)
      .def_readwrite("two_sided", &RegionSpec::two_sided)
      .def_readwrite("points", &RegionSpec::points);
  m.def("fit_power_law", &fit_power_law, py::arg("samples"));
  m.def("converge_fit", &converge_fit, py::arg("family"), py::arg("Ns"),
        py::arg("region"), py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());

  // ---- dispersionless solutions -------------------------------------------
  py::class_<TalanovParams>(m, "TalanovParams")
      .def_readonly("E", &TalanovParams::E)
      .def_readonly("F", &TalanovParams::F)
      .def_readonly("w0", &TalanovParams::w0)
      .def_readonly("A_max", &TalanovParams::A_max)
      .def_readonly("t_collapse", &TalanovParams::t_collapse);
  py::class_<DispersionlessState>(m, "DispersionlessState")
      .def_readonly("rho", &DispersionlessState::rho)
      .def_readonly("mu", &DispersionlessState::mu);
  py::class_<CatastrophePoint>(m, "CatastrophePoint")
      .def_readonly("rho_c", &CatastrophePoint::rho_c)
      .def_readonly("t_c", &CatastrophePoint::t_c)
      .def_readonly("blowup", &CatastrophePoint::blowup);
  m.def("talanov_from_amplitude", &talanov_from_amplitude, py::arg("A_max"),
        py::arg("w0"));
  m.def("talanov_selfsimilar", &talanov_selfsimilar, py::arg("F"),
        py::arg("t_collapse"));
  m.def("width_solve", &width_solve, py::arg("params"), py::arg("t"));
  m.def("talanov_profile", &talanov_profile, py::arg("params"), py::arg("x"),
        py::arg("t"));
  m.def("talanov_duration", &talanov_duration, py::arg("params"));
  m.def("talanov_inverse_T", &talanov_inverse_T, py::arg("W"));
  m.def("ask_axis", &ask_axis, py::arg("A_max"), py::arg("t"));
  m.def("ask_solve", &ask_solve, py::arg("A_max"), py::arg("x"), py::arg("t"));
  m.def("interpolation_catastrophe", &interpolation_catastrophe,
        py::arg("delta"));

  // ---- acceptance ---------------------------------------------------------
  py::class_<CriterionResult>(m, "CriterionResult")
      .def_readonly("id", &CriterionResult::id)
      .def_readonly("name", &CriterionResult::name)
      .def_readonly("passed", &CriterionResult::pass)
      .def_readonly("detail", &CriterionResult::detail)
      .def_readonly("seconds", &CriterionResult::seconds)
      .def("__repr__", [](const CriterionResult& r) {
        return "<CriterionResult " + std::to_string(r.id) + " " +
               (r.pass ? "PASS" : "FAIL") + ">";
      });
  m.def("all_criteria", &all_criteria);
  m.def("run_criterion", &run_criterion, py::arg("id"),
        py::arg("seed") = 12345, py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("run_acceptance", &run_acceptance, py::arg("ids"),
        py::arg("seed") = 12345, py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());
}
