// bindings.cpp — Python module exposing the main pipeline operations.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lzsm/analytic.hpp"
#include "lzsm/config.hpp"
#include "lzsm/floquet.hpp"
#include "lzsm/io.hpp"
#include "lzsm/model.hpp"
#include "lzsm/spectra.hpp"

namespace py = pybind11;
using namespace lzsm;

PYBIND11_MODULE(lzsm, m) {
  m.doc() =
      "Driven-qubit interference toolkit: Floquet + Bloch-Redfield steady "
      "states, interference patterns, 2D Fourier analysis, arc prediction";

  py::class_<model::Harmonic>(m, "Harmonic")
      .def(py::init([](int k, double a, double b) {
             return model::Harmonic{k, a, b};
           }),
           py::arg("k"), py::arg("a"), py::arg("b") = 0.0)
      .def_readwrite("k", &model::Harmonic::k)
      .def_readwrite("a", &model::Harmonic::a)
      .def_readwrite("b", &model::Harmonic::b);

  py::class_<model::DrivingShape>(m, "DrivingShape")
      .def(py::init<std::vector<model::Harmonic>, double, int>(),
           py::arg("harmonics"), py::arg("omega") = 1.0,
           py::arg("max_index") = 16)
      .def_static("preset", &model::DrivingShape::preset, py::arg("name"),
                  py::arg("omega") = 1.0)
      .def_static("is_preset", &model::DrivingShape::is_preset)
      .def_property_readonly("omega", &model::DrivingShape::omega)
      .def_property_readonly("period", &model::DrivingShape::period)
      .def_property_readonly("harmonics", &model::DrivingShape::harmonics)
      .def("symmetric", &model::DrivingShape::symmetric)
      .def("antisymmetric", &model::DrivingShape::antisymmetric)
      .def("shifted", &model::DrivingShape::shifted, py::arg("t0"))
      .def("__call__",
           [](const model::DrivingShape& s, double t) {
             return model::evaluate_driving(s, t);
           })
      .def("integral",
           [](const model::DrivingShape& s, double t) {
             return model::driving_integral(s, t);
           })
      .def("derivative", [](const model::DrivingShape& s, double t) {
        return model::driving_derivative(s, t);
      });

  py::class_<model::QubitParams>(m, "QubitParams")
      .def(py::init([](double eps0, double delta, double amplitude) {
             return model::QubitParams{eps0, delta, amplitude};
           }),
           py::arg("eps0"), py::arg("delta"), py::arg("amplitude"))
      .def_readwrite("eps0", &model::QubitParams::eps0)
      .def_readwrite("delta", &model::QubitParams::delta)
      .def_readwrite("amplitude", &model::QubitParams::amplitude);

  py::class_<model::BathParams>(m, "BathParams")
      .def(py::init([](double alpha, double beta, double theta) {
             return model::BathParams{alpha, beta, theta};
           }),
           py::arg("alpha") = 1e-3, py::arg("beta") = 10.0,
           py::arg("theta") = 0.0)
      .def_readwrite("alpha", &model::BathParams::alpha)
      .def_readwrite("beta", &model::BathParams::beta)
      .def_readwrite("theta", &model::BathParams::theta);

  py::class_<spectra::SolverOptions>(m, "SolverOptions")
      .def(py::init<>())
      .def_readwrite("tol", &spectra::SolverOptions::tol)
      .def_readwrite("M", &spectra::SolverOptions::M)
      .def_readwrite("K_modes", &spectra::SolverOptions::K_modes)
      .def_readwrite("K_X", &spectra::SolverOptions::K_X)
      .def_readwrite("K", &spectra::SolverOptions::K)
      .def_readwrite("workers", &spectra::SolverOptions::workers);

  py::class_<spectra::PointResult>(m, "PointResult")
      .def_readonly("population", &spectra::PointResult::population)
      .def_readonly("residual", &spectra::PointResult::residual)
      .def_readonly("cond_estimate", &spectra::PointResult::cond_estimate)
      .def_readonly("trace_defect", &spectra::PointResult::trace_defect)
      .def_readonly("min_eigenvalue", &spectra::PointResult::min_eigenvalue)
      .def_readonly("near_degenerate", &spectra::PointResult::near_degenerate)
      .def_readonly("quasienergy", &spectra::PointResult::quasienergy);

  py::class_<spectra::PatternGrid>(m, "PatternGrid")
      .def(py::init<>())
      .def_readwrite("eps_axis", &spectra::PatternGrid::eps_axis)
      .def_readwrite("A_axis", &spectra::PatternGrid::A_axis)
      .def_readwrite("values", &spectra::PatternGrid::values)
      .def_readwrite("provenance", &spectra::PatternGrid::provenance)
      .def_readwrite("failed_points", &spectra::PatternGrid::failed_points)
      .def("validate", &spectra::PatternGrid::validate);

  py::class_<spectra::SpectrumGrid>(m, "SpectrumGrid")
      .def_readonly("tau_eps_axis", &spectra::SpectrumGrid::tau_eps_axis)
      .def_readonly("tau_A_axis", &spectra::SpectrumGrid::tau_A_axis)
      .def_readonly("values", &spectra::SpectrumGrid::values)
      .def_readonly("pad", &spectra::SpectrumGrid::pad)
      .def_readonly("mean_removed", &spectra::SpectrumGrid::mean_removed)
      .def_readonly("provenance", &spectra::SpectrumGrid::provenance);

  py::class_<analytic::ArcCurve>(m, "ArcCurve")
      .def(py::init<>())
      .def_readwrite("id", &analytic::ArcCurve::id)
      .def_readwrite("samples", &analytic::ArcCurve::samples)
      .def_readwrite("root_times", &analytic::ArcCurve::root_times);

  py::class_<spectra::ArcProfile>(m, "ArcProfile")
      .def_readonly("tau_eps", &spectra::ArcProfile::tau_eps)
      .def_readonly("amplitude", &spectra::ArcProfile::amplitude)
      .def_readonly("dropped", &spectra::ArcProfile::dropped);

  py::class_<spectra::DecayFit>(m, "DecayFit")
      .def_readonly("lambda_", &spectra::DecayFit::lambda)
      .def_readonly("intercept", &spectra::DecayFit::intercept)
      .def_readonly("window_lo", &spectra::DecayFit::window_lo)
      .def_readonly("window_hi", &spectra::DecayFit::window_hi)
      .def_readonly("residual_rms", &spectra::DecayFit::residual_rms)
      .def_readonly("uncertainty", &spectra::DecayFit::uncertainty);

  py::class_<analytic::BlochVector>(m, "BlochVector")
      .def_readonly("x", &analytic::BlochVector::x)
      .def_readonly("y", &analytic::BlochVector::y)
      .def_readonly("z", &analytic::BlochVector::z)
      .def("norm", &analytic::BlochVector::norm);

  py::class_<analytic::BlochSteady>(m, "BlochSteady")
      .def_readonly("s", &analytic::BlochSteady::s)
      .def_readonly("population", &analytic::BlochSteady::population);

  m.def("quasienergies",
        [](const model::QubitParams& q, const model::DrivingShape& shape,
           double tol, int M, int K_modes) {
          const auto sol = floquet::floquet_solve(q, shape, tol, M, K_modes);
          return py::make_tuple(sol.quasienergy[0], sol.quasienergy[1],
                                sol.near_degenerate);
        },
        py::arg("q"), py::arg("shape"), py::arg("tol") = 1e-10,
        py::arg("M") = 512, py::arg("K_modes") = 64);

  m.def("solve_point", &spectra::solve_point, py::arg("q"), py::arg("shape"),
        py::arg("bath"), py::arg("opts") = spectra::SolverOptions{},
        py::call_guard<py::gil_scoped_release>());

  m.def("sweep_pattern", &spectra::sweep_pattern, py::arg("q_template"),
        py::arg("shape"), py::arg("bath"), py::arg("eps_axis"),
        py::arg("A_axis"), py::arg("opts") = spectra::SolverOptions{},
        py::arg("provenance") = std::string{},
        py::call_guard<py::gil_scoped_release>());

  m.def("fourier2d", &spectra::fourier2d, py::arg("pattern"),
        py::arg("pad") = 2, py::arg("subtract_mean") = true);
  m.def("inverse_fourier2d", &spectra::inverse_fourier2d, py::arg("spectrum"));
  m.def("sample_arc", &spectra::sample_arc, py::arg("spectrum"),
        py::arg("curve"));
  m.def("fit_decay",
        py::overload_cast<const spectra::ArcProfile&, double, double>(
            &spectra::fit_decay),
        py::arg("profile"), py::arg("window_lo"), py::arg("window_hi"));
  m.def("default_decay_window", &spectra::default_decay_window,
        py::arg("period"));
  m.def("pattern_overlap", &spectra::pattern_overlap, py::arg("a"),
        py::arg("b"), py::arg("subtract_mean") = false);
  m.def("ridge_near", &spectra::ridge_near, py::arg("spectrum"),
        py::arg("tau_eps"), py::arg("tau_A_guess"), py::arg("halfwidth"));

  py::enum_<analytic::Coupling>(m, "Coupling")
      .value("transverse", analytic::Coupling::transverse)
      .value("longitudinal", analytic::Coupling::longitudinal);

  m.def("delta_n", &analytic::delta_n, py::arg("q"), py::arg("shape"),
        py::arg("n"), py::arg("M") = 512);
  m.def("delta_n_range", &analytic::delta_n_range, py::arg("q"),
        py::arg("shape"), py::arg("n_max"), py::arg("M") = 512);
  m.def("bloch_steady_transverse", &analytic::bloch_steady_transverse,
        py::arg("detuning"), py::arg("delta_n"), py::arg("gamma"));
  m.def("bloch_steady_longitudinal", &analytic::bloch_steady_longitudinal,
        py::arg("detuning"), py::arg("delta_n"), py::arg("gamma"));
  m.def("peak_transverse", &analytic::peak_transverse, py::arg("detuning"),
        py::arg("delta_n"), py::arg("gamma"));
  m.def("peak_longitudinal", &analytic::peak_longitudinal, py::arg("detuning"),
        py::arg("delta_n"), py::arg("gamma"));
  m.def("background", &analytic::background, py::arg("q"));
  m.def("analytic_pattern", &analytic::analytic_pattern, py::arg("eps_axis"),
        py::arg("A_axis"), py::arg("delta_tunnel"), py::arg("shape"),
        py::arg("gamma"), py::arg("coupling"), py::arg("n_max"),
        py::arg("include_background") = false);
  m.def("fit_gamma", &analytic::fit_gamma, py::arg("eps0"), py::arg("P"),
        py::arg("delta_tunnel"), py::arg("shape"), py::arg("amplitude"),
        py::arg("n_max"));
  m.def("golden_rule_rates",
        [](double E, const model::BathParams& bath) {
          const auto r = analytic::golden_rule_rates(E, bath);
          return py::make_tuple(r.gamma, r.gamma_phi);
        },
        py::arg("E"), py::arg("bath"));
  m.def("arc_generic", &analytic::arc_generic, py::arg("shape"),
        py::arg("tau_eps"));
  m.def("arc_higher_order", &analytic::arc_higher_order, py::arg("shape"),
        py::arg("tau_eps"), py::arg("k"), py::arg("kp"));
  m.def("arc_full", &analytic::arc_full, py::arg("shape"),
        py::arg("tau_eps_grid"), py::arg("scan_points") = 4096);
  m.def("overdamped_spectrum", &analytic::overdamped_spectrum,
        py::arg("shape"), py::arg("tau_eps"), py::arg("tau_A_grid"));

  m.def("write_pattern", &io::write_pattern, py::arg("path"), py::arg("grid"));
  m.def("read_pattern", &io::read_pattern, py::arg("path"));
  m.def("write_spectrum", &io::write_spectrum, py::arg("path"),
        py::arg("spectrum"));
  m.def("read_spectrum", &io::read_spectrum, py::arg("path"));
}
