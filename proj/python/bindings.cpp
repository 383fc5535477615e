// Copyright 2026 The fdsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fdsim/beamforming.hpp"
#include "fdsim/closedform.hpp"
#include "fdsim/error.hpp"
#include "fdsim/mc_engine.hpp"
#include "fdsim/stats.hpp"

namespace py = pybind11;
using namespace fdsim;

namespace {

using PyMatrix = Eigen::MatrixXcd;

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

ExperimentConfig make_config(int M, int N, int K, double mu, double nu,
                             std::int64_t trials, std::uint64_t seed,
                             SimulationMode mode) {
  ExperimentConfig cfg;
  cfg.geometry = {1, K, M, N};
  cfg.si_spec = RicianSpec(mu, nu);
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.mode = mode;
  return cfg;
}

py::dict report_dict(const McReport& r) {
  py::dict d;
  d["samples"] = to_array(r.samples);
  d["emp_m1"] = r.emp_m1;
  d["emp_m2"] = r.emp_m2;
  d["emp_var"] = r.emp_var;
  d["cf_m1"] = r.closed_form.m1;
  d["cf_m2"] = r.closed_form.m2;
  d["cf_var"] = r.closed_form.var;
  d["shape"] = r.gamma.shape;
  d["scale"] = r.gamma.scale;
  d["ks"] = r.gof.ks_statistic;
  d["singular_redraws"] = r.singular_redraws;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Residual self-interference statistics for full-duplex MU-MIMO";

  py::register_exception<InvalidParameter>(m, "InvalidParameter",
                                           PyExc_ValueError);
  py::register_exception<SingularChannel>(m, "SingularChannel",
                                          PyExc_ArithmeticError);

  py::class_<RicianSpec>(m, "RicianSpec")
      .def(py::init<double, double>(), py::arg("mu"), py::arg("nu"))
      .def_static("rayleigh", &RicianSpec::rayleigh)
      .def_static("from_factor", &RicianSpec::from_factor, py::arg("varpi"),
                  py::arg("omega"))
      .def_property_readonly("mu", &RicianSpec::mu)
      .def_property_readonly("nu", &RicianSpec::nu)
      .def_property_readonly("rician_factor", &RicianSpec::rician_factor)
      .def_property_readonly("fading_power", &RicianSpec::fading_power)
      .def("__repr__", [](const RicianSpec& s) {
        return "RicianSpec(mu=" + std::to_string(s.mu()) +
               ", nu=" + std::to_string(s.nu()) + ")";
      });

  py::class_<SystemGeometry>(m, "SystemGeometry")
      .def(py::init([](int cells, int users, int tx, int rx) {
             SystemGeometry g{cells, users, tx, rx};
             g.validate();
             return g;
           }),
           py::arg("cells"), py::arg("users"), py::arg("tx_antennas"),
           py::arg("rx_antennas"))
      .def_readonly("cells", &SystemGeometry::cells)
      .def_readonly("users", &SystemGeometry::users)
      .def_readonly("tx_antennas", &SystemGeometry::tx_antennas)
      .def_readonly("rx_antennas", &SystemGeometry::rx_antennas);

  py::class_<GammaParams>(m, "GammaParams")
      .def_readonly("shape", &GammaParams::shape)
      .def_readonly("scale", &GammaParams::scale)
      .def("mean", &GammaParams::mean)
      .def("variance", &GammaParams::variance);

  py::class_<MomentSet>(m, "MomentSet")
      .def_readonly("m1", &MomentSet::m1)
      .def_readonly("m2", &MomentSet::m2)
      .def_readonly("var", &MomentSet::var);

  py::enum_<SpecialCase>(m, "SpecialCase")
      .value("SINGLE_USER", SpecialCase::SingleUser)
      .value("RAYLEIGH_CHANNEL", SpecialCase::RayleighChannel)
      .value("MASSIVE_MIMO", SpecialCase::MassiveMimo);

  m.def("rician_from_factor", &rician_from_factor, py::arg("varpi"),
        py::arg("omega"));
  m.def("gamma_siso", &gamma_siso, py::arg("spec"));
  m.def("gamma_mimo", &gamma_mimo, py::arg("geometry"), py::arg("spec"));
  m.def("gamma_special", &gamma_special, py::arg("case"), py::arg("geometry"),
        py::arg("spec"));
  m.def("moment1", &moment1, py::arg("users"), py::arg("spec"));
  m.def("moment2", &moment2, py::arg("geometry"), py::arg("spec"));
  m.def("si_variance", &si_variance, py::arg("geometry"), py::arg("spec"));
  m.def("si_moments", &si_moments, py::arg("geometry"), py::arg("spec"));
  m.def("moment_match", &moment_match, py::arg("m1"), py::arg("var"));

  m.def(
      "zf_precoder",
      [](const PyMatrix& h) { return PyMatrix(zf_precoder(ComplexMatrix(h))); },
      py::arg("h_down"));
  m.def(
      "zf_decoder",
      [](const PyMatrix& h) { return PyMatrix(zf_decoder(ComplexMatrix(h))); },
      py::arg("h_up"));
  m.def(
      "residual_si_gain",
      [](const PyMatrix& w, const PyMatrix& h, const PyMatrix& v) {
        return residual_si_gain(ComplexMatrix(w), ComplexMatrix(h),
                                ComplexMatrix(v));
      },
      py::arg("w_row"), py::arg("h_si"), py::arg("precoder"));

  m.def("si_pdf_siso", &si_pdf_siso, py::arg("x"), py::arg("varpi"),
        py::arg("omega"));
  m.def("gamma_pdf", &gamma_pdf, py::arg("x"), py::arg("params"));
  m.def("gamma_cdf", &gamma_cdf, py::arg("x"), py::arg("params"));
  m.def(
      "ks_distance_gamma",
      [](const std::vector<double>& x, const GammaParams& p) {
        return ks_distance(x, [&](double t) { return gamma_cdf(t, p); });
      },
      py::arg("samples"), py::arg("params"));

  m.def(
      "run_si_empirical",
      [](int M, int N, int K, double mu, double nu, std::int64_t trials,
         std::uint64_t seed, unsigned threads) {
        const auto cfg =
            make_config(M, N, K, mu, nu, trials, seed, SimulationMode::Empirical);
        McReport r;
        {
          py::gil_scoped_release release;
          r = run_si_empirical(cfg, {threads});
        }
        return report_dict(r);
      },
      py::arg("M"), py::arg("N"), py::arg("K"), py::arg("mu"), py::arg("nu"),
      py::arg("trials"), py::arg("seed") = 1, py::arg("threads") = 0);
  m.def(
      "run_si_theoretical",
      [](int M, int N, int K, double mu, double nu, std::int64_t trials,
         std::uint64_t seed, unsigned threads) {
        const auto cfg = make_config(M, N, K, mu, nu, trials, seed,
                                     SimulationMode::Theoretical);
        McReport r;
        {
          py::gil_scoped_release release;
          r = run_si_theoretical(cfg, {threads});
        }
        return report_dict(r);
      },
      py::arg("M"), py::arg("N"), py::arg("K"), py::arg("mu"), py::arg("nu"),
      py::arg("trials"), py::arg("seed") = 1, py::arg("threads") = 0);
}
