#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>

#include "zladder/errors.hpp"
#include "zladder/euler_kernel.hpp"
#include "zladder/experiments.hpp"
#include "zladder/ladder.hpp"
#include "zladder/moment.hpp"
#include "zladder/report.hpp"
#include "zladder/special_functions.hpp"

namespace py = pybind11;
using namespace zladder;
namespace sf = special_functions;
namespace ek = euler_kernel;

namespace {

sf::RSEvalConfig make_cfg(int corrections) {
  sf::RSEvalConfig cfg;
  cfg.n_corrections = corrections;
  cfg.validate();
  return cfg;
}

// Owns the checkpoint table the model points at, so lifetime is tied to
// the python object.
struct PyModel {
  moment::MomentCheckpointTable table;
  ladder::LadderModel m;
};

std::unique_ptr<PyModel> make_model(double t_max, const std::string& backend,
                                    double tol, double c0, int corrections) {
  auto p = std::make_unique<PyModel>();
  p->m.backend = moment::parse_backend(backend);
  p->m.tol = tol;
  p->m.c0 = c0;
  p->m.zcfg = make_cfg(corrections);
  if (p->m.backend == moment::Backend::quadrature) {
    p->table = moment::build_checkpoints(t_max, 1e-10, p->m.zcfg);
    p->m.table = &p->table;
  }
  return p;
}

ek::EulerKernel kernel_of(double a, double b) {
  ek::EulerKernel kr{a, b};
  kr.validate();
  return kr;
}

}  // namespace

PYBIND11_MODULE(_zladder, mod) {
  mod.doc() = "critical-line second-moment laboratory (compiled core)";

  py::register_exception<zladder::error>(mod, "Error");

  mod.def(
      "theta", [](double t) { return sf::theta(t); },
      py::arg("t"), "Riemann-Siegel theta function");
  mod.def(
      "z",
      [](double t, int corrections) {
        return sf::z_eval(t, make_cfg(corrections));
      },
      py::arg("t"), py::arg("corrections") = 1,
      "Z(t) via the hybrid Euler-Maclaurin / Riemann-Siegel evaluator");
  mod.def(
      "chi_mod", [](double t) { return sf::chi_mod(t); }, py::arg("t"),
      "|chi(1/2+it)| from the functional equation (identically 1)");
  mod.def(
      "prime_pi",
      [](double x, const std::string& mode) {
        if (mode == "exact")
          return sf::prime_pi(x, sf::PiMode::exact_sieve);
        if (mode == "logarithmic")
          return sf::prime_pi(x, sf::PiMode::logarithmic);
        throw parameter_error("mode must be exact or logarithmic");
      },
      py::arg("x"), py::arg("mode") = "exact", "prime counting function");

  mod.def(
      "closed_integral",
      [](double a, double b, long L, double U) {
        return ek::closed_integral(kernel_of(a, b), L, U);
      },
      py::arg("a"), py::arg("b"), py::arg("L"), py::arg("U"),
      "closed form of the reciprocal-kernel integral over [2*pi*L, 2*pi*L+U]");
  mod.def(
      "quad_integral",
      [](double a, double b, long L, double U, double tol) {
        return ek::quad_integral(kernel_of(a, b), L, U, tol);
      },
      py::arg("a"), py::arg("b"), py::arg("L"), py::arg("U"),
      py::arg("tol") = 1e-12, "same integral by adaptive quadrature");
  mod.def(
      "signal_factor",
      [](double a, double b, double U) {
        return ek::signal_factor(kernel_of(a, b), U);
      },
      py::arg("a"), py::arg("b"), py::arg("U"),
      "stationary signal factor a/(a+b) times the arctangent factor");
  mod.def(
      "arctan_factor",
      [](double a, double b, double U) {
        return ek::arctan_factor(kernel_of(a, b), U);
      },
      py::arg("a"), py::arg("b"), py::arg("U"));

  py::class_<PyModel>(mod, "Model",
                      "ladder model plus the checkpoint table it owns")
      .def(py::init(&make_model), py::arg("t_max") = 2000.0,
           py::arg("backend") = "quadrature", py::arg("tol") = 1e-9,
           py::arg("c0") = 0.0, py::arg("corrections") = 1)
      .def_property_readonly(
          "backend",
          [](const PyModel& p) { return moment::backend_name(p.m.backend); })
      .def_property_readonly("t_max",
                             [](const PyModel& p) {
                               return p.m.table ? p.m.table->t_max() : 0.0;
                             })
      .def(
          "hl", [](const PyModel& p, double T) { return ladder::hl(T, p.m); },
          py::arg("T"), "second-moment integral under the model backend")
      .def(
          "phi1",
          [](const PyModel& p, double T) { return ladder::phi1(T, p.m); },
          py::arg("T"), "inverse of the main term at the moment value")
      .def(
          "phi1_inverse",
          [](const PyModel& p, double x) {
            return ladder::phi1_inverse(x, p.m);
          },
          py::arg("x"))
      .def(
          "omega",
          [](const PyModel& p, double t) { return ladder::omega(t, p.m); },
          py::arg("t"), "derivative weight at phi1(t)")
      .def(
          "tilde_z_sq",
          [](const PyModel& p, double t) {
            return ladder::tilde_z_sq(t, p.m);
          },
          py::arg("t"), "Z(t)^2 normalized by the derivative weight")
      .def(
          "chain_json",
          [](const PyModel& p, long L, double U, int k) {
            return report::render_chain(ladder::reverse_chain(L, U, k, p.m),
                                        "json");
          },
          py::arg("L"), py::arg("U"), py::arg("k") = 1)
      .def(
          "theorem_json",
          [](const PyModel& p, long L, double U, int k, double a, double b) {
            const auto run =
                experiments::run_theorem(L, U, k, kernel_of(a, b), p.m);
            return report::theorem_to_json(run);
          },
          py::arg("L"), py::arg("U"), py::arg("k") = 1, py::arg("a") = 2.0,
          py::arg("b") = 1.0,
          "full factorization pipeline run, serialized as JSON");
}
