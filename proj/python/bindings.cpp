#include "levy/conditions.hpp"
#include "levy/duration.hpp"
#include "levy/errors.hpp"
#include "levy/harmonic.hpp"
#include "levy/resolvent.hpp"
#include "levy/stable.hpp"

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace levy;

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Potential theory of one-dimensional Levy processes";
  m.attr("__version__") = LEVY_HARMONIC_VERSION;

  py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericFailure>(m, "NumericFailure", PyExc_RuntimeError);

  py::class_<QuadratureSpec>(m, "QuadratureSpec")
    .def(py::init([](double rel_tol, double abs_tol, int max_subdivisions) {
           QuadratureSpec s;
           s.rel_tol = rel_tol;
           s.abs_tol = abs_tol;
           s.max_subdivisions = max_subdivisions;
           s.validate();
           return s;
         }),
         py::arg("rel_tol") = 1e-9, py::arg("abs_tol") = 1e-12, py::arg("max_subdivisions") = 10000)
    .def_readwrite("rel_tol", &QuadratureSpec::rel_tol)
    .def_readwrite("abs_tol", &QuadratureSpec::abs_tol)
    .def_readwrite("max_subdivisions", &QuadratureSpec::max_subdivisions);

  py::class_<QuadratureResult>(m, "QuadratureResult")
    .def_readonly("value", &QuadratureResult::value)
    .def_readonly("error_estimate", &QuadratureResult::error_estimate)
    .def_readonly("converged", &QuadratureResult::converged)
    .def("__float__", [](const QuadratureResult& r) { return r.value; })
    .def("__repr__", [](const QuadratureResult& r) {
      return "QuadratureResult(value=" + py::repr(py::float_(r.value)).cast<std::string>() +
             ", error_estimate=" + py::repr(py::float_(r.error_estimate)).cast<std::string>() +
             ", converged=" + (r.converged ? "True" : "False") + ")";
    });
  py::class_<H0Result, QuadratureResult>(m, "H0Result").def_readonly("by_parts", &H0Result::by_parts);

  py::class_<StableParams>(m, "StableParams")
    .def(py::init([](double alpha, double c_plus, double c_minus) {
           StableParams p{ alpha, c_plus, c_minus };
           p.validate();
           return p;
         }),
         py::arg("alpha") = 1.5, py::arg("c_plus") = 0.5, py::arg("c_minus") = 0.5)
    .def_static("from_skewness", &StableParams::from_skewness, py::arg("alpha"),
                py::arg("c_theta") = 1.0, py::arg("beta") = 0.0)
    .def_readonly("alpha", &StableParams::alpha)
    .def_readonly("c_plus", &StableParams::c_plus)
    .def_readonly("c_minus", &StableParams::c_minus)
    .def_property_readonly("beta", &StableParams::beta)
    .def_property_readonly("c_theta", &StableParams::c_theta)
    .def_property_readonly("c_omega", &StableParams::c_omega);

  py::class_<StableConstants>(m, "StableConstants")
    .def_readonly("alpha", &StableConstants::alpha)
    .def_readonly("c_theta", &StableConstants::c_theta)
    .def_readonly("beta", &StableConstants::beta)
    .def_readonly("c_omega", &StableConstants::c_omega)
    .def_readonly("s_alpha", &StableConstants::s_alpha)
    .def_readonly("c_port", &StableConstants::c_port)
    .def_readonly("c_int", &StableConstants::c_int)
    .def_readonly("c_int_plus", &StableConstants::c_int_plus)
    .def_readonly("tan_factor", &StableConstants::tan_factor)
    .def_readonly("c_p", &StableConstants::c_p)
    .def_readonly("c_r", &StableConstants::c_r)
    .def_readonly("c_p_closed", &StableConstants::c_p_closed)
    .def_readonly("c_r_closed", &StableConstants::c_r_closed)
    .def_readonly("c_one_sided", &StableConstants::c_one_sided);
  m.def("constants", &constants, py::arg("params"), py::arg("spec") = QuadratureSpec{});
  m.def("h0_closed", &h0_closed, py::arg("params"), py::arg("x"));
  m.def("rho_closed", &rho_closed, py::arg("params"), py::arg("t"));

  py::class_<LevyExponent>(m, "LevyExponent")
    .def(py::init([](RealFunction theta, RealFunction omega, std::optional<RealFunction> theta_prime,
                     std::optional<RealFunction> omega_prime, std::optional<double> alpha_hint,
                     std::string label) {
           LevyExponent::Parts p;
           p.theta = std::move(theta);
           p.omega = std::move(omega);
           if (theta_prime)
             p.theta_prime = std::move(*theta_prime);
           if (omega_prime)
             p.omega_prime = std::move(*omega_prime);
           p.alpha_hint = alpha_hint;
           p.label = std::move(label);
           return LevyExponent(std::move(p));
         }),
         py::arg("theta"), py::arg("omega"), py::arg("theta_prime") = py::none(),
         py::arg("omega_prime") = py::none(), py::arg("alpha_hint") = py::none(),
         py::arg("label") = "")
    .def("eval",
         [](const LevyExponent& e, double l) {
           const auto v = e.eval(l);
           return py::make_tuple(v.theta, v.omega);
         })
    .def("theta", &LevyExponent::theta)
    .def("omega", &LevyExponent::omega)
    .def_property_readonly("label", &LevyExponent::label)
    .def("growth_exponent", &LevyExponent::growth_exponent);
  m.def("from_stable", &from_stable, py::arg("params"));
  m.def("brownian", &brownian, py::arg("v") = 1.0);

  const QuadratureSpec d;
  m.def("transition_density", &transition_density, py::arg("exp"), py::arg("t"), py::arg("x"),
        py::arg("spec") = d);
  m.def("resolvent_density", &resolvent_density, py::arg("exp"), py::arg("q"), py::arg("x"),
        py::arg("spec") = d);
  m.def("h_q", &h_q, py::arg("exp"), py::arg("q"), py::arg("x"), py::arg("spec") = d);
  m.def(
    "h_0", [](const LevyExponent& e, double x, const QuadratureSpec& s) { return h_0(e, x, s); },
    py::arg("exp"), py::arg("x"), py::arg("spec") = d);
  m.def("h0_symmetric", &h0_symmetric, py::arg("exp"), py::arg("x"), py::arg("spec") = d);
  m.def("harmonicity_residual", &harmonicity_residual, py::arg("exp"), py::arg("h"),
        py::arg("growth"), py::arg("q"), py::arg("x"), py::arg("spec") = d,
        py::call_guard<py::gil_scoped_release>());
  m.def(
    "stable_harmonicity_residual",
    [](const StableParams& p, double q, double x, const QuadratureSpec& s) {
      return harmonicity_residual(from_stable(p), stable_h0_function(p, s), p.alpha - 1.0, q, x, s);
    },
    py::arg("params"), py::arg("q"), py::arg("x"), py::arg("spec") = d,
    py::call_guard<py::gil_scoped_release>());
  m.def("hp_identity_residual", &hp_identity_residual, py::arg("exp"), py::arg("q"), py::arg("p"),
        py::arg("x"), py::arg("spec") = d);

  py::class_<DensityResult>(m, "DensityResult")
    .def_readonly("value", &DensityResult::value)
    .def_readonly("error_estimate", &DensityResult::error_estimate)
    .def_readonly("converged", &DensityResult::converged)
    .def_readonly("negative", &DensityResult::negative);
  m.def(
    "duration_density",
    [](const LevyExponent& e, const std::vector<double>& ts, const QuadratureSpec& s) {
      const PhiProfile profile(e, s);
      std::vector<DensityResult> out;
      for (double t : ts)
        out.push_back(duration_density(profile, t, s));
      return out;
    },
    py::arg("exp"), py::arg("ts"), py::arg("spec") = d, py::call_guard<py::gil_scoped_release>());
  m.def(
    "phi", [](const LevyExponent& e, double x, const QuadratureSpec& s) { return phi(e, x, s).value; },
    py::arg("exp"), py::arg("x"), py::arg("spec") = d);
  m.def(
    "kappa",
    [](const LevyExponent& e, const QuadratureSpec& s) {
      const auto k = kappa(e, s);
      return py::make_tuple(k.value, k.stable, k.diagnostic);
    },
    py::arg("exp"), py::arg("spec") = d);

  py::enum_<Verdict>(m, "Verdict")
    .value("holds", Verdict::holds)
    .value("fails", Verdict::fails)
    .value("inconclusive", Verdict::inconclusive);
  py::class_<Evidence>(m, "Evidence")
    .def_readonly("quantity", &Evidence::quantity)
    .def_readonly("value", &Evidence::value)
    .def_readonly("threshold", &Evidence::threshold)
    .def_readonly("within", &Evidence::within);
  py::class_<ConditionReport>(m, "ConditionReport")
    .def_property_readonly("condition_id",
                           [](const ConditionReport& r) { return to_string(r.condition_id); })
    .def_readonly("verdict", &ConditionReport::verdict)
    .def_readonly("evidence", &ConditionReport::evidence)
    .def_readonly("notes", &ConditionReport::notes)
    .def("holds", &ConditionReport::holds);

  py::class_<ALBounds>(m, "ALBounds")
    .def(py::init([](double alpha, double uct, double oct, double ucw, double ocw) {
           ALBounds b{ alpha, uct, oct, ucw, ocw };
           b.validate();
           return b;
         }),
         py::arg("alpha"), py::arg("under_c_theta"), py::arg("over_c_theta"),
         py::arg("under_c_omega"), py::arg("over_c_omega"))
    .def_static("tight", &ALBounds::tight)
    .def("condition_iii", &ALBounds::condition_iii)
    .def("upper_constant", &ALBounds::upper_constant)
    .def("lower_constant", &ALBounds::lower_constant);

  m.def("check_L1prime", &check_L1prime, py::arg("exp"), py::arg("q") = 1.0, py::arg("spec") = d);
  m.def("check_L3", &check_L3, py::arg("exp"), py::arg("spec") = d);
  m.def(
    "check_theta_lemma",
    [](const LevyExponent& e, const QuadratureSpec& s) {
      const auto r = check_theta_lemma(e, s);
      return py::make_tuple(r.i, r.ii, r.iii);
    },
    py::arg("exp"), py::arg("spec") = d);
  m.def("check_AL", &check_AL, py::arg("bounds"), py::arg("exp"), py::arg("spec") = d);
  m.def("check_LA_rho_bounds", &check_LA_rho_bounds, py::arg("bounds"), py::arg("exp"));
  m.def(
    "check_L2_stable",
    [](double alpha, double c_plus, double c_minus) {
      return check_L2(stable_triplet(alpha, c_plus, c_minus));
    },
    py::arg("alpha"), py::arg("c_plus"), py::arg("c_minus"));

  auto syn = m.def_submodule("synthetic", "Exponents that violate the regularity conditions");
  syn.def("bounded_theta", &synthetic::bounded_theta);
  syn.def("log_theta", &synthetic::log_theta);
}
