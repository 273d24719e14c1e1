#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "schottky/cli.hpp"

namespace py = pybind11;
using namespace schottky;
using schottky::cli::json;

namespace {

QuadForm quad_form(const std::string& matrix_json) {
  return cli::to_quad_form(cli::parse_matrix_text(matrix_json));
}

std::string characteristic_error(const std::string& s) {
  return "characteristic must look like \"1010|0110\", got \"" + s + "\"";
}

Characteristic parse_characteristic(const std::string& s) {
  if (s.size() != 9 || s[4] != '|') throw ValidationError(characteristic_error(s));
  try {
    return {parse_label(s.substr(0, 4)), parse_label(s.substr(5, 4))};
  } catch (const Error&) {
    throw ValidationError(characteristic_error(s));
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Genus 4 Schottky problem: tropical and classical decision and recovery";
  m.attr("__version__") = cli::kVersion;

  py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<NotPositiveDefinite>(m, "NotPositiveDefinite", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NotJacobianError>(m, "NotJacobianError", PyExc_RuntimeError);
  py::register_exception<InconsistencyError>(m, "InconsistencyError", PyExc_RuntimeError);
  py::register_exception<NoSingularityFound>(m, "NoSingularityFound", PyExc_RuntimeError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_RuntimeError);

  m.def(
      "decide_tropical",
      [](const std::string& matrix_json) { return cli::to_json(decide_tropical(quad_form(matrix_json))).dump(); },
      py::arg("matrix_json"));
  m.def(
      "recover_tropical",
      [](const std::string& matrix_json, bool basis) {
        return cli::to_json(recover_tropical(quad_form(matrix_json), basis)).dump();
      },
      py::arg("matrix_json"), py::arg("basis") = false);
  m.def(
      "trop_theta_constants",
      [](const std::string& matrix_json) {
        std::vector<std::string> out;
        for (const auto& r : trop_theta_constants(quad_form(matrix_json))) out.push_back(to_string(r));
        return out;
      },
      py::arg("matrix_json"));
  m.def(
      "vartheta_all",
      [](const std::string& matrix_json) {
        std::vector<std::string> out;
        for (const auto& r : vartheta_all(quad_form(matrix_json))) out.push_back(to_string(r));
        return out;
      },
      py::arg("matrix_json"));

  m.def(
      "theta",
      [](const std::string& characteristic, const CMatrix& tau, const CVector& z, double eps) {
        return theta(parse_characteristic(characteristic), RiemannMatrix(tau), z, eps);
      },
      py::arg("characteristic"), py::arg("tau"), py::arg("z"), py::arg("eps") = kDefaultThetaAccuracy);
  m.def(
      "decide_classical",
      [](const CMatrix& tau, double eps, double threshold) {
        return cli::to_json(decide_classical(RiemannMatrix(tau), eps, threshold)).dump();
      },
      py::arg("tau"), py::arg("eps") = kDefaultThetaAccuracy, py::arg("threshold") = kDefaultDecisionThreshold);
  m.def(
      "canonical_curve",
      [](const CMatrix& tau, std::uint64_t seed, int max_restarts, double value_tolerance) {
        SingularityOptions o;
        o.seed = seed;
        o.max_restarts = max_restarts;
        o.value_tolerance = value_tolerance;
        return cli::to_json(canonical_curve(RiemannMatrix(tau), o)).dump();
      },
      py::arg("tau"), py::arg("seed") = 1, py::arg("max_restarts") = 50, py::arg("value_tolerance") = 1e-7);
  m.def(
      "tritangent_planes",
      [](const CMatrix& tau, double eps) { return cli::to_json(tritangent_planes(RiemannMatrix(tau), eps)).dump(); },
      py::arg("tau"), py::arg("eps") = kDefaultThetaAccuracy);

  m.def(
      "verify_azygetic_lemma",
      [](std::size_t budget, const std::string& resume, unsigned threads) {
        LemmaReport r;
        {
          py::gil_scoped_release release;
          r = verify_azygetic_lemma(budget, resume, threads);
        }
        return cli::to_json(r).dump();
      },
      py::arg("budget") = 0, py::arg("resume") = "", py::arg("threads") = 1);
  m.def(
      "scan",
      [](const std::string& family_json, double eps, double threshold, unsigned threads) {
        auto family = cli::parse_family_text(family_json);
        cli::ScanOptions o;
        o.eps = eps;
        o.threshold = threshold;
        o.threads = threads;
        std::vector<cli::ScanRow> rows;
        {
          py::gil_scoped_release release;
          rows = cli::run_scan(family, o);
        }
        return cli::scan_csv(family, rows);
      },
      py::arg("family_json"), py::arg("eps") = kDefaultThetaAccuracy,
      py::arg("threshold") = kDefaultDecisionThreshold, py::arg("threads") = 1);
  m.def(
      "selftest",
      [](bool slow) { return cli::to_json(cli::run_selftest(slow)).dump(); }, py::arg("slow") = false);
}
