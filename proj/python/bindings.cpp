// Python extension module. Mirrors the command line surface: instance
// generation, constant estimation, the solver, and the audit suites.
// Estimates and reports cross the boundary as JSON strings; the package
// __init__ decodes them into dicts.

#include "proxcert/certificates.hpp"
#include "proxcert/errors.hpp"
#include "proxcert/instances.hpp"
#include "proxcert/io.hpp"
#include "proxcert/solver.hpp"
#include "proxcert/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;

namespace {

using namespace proxcert;

Vector to_vector(const std::vector<double>& x) {
  Vector out(static_cast<int>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) out[static_cast<int>(i)] = x[i];
  return out;
}

std::vector<double> from_vector(const Vector& x) {
  return std::vector<double>(x.data(), x.data() + x.size());
}

double resolve_gamma(const std::optional<double>& gamma, const CompositeProblem& p) {
  return gamma.has_value() ? *gamma : p.gamma_auto();
}

double resolve_omega(const std::optional<double>& omega) {
  return omega.has_value() ? *omega : kInf;
}

Vector resolve_x0(const std::optional<std::vector<double>>& x0,
                  const CompositeProblem& p) {
  return x0.has_value() ? to_vector(*x0) : Vector(Vector::Zero(p.dimension()));
}

}  // namespace

PYBIND11_MODULE(_proxcert, m) {
  m.doc() = "Sampling-based certificates for composite convex problems";

  const py::exception<Error> base(m, "Error");
  py::register_exception<InputError>(m, "InputError", base);
  py::register_exception<ModelError>(m, "ModelError", base);
  py::register_exception<NumericalError>(m, "NumericalError", base);
  py::register_exception<GenerationError>(m, "GenerationError", base);
  py::register_exception<SamplingError>(m, "SamplingError", base);

  py::class_<CompositeProblem>(m, "Problem")
      .def_readonly("family", &CompositeProblem::family)
      .def_readonly("seed", &CompositeProblem::seed)
      .def_readonly("phi_star", &CompositeProblem::phi_star)
      .def_property_readonly("dimension", &CompositeProblem::dimension)
      .def("objective",
           [](const CompositeProblem& p, const std::vector<double>& x) {
             return p.objective(to_vector(x));
           },
           py::arg("x"))
      .def("gradient",
           [](const CompositeProblem& p, const std::vector<double>& x) {
             return from_vector(p.f.gradient(to_vector(x)));
           },
           py::arg("x"))
      .def("distance",
           [](const CompositeProblem& p, const std::vector<double>& x) {
             return distance_to_solution_set(p, to_vector(x)).dist;
           },
           py::arg("x"))
      .def("gamma_auto", &CompositeProblem::gamma_auto)
      .def("to_json",
           [](const CompositeProblem& p) { return problem_to_json(p); })
      .def("__repr__", [](const CompositeProblem& p) {
        return "<Problem family='" + p.family + "' n=" +
               std::to_string(p.dimension()) + ">";
      });

  m.def("families", [] { return instance_families(); },
        "Names of the built-in problem families");

  m.def("make",
        [](const std::string& family, std::uint64_t seed, int n, int mm, int k) {
          return make_instance(family, seed, {n, mm, k});
        },
        py::arg("family"), py::arg("seed") = 0, py::arg("n") = 0,
        py::arg("m") = 0, py::arg("k") = 0,
        "Generate a problem instance (size 0 keeps the family default)");

  m.def("problem_from_json",
        [](const std::string& text) { return problem_from_json(text); },
        py::arg("text"));
  m.def("load_problem",
        [](const std::string& path) { return load_problem(path); },
        py::arg("path"));
  m.def("save_problem",
        [](const CompositeProblem& p, const std::string& path) {
          save_problem(p, path);
        },
        py::arg("problem"), py::arg("path"));

  m.def("estimate",
        [](const CompositeProblem& p, const std::string& property,
           const std::string& variant, const std::optional<double>& gamma,
           const std::optional<double>& omega, int samples, std::uint64_t seed) {
          const Variant v = variant == "auto" ? variant_for_problem(p)
                                              : variant_from_string(variant);
          return estimate_to_json(estimate_constant(
              p, property_from_string(property), v, resolve_gamma(gamma, p),
              resolve_omega(omega), samples, seed));
        },
        py::arg("problem"), py::arg("property"), py::arg("variant") = "auto",
        py::arg("gamma") = py::none(), py::arg("omega") = py::none(),
        py::arg("samples") = 10000, py::arg("seed") = 0,
        "Estimate a property constant; returns the result as a JSON string");

  m.def("solve",
        [](const CompositeProblem& p, const std::optional<double>& gamma,
           long long iters, double tol,
           const std::optional<std::vector<double>>& x0) {
          const SolverTrace trace =
              run(p, resolve_x0(x0, p), resolve_gamma(gamma, p), iters, tol);
          std::vector<long long> k;
          std::vector<double> phi, dist, gmap_norm;
          for (const TraceRecord& rec : trace.records) {
            k.push_back(rec.k);
            phi.push_back(rec.phi);
            dist.push_back(rec.dist);
            gmap_norm.push_back(rec.gmap_norm);
          }
          py::dict out;
          out["k"] = k;
          out["phi"] = phi;
          out["dist"] = dist;
          out["gmap_norm"] = gmap_norm;
          out["converged"] = trace.converged();
          out["iterations"] = trace.iterations();
          out["proxy_distances"] = trace.proxy_distances;
          return out;
        },
        py::arg("problem"), py::arg("gamma") = py::none(),
        py::arg("iters") = 500, py::arg("tol") = 0.0,
        py::arg("x0") = py::none(),
        "Run the fixed-step proximal gradient method; returns the trace");

  m.def("verify",
        [](const CompositeProblem& p, const std::string& suite,
           const std::optional<double>& gamma, const std::optional<double>& omega,
           int samples, long long iters, double tol, std::uint64_t seed,
           const std::optional<std::vector<double>>& x0) {
          const double g = resolve_gamma(gamma, p);
          const double w = resolve_omega(omega);
          Report report;
          if (suite == "pointwise") {
            report = verify_pointwise(p, g, samples, seed);
          } else if (suite == "chain") {
            report = verify_chain(p, g, w, samples, seed);
          } else if (suite == "rates") {
            RatesConfig cfg;
            cfg.gamma = g;
            cfg.omega = w;
            cfg.iters = iters;
            cfg.tol = tol;
            cfg.samples = samples;
            cfg.seed = seed;
            if (x0.has_value()) cfg.x0 = to_vector(*x0);
            report = verify_rates(p, cfg);
          } else if (suite == "case-study") {
            report = verify_case_study(p, g, samples, seed);
          } else {
            throw InputError("verify: unknown suite '" + suite + "'");
          }
          return report_to_json(report);
        },
        py::arg("problem"), py::arg("suite"), py::arg("gamma") = py::none(),
        py::arg("omega") = py::none(), py::arg("samples") = 10000,
        py::arg("iters") = 500, py::arg("tol") = 0.0, py::arg("seed") = 0,
        py::arg("x0") = py::none(),
        "Run an audit suite; returns the report as a JSON string");
}
