// Command line front end: generate instances, estimate property constants,
// run the solver, and audit guarantees. Reruns with equal arguments produce
// byte-identical output.
//
// Exit codes: 0 success (and passing verify reports), 1 verify report with
// violations, 2 usage or runtime errors.

#include "proxcert/certificates.hpp"
#include "proxcert/errors.hpp"
#include "proxcert/instances.hpp"
#include "proxcert/io.hpp"
#include "proxcert/solver.hpp"
#include "proxcert/verify.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace proxcert;

double parse_real(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0')
    throw InputError("invalid " + what + " '" + text + "'");
  return v;
}

double resolve_gamma(const std::string& text, const CompositeProblem& p) {
  if (text == "auto") return p.gamma_auto();
  return parse_real(text, "step scale");
}

double resolve_omega(const std::string& text) {
  if (text == "inf") return kInf;
  return parse_real(text, "sublevel width");
}

Vector parse_x0(const std::string& text) {
  std::vector<double> vals;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    vals.push_back(parse_real(text.substr(pos, end - pos), "start point entry"));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  Vector x(static_cast<int>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) x[static_cast<int>(i)] = vals[i];
  return x;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

struct CommonOpts {
  std::string problem_path;
  std::string gamma = "auto";
  std::string omega = "inf";
  std::string out;
  int samples = 10000;
  std::uint64_t seed = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling-based certificates for composite convex problems"};
  app.require_subcommand(1);

  std::string pg_family;
  std::uint64_t pg_seed = 0;
  int pg_n = 0, pg_m = 0, pg_k = 0;
  std::string pg_out;
  CLI::App* probgen = app.add_subcommand("probgen", "Generate a problem instance");
  probgen->add_option("--family", pg_family, "Instance family name")->required();
  probgen->add_option("--seed", pg_seed, "Generation seed");
  probgen->add_option("--n", pg_n, "Variable count (0 keeps the family default)");
  probgen->add_option("--m", pg_m, "Composition rows (0 keeps the family default)");
  probgen->add_option("--k", pg_k, "Constraint rows (0 keeps the family default)");
  probgen->add_option("--out", pg_out, "Output path (stdout when absent)");

  CommonOpts est;
  std::string est_property = "qg";
  std::string est_variant = "auto";
  CLI::App* estimate = app.add_subcommand("estimate", "Estimate a property constant");
  estimate->add_option("--problem", est.problem_path, "Problem JSON path")->required();
  estimate->add_option("--property", est_property, "qg, geb, or rsc");
  estimate->add_option("--variant", est_variant,
                       "original, modified, extended, or auto");
  estimate->add_option("--gamma", est.gamma, "Step scale, or auto");
  estimate->add_option("--omega", est.omega, "Sublevel width, or inf");
  estimate->add_option("--samples", est.samples, "Sample count");
  estimate->add_option("--seed", est.seed, "Sampling seed");
  estimate->add_option("--out", est.out, "Output path (stdout when absent)");

  std::string sv_problem, sv_gamma = "auto", sv_x0, sv_out;
  long long sv_iters = 500;
  double sv_tol = 0.0;
  CLI::App* solve = app.add_subcommand("solve", "Run the proximal gradient solver");
  solve->add_option("--problem", sv_problem, "Problem JSON path")->required();
  solve->add_option("--gamma", sv_gamma, "Step scale, or auto");
  solve->add_option("--iters", sv_iters, "Iteration cap");
  solve->add_option("--tol", sv_tol, "Stop when the mapping norm falls below this");
  solve->add_option("--x0", sv_x0, "Comma-separated start point (default: origin)");
  solve->add_option("--out", sv_out, "Trace CSV path (stdout when absent)");

  CommonOpts vf;
  std::string vf_suite, vf_x0;
  long long vf_iters = 500;
  double vf_tol = 0.0;
  CLI::App* verify = app.add_subcommand("verify", "Audit a guarantee suite");
  verify->add_option("--problem", vf.problem_path, "Problem JSON path")->required();
  verify->add_option("--suite", vf_suite, "pointwise, chain, rates, or case-study")
      ->required();
  verify->add_option("--gamma", vf.gamma, "Step scale, or auto");
  verify->add_option("--omega", vf.omega, "Sublevel width, or inf");
  verify->add_option("--samples", vf.samples, "Sample count");
  verify->add_option("--iters", vf_iters, "Iteration cap (rates suite)");
  verify->add_option("--tol", vf_tol, "Solver tolerance (rates suite)");
  verify->add_option("--seed", vf.seed, "Sampling seed");
  verify->add_option("--x0", vf_x0, "Comma-separated start point (rates suite)");
  verify->add_option("--out", vf.out, "Report JSON path (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (probgen->parsed()) {
      const CompositeProblem p =
          make_instance(pg_family, pg_seed, {pg_n, pg_m, pg_k});
      emit(problem_to_json(p), pg_out);
      return 0;
    }

    if (estimate->parsed()) {
      const CompositeProblem p = load_problem(est.problem_path);
      const Variant variant = est_variant == "auto"
                                  ? variant_for_problem(p)
                                  : variant_from_string(est_variant);
      const PropertyEstimate result = estimate_constant(
          p, property_from_string(est_property), variant,
          resolve_gamma(est.gamma, p), resolve_omega(est.omega), est.samples,
          est.seed);
      emit(estimate_to_json(result), est.out);
      return 0;
    }

    if (solve->parsed()) {
      const CompositeProblem p = load_problem(sv_problem);
      const Vector x0 =
          sv_x0.empty() ? Vector(Vector::Zero(p.dimension())) : parse_x0(sv_x0);
      const SolverTrace trace =
          run(p, x0, resolve_gamma(sv_gamma, p), sv_iters, sv_tol);
      emit(trace_to_csv(trace), sv_out);
      return 0;
    }

    const CompositeProblem p = load_problem(vf.problem_path);
    const double gamma = resolve_gamma(vf.gamma, p);
    const double omega = resolve_omega(vf.omega);
    Report report;
    if (vf_suite == "pointwise") {
      report = verify_pointwise(p, gamma, vf.samples, vf.seed);
    } else if (vf_suite == "chain") {
      report = verify_chain(p, gamma, omega, vf.samples, vf.seed);
    } else if (vf_suite == "rates") {
      RatesConfig cfg;
      cfg.gamma = gamma;
      cfg.omega = omega;
      cfg.iters = vf_iters;
      cfg.tol = vf_tol;
      cfg.samples = vf.samples;
      cfg.seed = vf.seed;
      if (!vf_x0.empty()) cfg.x0 = parse_x0(vf_x0);
      report = verify_rates(p, cfg);
    } else if (vf_suite == "case-study") {
      report = verify_case_study(p, gamma, vf.samples, vf.seed);
    } else {
      throw InputError("unknown suite '" + vf_suite + "'");
    }
    emit(report_to_json(report), vf.out);
    return report.passed() ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
