#include "proxcert/io.hpp"

#include "proxcert/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace proxcert {

namespace {

using json = nlohmann::ordered_json;

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

// JSON has no infinities; they travel as strings.
json real_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (x == kInf) return "inf";
  if (x == -kInf) return "-inf";
  return x;
}

const json& require_field(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key))
    throw InputError("problem_from_json: missing field '" + key + "'");
  return j.at(key);
}

double require_number(const json& j, const std::string& key) {
  const json& v = require_field(j, key);
  if (!v.is_number())
    throw InputError("problem_from_json: field '" + key + "' must be a number");
  return v.get<double>();
}

std::string require_string(const json& j, const std::string& key) {
  const json& v = require_field(j, key);
  if (!v.is_string())
    throw InputError("problem_from_json: field '" + key + "' must be a string");
  return v.get<std::string>();
}

Vector json_to_vector(const json& v, const std::string& key) {
  if (!v.is_array())
    throw InputError("problem_from_json: field '" + key + "' must be an array");
  Vector out(static_cast<int>(v.size()));
  int i = 0;
  for (const json& x : v) {
    if (!x.is_number())
      throw InputError("problem_from_json: field '" + key + "' must hold numbers");
    out[i++] = x.get<double>();
  }
  return out;
}

Matrix json_to_matrix(const json& v, const std::string& key) {
  if (!v.is_array())
    throw InputError("problem_from_json: field '" + key + "' must be an array of rows");
  const int rows = static_cast<int>(v.size());
  int cols = -1;
  Matrix out;
  int i = 0;
  for (const json& row : v) {
    Vector r = json_to_vector(row, key);
    if (cols < 0) {
      cols = static_cast<int>(r.size());
      out.resize(rows, cols);
    }
    if (r.size() != cols)
      throw InputError("problem_from_json: field '" + key + "' rows differ in length");
    out.row(i++) = r.transpose();
  }
  if (rows == 0) out.resize(0, 0);
  return out;
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string problem_to_json(const CompositeProblem& p) {
  if (!p.f.composition.has_value())
    throw ModelError("problem_to_json: only composition-structured problems serialize");
  const CompositionStructure& comp = *p.f.composition;

  json j;
  j["family"] = p.family;
  j["seed"] = p.seed;
  j["n"] = p.dimension();
  j["phi_star"] = p.phi_star;

  j["smooth"] = {{"lipschitz", p.f.lipschitz},
                 {"mu", comp.mu},
                 {"inner_lipschitz", comp.inner_lipschitz},
                 {"lipschitz_hat", comp.lipschitz_hat}};

  const char* kind = p.g.kind == RegularizerKind::zero      ? "zero"
                     : p.g.kind == RegularizerKind::l1      ? "l1"
                                                            : "indicator";
  j["regularizer"] = {{"kind", kind}, {"l1_weight", p.g.l1_weight}};

  json matrices;
  matrices["E"] = matrix_to_json(comp.E);
  json vectors;
  vectors["t0"] = vector_to_json(comp.t0);
  if (const Polyhedron* q = p.polyhedron()) {
    matrices["A"] = matrix_to_json(q->A);
    vectors["b"] = vector_to_json(q->b);
    if (q->feasible_point.has_value())
      vectors["feasible_point"] = vector_to_json(*q->feasible_point);
  }
  j["matrices"] = std::move(matrices);
  j["vectors"] = std::move(vectors);

  json sol;
  const SolutionSetModel& s = p.solution_set;
  switch (s.variant) {
    case SolutionSetModel::Variant::singleton:
      sol["variant"] = "singleton";
      sol["point"] = vector_to_json(s.point);
      break;
    case SolutionSetModel::Variant::affine_slice:
      sol["variant"] = "affine_slice";
      sol["E"] = matrix_to_json(s.E);
      sol["t_star"] = vector_to_json(s.t_star);
      sol["with_polyhedron"] = s.with_polyhedron;
      sol["representative"] = vector_to_json(s.representative);
      break;
    case SolutionSetModel::Variant::proxy: {
      sol["variant"] = "proxy";
      json pts = json::array();
      for (const Vector& v : s.proxy_points) pts.push_back(vector_to_json(v));
      sol["proxy_points"] = std::move(pts);
      sol["achieved_objective"] = s.achieved_objective;
      break;
    }
  }
  j["solution_set"] = std::move(sol);

  json analytic = json::object();
  if (p.analytic.qg.has_value()) analytic["qg"] = *p.analytic.qg;
  if (p.analytic.geb.has_value()) analytic["geb"] = *p.analytic.geb;
  if (p.analytic.rsc.has_value()) analytic["rsc"] = *p.analytic.rsc;
  if (p.analytic.theta.has_value()) analytic["theta"] = *p.analytic.theta;
  j["analytic"] = std::move(analytic);

  return render(j);
}

CompositeProblem problem_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("problem_from_json: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("problem_from_json: top level must be an object");

  CompositeProblem p;
  p.family = require_string(j, "family");
  {
    const json& seed = require_field(j, "seed");
    if (!seed.is_number_unsigned())
      throw InputError("problem_from_json: field 'seed' must be a nonnegative integer");
    p.seed = seed.get<std::uint64_t>();
  }
  const json& nj = require_field(j, "n");
  if (!nj.is_number_integer() || nj.get<long long>() < 1)
    throw InputError("problem_from_json: field 'n' must be a positive integer");
  const int n = nj.get<int>();
  p.phi_star = require_number(j, "phi_star");

  const json& matrices = require_field(j, "matrices");
  const json& vectors = require_field(j, "vectors");
  Matrix e = json_to_matrix(require_field(matrices, "E"), "E");
  Vector t0 = json_to_vector(require_field(vectors, "t0"), "t0");
  if (e.rows() < 1 || e.cols() != n)
    throw InputError("problem_from_json: matrix 'E' shape does not match 'n'");
  if (t0.size() != e.rows())
    throw InputError("problem_from_json: vector 't0' does not match the rows of 'E'");
  attach_quadratic_composition(p, std::move(e), std::move(t0));

  // Declared constants are carried as stored, not recomputed: the loader
  // validates structure only, so corrupted mathematics surfaces in audits.
  const json& smooth = require_field(j, "smooth");
  p.f.lipschitz = require_number(smooth, "lipschitz");
  p.f.composition->mu = require_number(smooth, "mu");
  p.f.composition->inner_lipschitz = require_number(smooth, "inner_lipschitz");
  p.f.composition->lipschitz_hat = require_number(smooth, "lipschitz_hat");

  const json& reg = require_field(j, "regularizer");
  const std::string kind = require_string(reg, "kind");
  p.g.l1_weight = require_number(reg, "l1_weight");
  if (kind == "zero") {
    p.g.kind = RegularizerKind::zero;
  } else if (kind == "l1") {
    p.g.kind = RegularizerKind::l1;
  } else if (kind == "indicator") {
    p.g.kind = RegularizerKind::indicator;
    Polyhedron q;
    q.A = json_to_matrix(require_field(matrices, "A"), "A");
    q.b = json_to_vector(require_field(vectors, "b"), "b");
    if (q.A.rows() != q.b.size() || (q.A.rows() > 0 && q.A.cols() != n))
      throw InputError("problem_from_json: polyhedron shapes do not match");
    if (vectors.contains("feasible_point")) {
      Vector fp = json_to_vector(vectors.at("feasible_point"), "feasible_point");
      if (fp.size() != n)
        throw InputError("problem_from_json: feasible point has the wrong size");
      q.feasible_point = std::move(fp);
    }
    p.g.set = std::move(q);
  } else {
    throw InputError("problem_from_json: unknown regularizer kind '" + kind + "'");
  }

  const json& sol = require_field(j, "solution_set");
  const std::string variant = require_string(sol, "variant");
  SolutionSetModel& s = p.solution_set;
  if (variant == "singleton") {
    s.variant = SolutionSetModel::Variant::singleton;
    s.point = json_to_vector(require_field(sol, "point"), "point");
    if (s.point.size() != n)
      throw InputError("problem_from_json: solution point has the wrong size");
  } else if (variant == "affine_slice") {
    s.variant = SolutionSetModel::Variant::affine_slice;
    s.E = json_to_matrix(require_field(sol, "E"), "solution E");
    s.t_star = json_to_vector(require_field(sol, "t_star"), "t_star");
    if (s.E.rows() < 1 || s.E.cols() != n || s.t_star.size() != s.E.rows())
      throw InputError("problem_from_json: solution slice shapes do not match");
    const json& wp = require_field(sol, "with_polyhedron");
    if (!wp.is_boolean())
      throw InputError("problem_from_json: 'with_polyhedron' must be a boolean");
    s.with_polyhedron = wp.get<bool>();
    if (s.with_polyhedron && p.polyhedron() == nullptr)
      throw InputError("problem_from_json: solution slice references a missing polyhedron");
    s.representative = json_to_vector(require_field(sol, "representative"), "representative");
    if (s.representative.size() != n)
      throw InputError("problem_from_json: representative has the wrong size");
  } else if (variant == "proxy") {
    s.variant = SolutionSetModel::Variant::proxy;
    const json& pts = require_field(sol, "proxy_points");
    if (!pts.is_array() || pts.empty())
      throw InputError("problem_from_json: 'proxy_points' must be a nonempty array");
    for (const json& v : pts) {
      Vector q = json_to_vector(v, "proxy_points");
      if (q.size() != n)
        throw InputError("problem_from_json: proxy point has the wrong size");
      s.proxy_points.push_back(std::move(q));
    }
    s.achieved_objective = require_number(sol, "achieved_objective");
  } else {
    throw InputError("problem_from_json: unknown solution variant '" + variant + "'");
  }

  if (j.contains("analytic")) {
    const json& a = j.at("analytic");
    if (!a.is_object())
      throw InputError("problem_from_json: 'analytic' must be an object");
    if (a.contains("qg")) p.analytic.qg = require_number(a, "qg");
    if (a.contains("geb")) p.analytic.geb = require_number(a, "geb");
    if (a.contains("rsc")) p.analytic.rsc = require_number(a, "rsc");
    if (a.contains("theta")) p.analytic.theta = require_number(a, "theta");
  }
  return p;
}

void save_problem(const CompositeProblem& p, const std::string& path) {
  write_text_file(path, problem_to_json(p));
}

CompositeProblem load_problem(const std::string& path) {
  return problem_from_json(read_text_file(path));
}

std::string trace_to_csv(const SolverTrace& trace) {
  std::string out = "k,phi,dist,gmap_norm\n";
  char buf[160];
  for (const TraceRecord& rec : trace.records) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g\n", rec.k, rec.phi,
                  rec.dist, rec.gmap_norm);
    out += buf;
  }
  return out;
}

void save_trace_csv(const SolverTrace& trace, const std::string& path) {
  write_text_file(path, trace_to_csv(trace));
}

std::string estimate_to_json(const PropertyEstimate& e) {
  json j;
  j["property"] = to_string(e.property);
  j["variant"] = to_string(e.variant);
  j["constant"] = real_to_json(e.constant);
  j["gamma"] = e.gamma;
  j["omega"] = real_to_json(e.omega);
  j["samples"] = e.samples;
  j["seed"] = e.seed;
  j["witness"] = vector_to_json(e.witness);
  j["witness_ratio"] = real_to_json(e.witness_ratio);
  j["upper_bound"] = e.upper_bound;
  return render(j);
}

std::string hoffman_to_json(const HoffmanEstimate& e) {
  json j;
  j["theta"] = real_to_json(e.theta);
  j["samples"] = e.samples;
  j["seed"] = e.seed;
  j["witness"] = vector_to_json(e.witness);
  j["witness_ratio"] = real_to_json(e.witness_ratio);
  j["upper_bound"] = e.upper_bound;
  return render(j);
}

std::string report_to_json(const Report& r) {
  json j;
  j["suite"] = r.suite;
  j["family"] = r.family;
  j["gamma"] = r.gamma;
  j["omega"] = real_to_json(r.omega);
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["proxy_distances"] = r.proxy_distances;
  j["passed"] = r.passed();
  json metrics = json::object();
  for (const auto& [key, value] : r.metrics) metrics[key] = real_to_json(value);
  j["metrics"] = std::move(metrics);
  json violations = json::array();
  for (const Violation& v : r.violations) {
    json item;
    item["check"] = v.check;
    item["index"] = v.index;
    item["lhs"] = real_to_json(v.lhs);
    item["rhs"] = real_to_json(v.rhs);
    item["point"] = vector_to_json(v.point);
    violations.push_back(std::move(item));
  }
  j["violations"] = std::move(violations);
  return render(j);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("write_text_file: cannot open '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw InputError("write_text_file: write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("read_text_file: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace proxcert
