#include "proxcert/instances.hpp"

#include "proxcert/errors.hpp"
#include "proxcert/mappings.hpp"
#include "proxcert/rng.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>

namespace proxcert {

namespace {

constexpr int kMaxVariables = 512;
constexpr int kMaxCompositionRows = 128;
constexpr int kMaxPolyhedronRows = 64;

int pick(int override_value, int fallback) {
  return override_value == 0 ? fallback : override_value;
}

void check_caps(const InstanceSizes& s) {
  if (s.n < 0 || s.m < 0 || s.k < 0)
    throw InputError("make_instance: sizes must be nonnegative");
  if (s.n > kMaxVariables)
    throw InputError("make_instance: variable count above the cap");
  if (s.m > kMaxCompositionRows)
    throw InputError("make_instance: composition row count above the cap");
  if (s.k > kMaxPolyhedronRows)
    throw InputError("make_instance: constraint row count above the cap");
}

void reject_overrides(const InstanceSizes& s, const std::string& family) {
  if (s.n != 0 || s.m != 0 || s.k != 0)
    throw InputError("make_instance: " + family + " has fixed sizes");
}

Matrix gaussian_matrix(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.normal();
  return m;
}

bool bits_equal(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

// Iterate the forward step until it stops moving in the last bit. A two-step
// oscillation between adjacent floats is accepted through the lower of the
// two objective values, provided the mapping there is already negligible.
Vector forward_fixed_point(const CompositeProblem& p, Vector x, double gamma) {
  constexpr long long kCap = 500000;
  Vector prev = x;
  for (long long k = 0; k < kCap; ++k) {
    MappingResult m = prox_gradient_mapping(p.f, p.g, x, gamma);
    if (bits_equal(m.forward, x)) return x;
    if (k > 0 && bits_equal(m.forward, prev)) {
      Vector best = p.objective(prev) < p.objective(x) ? prev : x;
      if (prox_gradient_mapping(p.f, p.g, best, gamma).mapping_norm <= 1e-12)
        return best;
      throw GenerationError("make_instance: reference solve oscillates");
    }
    prev = std::move(x);
    x = std::move(m.forward);
  }
  throw GenerationError("make_instance: reference solve did not settle");
}

CompositeProblem make_quad1d(std::uint64_t seed, const InstanceSizes& sizes) {
  reject_overrides(sizes, "quad1d");
  CompositeProblem p;
  p.family = "quad1d";
  p.seed = seed;
  attach_quadratic_composition(p, Matrix::Identity(1, 1), Vector::Zero(1));
  p.solution_set.variant = SolutionSetModel::Variant::singleton;
  p.solution_set.point = Vector::Zero(1);
  p.phi_star = 0.0;
  p.analytic.qg = 1.0;
  p.analytic.geb = 1.0;
  p.analytic.rsc = 1.0;
  p.analytic.theta = 1.0;
  return p;
}

CompositeProblem make_rankdef(std::uint64_t seed, const InstanceSizes& sizes) {
  reject_overrides(sizes, "rankdef_ls");
  CompositeProblem p;
  p.family = "rankdef_ls";
  p.seed = seed;
  Matrix e(1, 2);
  e << 1.0, 1.0;
  attach_quadratic_composition(p, e, Vector::Ones(1));
  p.solution_set.variant = SolutionSetModel::Variant::affine_slice;
  p.solution_set.E = e;
  p.solution_set.t_star = Vector::Ones(1);
  p.solution_set.with_polyhedron = false;
  p.solution_set.representative = Vector::Constant(2, 0.5);
  p.phi_star = 0.0;
  p.analytic.qg = 2.0;
  p.analytic.geb = 2.0;
  p.analytic.rsc = 2.0;
  p.analytic.theta = 2.0;
  return p;
}

CompositeProblem make_lasso(std::uint64_t seed, const InstanceSizes& sizes) {
  if (sizes.k != 0) throw InputError("make_instance: lasso has no polyhedron rows");
  const int n = pick(sizes.n, 10);
  const int m = pick(sizes.m, 5);
  if (n < 2 || m < 1) throw InputError("make_instance: lasso sizes too small");

  CompositeProblem p;
  p.family = "lasso";
  p.seed = seed;

  Rng data_rng(Rng::derive(seed, 1));
  Matrix d = gaussian_matrix(data_rng, m, n);

  Rng signal_rng(Rng::derive(seed, 2));
  Vector planted = Vector::Zero(n);
  const int support = std::min(3, n);
  for (int i = 0; i < support; ++i)
    planted[i] = (i % 2 == 0 ? 1.0 : -1.0) * (0.5 + signal_rng.uniform01());
  Vector t0 = d * planted + 0.1 * signal_rng.gaussian(m);

  attach_quadratic_composition(p, d, t0);
  p.g.kind = RegularizerKind::l1;
  p.g.l1_weight = 0.3 * (d.transpose() * t0).cwiseAbs().maxCoeff();

  const double gamma = p.gamma_auto();
  Rng start_rng(Rng::derive(seed, 3));
  p.solution_set.variant = SolutionSetModel::Variant::proxy;
  for (int run = 0; run < 8; ++run) {
    Vector x0 = run == 0 ? Vector(Vector::Zero(n)) : Vector(start_rng.gaussian(n));
    Vector limit = forward_fixed_point(p, std::move(x0), gamma);
    if (prox_gradient_mapping(p.f, p.g, limit, gamma).mapping_norm > 1e-12)
      throw GenerationError("make_instance: lasso reference point is not stationary");
    p.solution_set.proxy_points.push_back(std::move(limit));
  }
  double best = kInf;
  for (const Vector& x : p.solution_set.proxy_points)
    best = std::min(best, p.objective(x));
  p.phi_star = best;
  p.solution_set.achieved_objective = best;
  return p;
}

CompositeProblem make_box_ls(std::uint64_t seed, const InstanceSizes& sizes) {
  if (sizes.k != 0)
    throw InputError("make_instance: box_ls derives its rows from n");
  const int n = pick(sizes.n, 6);
  const int m = pick(sizes.m, 4);
  if (n < 1 || m < 1) throw InputError("make_instance: box_ls sizes too small");

  CompositeProblem p;
  p.family = "box_ls";
  p.seed = seed;

  Rng data_rng(Rng::derive(seed, 1));
  Matrix e = gaussian_matrix(data_rng, m, n);

  Rng anchor_rng(Rng::derive(seed, 2));
  Vector anchor(n);
  for (int i = 0; i < n; ++i) anchor[i] = anchor_rng.uniform(-0.5, 0.5);
  Vector t0 = e * anchor;

  attach_quadratic_composition(p, e, t0);

  Polyhedron box;
  box.A = Matrix::Zero(2 * n, n);
  box.b = Vector::Ones(2 * n);
  for (int i = 0; i < n; ++i) {
    box.A(i, i) = 1.0;
    box.A(n + i, i) = -1.0;
  }
  box.feasible_point = anchor;
  p.g.kind = RegularizerKind::indicator;
  p.g.set = std::move(box);

  p.solution_set.variant = SolutionSetModel::Variant::affine_slice;
  p.solution_set.E = e;
  p.solution_set.t_star = t0;
  p.solution_set.with_polyhedron = true;
  p.solution_set.representative = anchor;
  p.phi_star = 0.0;
  return p;
}

CompositeProblem make_case_study(std::uint64_t seed, const InstanceSizes& sizes) {
  const int n = pick(sizes.n, 8);
  const int m = pick(sizes.m, 3);
  const int k = pick(sizes.k, 4);
  if (n < 1 || m < 1 || k < 1)
    throw InputError("make_instance: case_study sizes too small");
  if (m > n)
    throw InputError("make_instance: case_study needs at most n composition rows");

  CompositeProblem p;
  p.family = "case_study";
  p.seed = seed;

  // Mutually orthogonal rows with one shared scale: the error-bound ratio of
  // the solution system is the same in every direction, so a constant fitted
  // on one sample set transfers to held-out samples.
  Rng basis_rng(Rng::derive(seed, 1));
  const double sigma = basis_rng.log_uniform(0.5, 2.0);
  Matrix g = gaussian_matrix(basis_rng, n, m);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix thin_q = qr.householderQ() * Matrix::Identity(n, m);
  Matrix e = sigma * thin_q.transpose();

  Rng anchor_rng(Rng::derive(seed, 2));
  Vector anchor = anchor_rng.gaussian(n);
  Vector t0 = e * anchor;

  attach_quadratic_composition(p, e, t0);

  // Constraint rows held far from the anchor relative to the sampling
  // horizon, so the polyhedron never bends the solution slice in any check.
  Rng rows_rng(Rng::derive(seed, 3));
  Matrix a = gaussian_matrix(rows_rng, k, n);
  Vector b(k);
  for (int i = 0; i < k; ++i)
    b[i] = a.row(i).dot(anchor) + rows_rng.uniform(250.0, 400.0) * a.row(i).norm();
  Polyhedron q{std::move(a), std::move(b), anchor};
  p.g.kind = RegularizerKind::indicator;
  p.g.set = std::move(q);

  p.solution_set.variant = SolutionSetModel::Variant::affine_slice;
  p.solution_set.E = e;
  p.solution_set.t_star = t0;
  p.solution_set.with_polyhedron = true;
  p.solution_set.representative = anchor;
  p.phi_star = 0.0;
  return p;
}

}  // namespace

CompositeProblem make_instance(const std::string& family, std::uint64_t seed,
                               const InstanceSizes& sizes) {
  check_caps(sizes);
  if (family == "quad1d") return make_quad1d(seed, sizes);
  if (family == "rankdef_ls") return make_rankdef(seed, sizes);
  if (family == "lasso") return make_lasso(seed, sizes);
  if (family == "box_ls") return make_box_ls(seed, sizes);
  if (family == "case_study") return make_case_study(seed, sizes);
  throw InputError("make_instance: unknown family " + family);
}

const std::vector<std::string>& instance_families() {
  static const std::vector<std::string> families = {
      "quad1d", "rankdef_ls", "lasso", "box_ls", "case_study"};
  return families;
}

}  // namespace proxcert
