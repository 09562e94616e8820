#include "proxcert/projection.hpp"

#include "proxcert/errors.hpp"
#include "proxcert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace proxcert {

namespace {

// Single-nonzero rows with coefficient +1 or -1 describe an axis-aligned
// box; anything else goes to the active-set path.
bool box_bounds(const Matrix& a, const Vector& b, Vector& lo, Vector& hi) {
  const int n = static_cast<int>(a.cols());
  lo = Vector::Constant(n, -kInf);
  hi = Vector::Constant(n, kInf);
  for (int i = 0; i < a.rows(); ++i) {
    int idx = -1;
    for (int j = 0; j < n; ++j) {
      if (a(i, j) == 0.0) continue;
      if (idx >= 0 || (a(i, j) != 1.0 && a(i, j) != -1.0)) return false;
      idx = j;
    }
    if (idx < 0) {
      if (b[i] < 0.0) return false;  // 0 <= b must hold; leave it to active set
      continue;
    }
    if (a(i, idx) > 0.0)
      hi[idx] = std::min(hi[idx], b[i]);
    else
      lo[idx] = std::max(lo[idx], -b[i]);
  }
  return true;
}

struct WorkingSet {
  std::vector<int> rows;

  bool has(int i) const {
    return std::find(rows.begin(), rows.end(), i) != rows.end();
  }
  void add(int i) {
    rows.push_back(i);
    std::sort(rows.begin(), rows.end());
  }
  void remove(int i) { rows.erase(std::find(rows.begin(), rows.end(), i)); }
};

Matrix stack_rows(const Matrix& A, const WorkingSet& w, const Matrix& E, int n) {
  Matrix c(static_cast<int>(w.rows.size()) + static_cast<int>(E.rows()), n);
  int r = 0;
  for (int i : w.rows) c.row(r++) = A.row(i);
  for (int i = 0; i < E.rows(); ++i) c.row(r++) = E.row(i);
  return c;
}

Vector stack_rhs(const Vector& b, const WorkingSet& w, const Vector& t) {
  Vector d(static_cast<int>(w.rows.size()) + static_cast<int>(t.size()));
  int r = 0;
  for (int i : w.rows) d[r++] = b[i];
  for (int i = 0; i < t.size(); ++i) d[r++] = t[i];
  return d;
}

double kkt_residual_at(const Vector& y, const Vector& x, const Matrix& A,
                       const Vector& b, const Matrix& E, const Vector& t,
                       const WorkingSet& w, const Vector& mu) {
  double r = 0.0;
  Vector grad = x - y;  // gradient of the projection objective at x
  for (std::size_t j = 0; j < w.rows.size(); ++j)
    grad += mu[static_cast<int>(j)] * A.row(w.rows[j]).transpose();
  for (int i = 0; i < E.rows(); ++i)
    grad += mu[static_cast<int>(w.rows.size()) + i] * E.row(i).transpose();
  if (grad.size() > 0) r = grad.cwiseAbs().maxCoeff();
  for (int i = 0; i < A.rows(); ++i)
    r = std::max(r, A.row(i).dot(x) - b[i]);
  for (int i = 0; i < E.rows(); ++i)
    r = std::max(r, std::abs(E.row(i).dot(x) - t[i]));
  for (std::size_t j = 0; j < w.rows.size(); ++j) {
    const double lambda = mu[static_cast<int>(j)];
    r = std::max(r, -lambda);
    r = std::max(r, std::abs(lambda * (A.row(w.rows[j]).dot(x) - b[w.rows[j]])));
  }
  return r;
}

// A point satisfying {A x <= b, E x = t}, by alternating corrections: fix
// the equality block exactly, then the most violated halfspace, repeating.
// Converges linearly for nonempty sets; an empty or inconsistent system
// stalls and is reported as a numerical failure.
Vector feasible_start(const Vector& y, const Matrix& A, const Vector& b,
                      const Matrix& E, const Vector& t) {
  Vector z = y;
  if (E.rows() > 0) {
    z -= min_norm_solve(E, Vector(E * z - t));
    const double resid = (E * z - t).cwiseAbs().maxCoeff();
    if (resid > 1e-9 * (1.0 + t.cwiseAbs().maxCoeff()))
      throw NumericalError(
          "project_onto_constraints: the equality block is inconsistent");
  }
  const int cap = 100000;
  double stall_mark = kInf;
  for (int it = 0; it < cap; ++it) {
    int worst = -1;
    double v = 0.0;
    for (int i = 0; i < A.rows(); ++i) {
      const double viol = A.row(i).dot(z) - b[i];
      if (viol > 0.5 * slack_for(b[i]) && viol > v) {
        v = viol;
        worst = i;
      }
    }
    if (worst < 0) return z;
    // No progress over a long window means the set is empty.
    if (it % 1000 == 0) {
      if (v >= 0.999 * stall_mark)
        throw NumericalError(
            "project_onto_constraints: no feasible point found");
      stall_mark = v;
    }
    const double row_norm2 = A.row(worst).squaredNorm();
    if (row_norm2 == 0.0)
      throw NumericalError(
          "project_onto_constraints: a zero row has a negative bound");
    z -= (v / row_norm2) * A.row(worst).transpose();
    if (E.rows() > 0) z -= min_norm_solve(E, Vector(E * z - t));
  }
  throw NumericalError("project_onto_constraints: no feasible point found");
}

bool satisfies(const Vector& x, const Matrix& A, const Vector& b,
               const Matrix& E, const Vector& t) {
  for (int i = 0; i < A.rows(); ++i)
    if (A.row(i).dot(x) > b[i] + slack_for(b[i])) return false;
  if (E.rows() > 0 &&
      (E * x - t).cwiseAbs().maxCoeff() > 1e-9 * (1.0 + t.cwiseAbs().maxCoeff()))
    return false;
  return true;
}

}  // namespace

ProjectionResult project_onto_constraints(const Vector& y,
                                          const Matrix& A, const Vector& b,
                                          const Matrix& E, const Vector& t,
                                          const Vector* start) {
  const int n = static_cast<int>(y.size());
  if ((A.rows() > 0 && A.cols() != n) || (E.rows() > 0 && E.cols() != n) ||
      A.rows() != b.size() || E.rows() != t.size())
    throw InputError("project_onto_constraints: shape mismatch");
  if (A.rows() == 0 && E.rows() == 0) return {y, 0.0, 0};

  // Primal active set from a feasible point. The iterate stays feasible and
  // every working row is active at it, so the working system always has a
  // solution; a blocking row is never a combination of the working rows,
  // which keeps the set independent and no larger than the dimension.
  Vector x;
  if (start != nullptr && start->size() == n && satisfies(*start, A, b, E, t))
    x = *start;
  else
    x = feasible_start(y, A, b, E, t);

  WorkingSet w;
  const int budget = 50 * (static_cast<int>(A.rows()) + 2);
  for (int iter = 0; iter <= budget; ++iter) {
    Matrix c = stack_rows(A, w, E, n);
    Vector d = stack_rhs(b, w, t);
    Vector z = c.rows() == 0
                   ? y
                   : Vector(y - min_norm_solve(c, Vector(c * y - d)));
    const Vector p = z - x;

    if (p.norm() <= 1e-12 * (1.0 + x.norm())) {
      Vector mu = c.rows() == 0
                      ? Vector(0)
                      : min_norm_solve(Matrix(c.transpose()), Vector(y - z));
      // Most negative working multiplier leaves, lowest index on ties.
      int leaving = -1;
      double lowest = 0.0;
      const double mu_scale = mu.size() > 0 ? mu.cwiseAbs().maxCoeff() : 0.0;
      for (std::size_t j = 0; j < w.rows.size(); ++j) {
        const double lambda = mu[static_cast<int>(j)];
        if (lambda < -1e-12 * (1.0 + mu_scale) && lambda < lowest) {
          lowest = lambda;
          leaving = w.rows[j];
        }
      }
      if (leaving >= 0) {
        w.remove(leaving);
        continue;
      }
      return {z, kkt_residual_at(y, z, A, b, E, t, w, mu), iter};
    }

    // Step toward the subproblem solution until a row blocks; the first row
    // attaining the smallest step wins, so ties break on the lowest index.
    double alpha = 1.0;
    int blocker = -1;
    for (int i = 0; i < A.rows(); ++i) {
      if (w.has(i)) continue;
      const double s = A.row(i).dot(p);
      if (s <= 0.0) continue;
      const double room = b[i] - A.row(i).dot(x);
      const double step = std::max(room, 0.0) / s;
      if (step < alpha) {
        alpha = step;
        blocker = i;
      }
    }
    x = alpha == 1.0 ? z : Vector(x + alpha * p);
    if (blocker >= 0) w.add(blocker);
  }
  throw NumericalError("project_onto_constraints: working set cycled past its budget");
}

ProjectionResult project_polyhedron_full(const Polyhedron& q, const Vector& y) {
  if (!q.trivial() && q.cols() != y.size())
    throw InputError("project_polyhedron: dimension mismatch");
  if (q.trivial()) return {y, 0.0, 0};
  if (q.feasible_point.has_value() && !q.contains(*q.feasible_point))
    throw ModelError("project_polyhedron: stored feasible point violates the rows");

  Vector lo, hi;
  if (box_bounds(q.A, q.b, lo, hi)) {
    for (int i = 0; i < y.size(); ++i)
      if (lo[i] > hi[i])
        throw NumericalError("project_polyhedron: box bounds cross, set is empty");
    Vector p(y.size());
    for (int i = 0; i < y.size(); ++i) p[i] = std::min(hi[i], std::max(lo[i], y[i]));
    return {p, 0.0, 0};
  }
  if (q.rows() == 1) {
    const double gap = q.A.row(0).dot(y) - q.b[0];
    if (gap <= 0.0) return {y, 0.0, 0};
    Vector p = y - (gap / q.A.row(0).squaredNorm()) * q.A.row(0).transpose();
    return {p, 0.0, 0};
  }
  const Vector* hint =
      q.feasible_point.has_value() ? &*q.feasible_point : nullptr;
  return project_onto_constraints(y, q.A, q.b, Matrix(0, q.cols()), Vector(0),
                                  hint);
}

Vector project_polyhedron(const Polyhedron& q, const Vector& y) {
  return project_polyhedron_full(q, y).point;
}

}  // namespace proxcert
