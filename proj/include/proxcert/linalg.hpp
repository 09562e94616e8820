#pragma once

#include "proxcert/types.hpp"

namespace proxcert {

// Largest singular value of a dense matrix, relative accuracy 1e-10.
// Small matrices (min dimension <= 64) go through a direct SVD; larger ones
// use power iteration on the Gram matrix with a deterministic start vector.
double spectral_norm(const Matrix& m);

// Minimum-norm least-squares solve: returns x with m * x ~ rhs. Rank
// deficiency is handled; used for projections onto affine sets.
Vector min_norm_solve(const Matrix& m, const Vector& rhs);

}  // namespace proxcert
