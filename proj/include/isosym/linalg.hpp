// Numerical kernels: one-sided Jacobi SVD, Gauss-Jordan inverse, rank and
// condition estimates.  Sized for desk-scale matrices (dim <= 64 after
// Kronecker products), where Jacobi is both simple and accurate.
#pragma once

#include "isosym/matrix.hpp"

namespace isosym {

/// a = u * diag(sigma) * adjoint(v); sigma sorted descending, u and v
/// unitary (u completed to a full basis when a is rank deficient).
struct Svd {
    std::vector<double> sigma;
    CMatrix u;
    CMatrix v;
};

Svd svd(const CMatrix& a);

/// Largest singular value (0 for the empty matrix).
double spectral_norm(const CMatrix& a);

/// Count of singular values above atol + rtol * sigma_max.
int numerical_rank(const CMatrix& a, const Tolerance& tol = {});

/// sigma_max / sigma_min; +inf if numerically singular.
double cond2(const CMatrix& a);

/// Inverse by Gauss-Jordan elimination with partial pivoting.
/// Throws "singular-matrix" when a pivot collapses.
CMatrix inverse(const CMatrix& a);

} // namespace isosym
