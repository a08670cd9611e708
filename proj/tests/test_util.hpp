// Shared helpers for the test binaries: seeded random matrices and the
// iterated-application oracle (independent of the binomial-sum route).
#pragma once

#include "isosym/elementary.hpp"
#include "isosym/generators.hpp"

namespace isosym::testutil {

inline CMatrix random_dense(std::uint64_t seed, int dim, double scale = 1.0) {
    Xoshiro256pp rng(seed);
    CMatrix m(dim);
    for (cd& z : m.data()) z = scale * rng.cgauss();
    return m;
}

/// (L_B - R_A)^n by n successive single applications.
inline CMatrix delta_iterated(const CMatrix& b, const CMatrix& a, const CMatrix& x, int n) {
    CMatrix y = x;
    for (int i = 0; i < n; ++i) y = delta_apply(b, a, y);
    return y;
}

/// (L_B R_A - I)^m by m successive single applications.
inline CMatrix triangle_iterated(const CMatrix& b, const CMatrix& a, const CMatrix& x, int m) {
    CMatrix y = x;
    for (int i = 0; i < m; ++i) y = triangle_apply(b, a, y);
    return y;
}

inline bool near(const CMatrix& a, const CMatrix& b, double tol) {
    return diff_norm(a, b) <= tol;
}

} // namespace isosym::testutil
