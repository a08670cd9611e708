// Defect transforms of elementary operators.
//
// With L_B(X) = BX and R_A(X) = XA, the two basic transforms are
//
//   triangle_power:  (L_B R_A - I)^m (X) = sum_j (-1)^j C(m,j) B^{m-j} X A^{m-j}
//   delta_power:     (L_B - R_A)^n (X)   = sum_j (-1)^j C(n,j) B^{n-j} X A^j
//
// and compose_mn stacks one inside the other.  Every transform also has a
// superoperator realization on vec(X) (column stacking), used as an
// independent evaluation route: vec(BXA) = (A^T (x) B) vec(X).
#pragma once

#include "isosym/matrix.hpp"

#include <cstdint>
#include <vector>

namespace isosym {

/// Orders above this overflow 64-bit binomial coefficients.
inline constexpr int kMaxOrder = 62;

/// Exact binomial coefficient; throws "order-too-large" for n > 62.
std::int64_t binomial_checked(int n, int k);

/// [I, a, a^2, ..., a^max_exp].
std::vector<CMatrix> power_table(const CMatrix& a, int max_exp);

/// BX - XA.
CMatrix delta_apply(const CMatrix& b, const CMatrix& a, const CMatrix& x);

/// BXA - X.
CMatrix triangle_apply(const CMatrix& b, const CMatrix& a, const CMatrix& x);

CMatrix delta_power(const CMatrix& b, const CMatrix& a, const CMatrix& x, int n);
CMatrix triangle_power(const CMatrix& b, const CMatrix& a, const CMatrix& x, int m);

enum class ComposeOrder {
    TriangleFirstOutside,  // (L_B1 R_A1 - I)^m applied to (L_B2 - R_A2)^n (X)
    DeltaFirstOutside,     // (L_B2 - R_A2)^n applied to (L_B1 R_A1 - I)^m (X)
    DoubleSum,             // explicit double sum with right word A1^{m-j} A2^k
};

CMatrix compose_mn(const CMatrix& b1, const CMatrix& a1,
                   const CMatrix& b2, const CMatrix& a2,
                   const CMatrix& x, int m, int n, ComposeOrder order);

/// Variant double sum with right-side exponents (n-k on A2, j on A1);
/// written-out alternative kept so the harness can record which variant
/// agrees with the composed transforms (the DoubleSum word does, this one
/// does not).
CMatrix compose_double_sum_alt(const CMatrix& b1, const CMatrix& a1,
                               const CMatrix& b2, const CMatrix& a2,
                               const CMatrix& x, int m, int n);

// Scale factors for zero tests.  They bound the magnitude the summed terms
// can reach, so rtol * scale tracks accumulated rounding:
//   triangle: ||X||_F * (1 + s(B) s(A))^m     (s = spectral norm)
//   delta:    ||X||_F * (s(B) + s(A))^n
double triangle_scale(const CMatrix& b, const CMatrix& a, int m, double xnorm);
double delta_scale(const CMatrix& b, const CMatrix& a, int n, double xnorm);
double compose_scale(const CMatrix& b1, const CMatrix& a1,
                     const CMatrix& b2, const CMatrix& a2,
                     int m, int n, double xnorm);

/// d^2 x d^2 matrix acting on vec(X) for X of dimension side_dim.
struct SuperOp {
    int side_dim = 0;
    CMatrix mat;

    CMatrix apply(const CMatrix& x) const;
};

SuperOp as_superop_delta(const CMatrix& b, const CMatrix& a, int n);
SuperOp as_superop_triangle(const CMatrix& b, const CMatrix& a, int m);
SuperOp as_superop_compose(const CMatrix& b1, const CMatrix& a1,
                           const CMatrix& b2, const CMatrix& a2,
                           int m, int n, ComposeOrder order);

} // namespace isosym
