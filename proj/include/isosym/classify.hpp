// Tolerance-aware class membership: left-(X,m)-invertibility, (X,n)-symmetry,
// left-(X,(m,n))-symmetric pairs, and grid classification of a single
// operator (isometry / symmetry / isosymmetry orders).
#pragma once

#include "isosym/elementary.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace isosym {

struct ClassReport {
    std::string class_label;
    std::vector<int> order;        // one entry for single orders, two for (m,n)
    double residual = 0.0;
    double scale = 0.0;
    bool verdict = false;
    std::vector<std::string> flags;  // e.g. "strict", "order-disagreement"
};

/// Residual of (L_B R_A - I)^m (X); verdict per tolerance.
ClassReport residual_left_invertible(const CMatrix& b, const CMatrix& a,
                                     const CMatrix& x, int m,
                                     const Tolerance& tol = {});

/// Residual of (L_B - R_A)^n (X).
ClassReport residual_symmetry(const CMatrix& b, const CMatrix& a,
                              const CMatrix& x, int n,
                              const Tolerance& tol = {});

/// Full operand tuple for a pair check, with commutator certificates
/// recomputable from the fields.
struct PairInstance {
    CMatrix b1, a1, b2, a2, x;
    int m = 1;
    int n = 1;
    std::map<std::string, double> commute_residuals;

    /// Recompute [A1,A2] and [B1,B2] Frobenius norms (extra labelled
    /// commutators supplied by generators are preserved only if `keep_extra`).
    void refresh_commutators(bool keep_extra = true);
};

/// Residual = max over both composition orders; flags a disagreement
/// between the two orders beyond tolerance (violated commutation).
ClassReport residual_pair_symmetric(const PairInstance& p, const Tolerance& tol = {});

struct OperatorClassification {
    std::vector<ClassReport> reports;             // every grid cell
    std::optional<int> min_isometry_order;
    std::optional<int> min_symmetry_order;
    std::vector<std::pair<int, int>> isosymmetry_frontier;  // minimal passing (m,n)
};

/// Evaluates B = A* specializations against the supplied X:
/// triangle row (isometry orders), delta row (symmetry orders) and the
/// full (m,n) isosymmetry grid, up to the bounds (each <= 10).
OperatorClassification classify_operator(const CMatrix& a, const CMatrix& x,
                                         int m_max, int n_max,
                                         const Tolerance& tol = {});

enum class OrderKind { Triangle, Delta };

struct MinimalOrderResult {
    std::optional<int> order;          // smallest passing order <= bound
    std::vector<double> residuals;     // residual at k = 1..bound
    std::vector<std::string> warnings; // non-monotone pass/fail patterns
};

/// Sweep orders 1..bound (bound <= 20); a pass followed by a fail is
/// reported as a warning, not an error.
MinimalOrderResult minimal_order(OrderKind kind, const CMatrix& b,
                                 const CMatrix& a, const CMatrix& x,
                                 int bound, const Tolerance& tol = {});

/// Strictness margin rule: an instance passing at order k is strict iff the
/// residual at k-1 exceeds 10^3 * (atol + rtol * scale(k-1)).
bool strict_at(OrderKind kind, const CMatrix& b, const CMatrix& a,
               const CMatrix& x, int k, const Tolerance& tol = {});

} // namespace isosym
