#include "isosym/classify.hpp"

#include "isosym/linalg.hpp"

#include <algorithm>

namespace isosym {

ClassReport residual_left_invertible(const CMatrix& b, const CMatrix& a,
                                     const CMatrix& x, int m, const Tolerance& tol) {
    ClassReport r;
    r.class_label = "left-invertible";
    r.order = {m};
    r.scale = triangle_scale(b, a, m, fro_norm(x));
    r.residual = fro_norm(triangle_power(b, a, x, m));
    r.verdict = tol.is_zero(r.residual, r.scale);
    return r;
}

ClassReport residual_symmetry(const CMatrix& b, const CMatrix& a,
                              const CMatrix& x, int n, const Tolerance& tol) {
    ClassReport r;
    r.class_label = "symmetry";
    r.order = {n};
    r.scale = delta_scale(b, a, n, fro_norm(x));
    r.residual = fro_norm(delta_power(b, a, x, n));
    r.verdict = tol.is_zero(r.residual, r.scale);
    return r;
}

void PairInstance::refresh_commutators(bool keep_extra) {
    if (!keep_extra) commute_residuals.clear();
    commute_residuals["[A1,A2]"] = fro_norm(commutator(a1, a2));
    commute_residuals["[B1,B2]"] = fro_norm(commutator(b1, b2));
}

ClassReport residual_pair_symmetric(const PairInstance& p, const Tolerance& tol) {
    ClassReport r;
    r.class_label = "left-pair-symmetric";
    r.order = {p.m, p.n};
    r.scale = compose_scale(p.b1, p.a1, p.b2, p.a2, p.m, p.n, fro_norm(p.x));
    const CMatrix tri_out =
        compose_mn(p.b1, p.a1, p.b2, p.a2, p.x, p.m, p.n, ComposeOrder::TriangleFirstOutside);
    const CMatrix del_out =
        compose_mn(p.b1, p.a1, p.b2, p.a2, p.x, p.m, p.n, ComposeOrder::DeltaFirstOutside);
    const double r1 = fro_norm(tri_out);
    const double r2 = fro_norm(del_out);
    r.residual = std::max(r1, r2);
    r.verdict = tol.is_zero(r.residual, r.scale);
    if (!tol.is_zero(std::abs(r1 - r2), r.scale))
        r.flags.push_back("order-disagreement");   // commutation hypotheses violated
    return r;
}

OperatorClassification classify_operator(const CMatrix& a, const CMatrix& x,
                                         int m_max, int n_max, const Tolerance& tol) {
    require_same_dim("classify", a, x);
    if (m_max < 1 || n_max < 1 || m_max > 10 || n_max > 10)
        throw Error("config-error", "classification bounds must lie in 1..10");

    OperatorClassification out;
    const CMatrix b = adjoint(a);
    const double xnorm = fro_norm(x);

    std::vector<std::vector<bool>> grid(m_max + 1, std::vector<bool>(n_max + 1, false));

    for (int m = 1; m <= m_max; ++m) {
        ClassReport r = residual_left_invertible(b, a, x, m, tol);
        r.class_label = "isometry";
        if (r.verdict && !out.min_isometry_order) out.min_isometry_order = m;
        out.reports.push_back(std::move(r));
    }
    for (int n = 1; n <= n_max; ++n) {
        ClassReport r = residual_symmetry(b, a, x, n, tol);
        r.class_label = "symmetry";
        if (r.verdict && !out.min_symmetry_order) out.min_symmetry_order = n;
        out.reports.push_back(std::move(r));
    }
    for (int m = 1; m <= m_max; ++m) {
        for (int n = 1; n <= n_max; ++n) {
            ClassReport r;
            r.class_label = "isosymmetry";
            r.order = {m, n};
            r.scale = compose_scale(b, a, b, a, m, n, xnorm);
            r.residual = fro_norm(
                compose_mn(b, a, b, a, x, m, n, ComposeOrder::TriangleFirstOutside));
            r.verdict = tol.is_zero(r.residual, r.scale);
            grid[m][n] = r.verdict;
            out.reports.push_back(std::move(r));
        }
    }
    for (int m = 1; m <= m_max; ++m)
        for (int n = 1; n <= n_max; ++n)
            if (grid[m][n] && !(m > 1 && grid[m - 1][n]) && !(n > 1 && grid[m][n - 1]))
                out.isosymmetry_frontier.emplace_back(m, n);

    // Strictness flags for the minimal single orders.
    if (out.min_isometry_order && *out.min_isometry_order > 1 &&
        strict_at(OrderKind::Triangle, b, a, x, *out.min_isometry_order, tol)) {
        for (auto& r : out.reports)
            if (r.class_label == "isometry" && r.order == std::vector<int>{*out.min_isometry_order})
                r.flags.push_back("strict");
    }
    if (out.min_symmetry_order && *out.min_symmetry_order > 1 &&
        strict_at(OrderKind::Delta, b, a, x, *out.min_symmetry_order, tol)) {
        for (auto& r : out.reports)
            if (r.class_label == "symmetry" && r.order == std::vector<int>{*out.min_symmetry_order})
                r.flags.push_back("strict");
    }
    return out;
}

MinimalOrderResult minimal_order(OrderKind kind, const CMatrix& b, const CMatrix& a,
                                 const CMatrix& x, int bound, const Tolerance& tol) {
    if (bound < 1 || bound > 20)
        throw Error("config-error", "minimal_order bound must lie in 1..20");
    MinimalOrderResult out;
    std::vector<bool> pass(bound + 1, false);
    const double xnorm = fro_norm(x);
    for (int k = 1; k <= bound; ++k) {
        double residual, scale;
        if (kind == OrderKind::Triangle) {
            residual = fro_norm(triangle_power(b, a, x, k));
            scale = triangle_scale(b, a, k, xnorm);
        } else {
            residual = fro_norm(delta_power(b, a, x, k));
            scale = delta_scale(b, a, k, xnorm);
        }
        out.residuals.push_back(residual);
        pass[k] = tol.is_zero(residual, scale);
        if (pass[k] && !out.order) out.order = k;
    }
    for (int k = 1; k < bound; ++k) {
        if (pass[k] && !pass[k + 1]) {
            out.warnings.push_back("non-monotone: pass at " + std::to_string(k) +
                                   " (residual " + std::to_string(out.residuals[k - 1]) +
                                   ") but fail at " + std::to_string(k + 1) + " (residual " +
                                   std::to_string(out.residuals[k]) + ")");
        }
    }
    return out;
}

bool strict_at(OrderKind kind, const CMatrix& b, const CMatrix& a, const CMatrix& x,
               int k, const Tolerance& tol) {
    if (k <= 1) return false;
    const double xnorm = fro_norm(x);
    double residual, scale;
    if (kind == OrderKind::Triangle) {
        residual = fro_norm(triangle_power(b, a, x, k - 1));
        scale = triangle_scale(b, a, k - 1, xnorm);
    } else {
        residual = fro_norm(delta_power(b, a, x, k - 1));
        scale = delta_scale(b, a, k - 1, xnorm);
    }
    return residual > 1e3 * tol.threshold(scale);
}

} // namespace isosym
