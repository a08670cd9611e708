#include "isosym/drazin.hpp"

#include <cmath>

namespace isosym {

int drazin_index(const CMatrix& t, const Tolerance& tol) {
    const int d = t.dim();
    if (d == 0) return 1;
    int prev = numerical_rank(t, tol);
    if (prev == d) return 1;
    CMatrix tp = t;
    for (int p = 1; p < d; ++p) {
        tp = tp * t;   // T^{p+1}
        const int r = numerical_rank(tp, tol);
        if (r == prev) return p;
        prev = r;
    }
    return d;
}

DrazinDecomposition core_nilpotent(const CMatrix& t, const Tolerance& tol) {
    const int d = t.dim();
    DrazinDecomposition out;
    out.index = drazin_index(t, tol);
    const CMatrix tp = power(t, out.index);

    const Svd s = svd(tp);
    const double thr = s.sigma.empty() ? 0.0 : tol.atol + tol.rtol * s.sigma[0];
    int r = 0;
    for (double sv : s.sigma)
        if (sv > thr) ++r;

    // Columns: orthonormal basis of range(T^p), then of null(T^p).
    CMatrix sim(d);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < d; ++i) sim(i, j) = s.u(i, j);
    for (int j = r; j < d; ++j)
        for (int i = 0; i < d; ++i) sim(i, j) = s.v(i, j);

    if (d > 0 && cond2(sim) > 1e8)
        throw Error("ill-conditioned-splitting",
                    "range/null bases of T^p are nearly dependent");

    const CMatrix sim_inv = d > 0 ? inverse(sim) : CMatrix(0);
    const CMatrix mid = sim_inv * t * sim;
    out.similarity = sim;
    out.core = block(mid, 0, 0, r);
    out.nilpotent = block(mid, r, r, d - r);

    double off = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if ((i < r) != (j < r)) off += std::norm(mid(i, j));
    out.diagnostics["offblock"] = std::sqrt(off);

    CMatrix core_inv(0);
    if (r > 0) core_inv = inverse(out.core);
    out.drazin = sim * direct_sum(core_inv, CMatrix::zero(d - r)) * sim_inv;

    out.diagnostics["similarity-residual"] =
        diff_norm(t, sim * direct_sum(out.core, out.nilpotent) * sim_inv);
    out.diagnostics["core-sigma-min"] = r > 0 ? svd(out.core).sigma.back() : 0.0;
    out.diagnostics["nilpotent-power"] = fro_norm(power(out.nilpotent, out.index));
    out.diagnostics["nilpotent-power-prev"] =
        out.index > 1 ? fro_norm(power(out.nilpotent, out.index - 1))
                      : fro_norm(out.nilpotent);

    const double st = spectral_norm(t);
    const double sd = spectral_norm(out.drazin);
    out.diagnostics["axiom-commute"] = fro_norm(commutator(out.drazin, t));
    out.diagnostics["axiom-td2t"] = diff_norm(out.drazin * out.drazin * t, out.drazin);
    out.diagnostics["axiom-tp1td"] =
        diff_norm(power(t, out.index + 1) * out.drazin, power(t, out.index));
    out.diagnostics["axiom-scale"] =
        std::max({2.0 * st * sd, sd * sd * st + sd,
                  std::pow(st, out.index + 1) * sd + std::pow(st, out.index)});
    return out;
}

CMatrix drazin_inverse(const CMatrix& t, const Tolerance& tol) {
    return core_nilpotent(t, tol).drazin;
}

} // namespace isosym
