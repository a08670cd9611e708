#include "isosym/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace isosym {

namespace {

// One-sided Jacobi: repeatedly apply unitary 2x2 rotations on column pairs
// of W until all columns are mutually orthogonal; then W = U * diag(sigma)
// and the accumulated rotations form V.
void jacobi_orthogonalize(CMatrix& w, CMatrix& v) {
    const int d = w.dim();
    const double off_eps = 1e-15;
    for (int sweep = 0; sweep < 128; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                double alpha = 0.0, beta = 0.0;
                cd gamma{};
                for (int i = 0; i < d; ++i) {
                    alpha += std::norm(w(i, p));
                    beta += std::norm(w(i, q));
                    gamma += std::conj(w(i, p)) * w(i, q);
                }
                const double g = std::abs(gamma);
                if (g < 1e-300 || g <= off_eps * std::sqrt(alpha * beta)) continue;
                rotated = true;

                // Eigenvectors of the 2x2 Hermitian Gram block
                // [[alpha, gamma], [conj(gamma), beta]].
                const double mid = 0.5 * (alpha + beta);
                const double root = std::hypot(0.5 * (alpha - beta), g);
                const double l1 = mid + root;
                cd v1p, v1q;
                if (std::abs(l1 - alpha) >= std::abs(l1 - beta)) {
                    v1p = gamma;
                    v1q = cd(l1 - alpha, 0.0);
                } else {
                    v1p = cd(l1 - beta, 0.0);
                    v1q = std::conj(gamma);
                }
                const double nv = std::sqrt(std::norm(v1p) + std::norm(v1q));
                v1p /= nv;
                v1q /= nv;
                const cd v2p = -std::conj(v1q);
                const cd v2q = std::conj(v1p);

                for (int i = 0; i < d; ++i) {
                    const cd wp = w(i, p), wq = w(i, q);
                    w(i, p) = v1p * wp + v1q * wq;
                    w(i, q) = v2p * wp + v2q * wq;
                }
                for (int i = 0; i < d; ++i) {
                    const cd vp = v(i, p), vq = v(i, q);
                    v(i, p) = v1p * vp + v1q * vq;
                    v(i, q) = v2p * vp + v2q * vq;
                }
            }
        }
        if (!rotated) break;
    }
}

// Fill the columns [rank, d) of u with an orthonormal completion.
void complete_basis(CMatrix& u, int rank) {
    const int d = u.dim();
    for (int col = rank; col < d; ++col) {
        // Pick the coordinate vector least represented so far, then
        // Gram-Schmidt it twice against the existing columns.
        int best = 0;
        double best_res = -1.0;
        for (int cand = 0; cand < d; ++cand) {
            double proj = 0.0;
            for (int c = 0; c < col; ++c) proj += std::norm(std::conj(u(cand, c)));
            const double res = 1.0 - proj;
            if (res > best_res) {
                best_res = res;
                best = cand;
            }
        }
        std::vector<cd> w(d, cd{});
        w[best] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (int c = 0; c < col; ++c) {
                cd dot{};
                for (int i = 0; i < d; ++i) dot += std::conj(u(i, c)) * w[i];
                for (int i = 0; i < d; ++i) w[i] -= dot * u(i, c);
            }
        }
        double nw = 0.0;
        for (const cd& z : w) nw += std::norm(z);
        nw = std::sqrt(nw);
        for (int i = 0; i < d; ++i) u(i, col) = w[i] / nw;
    }
}

} // namespace

Svd svd(const CMatrix& a) {
    const int d = a.dim();
    Svd out;
    out.u = CMatrix::identity(d);
    out.v = CMatrix::identity(d);
    out.sigma.assign(d, 0.0);
    if (d == 0) return out;

    CMatrix w = a;
    CMatrix v = CMatrix::identity(d);
    jacobi_orthogonalize(w, v);

    std::vector<double> sig(d);
    for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int i = 0; i < d; ++i) s += std::norm(w(i, j));
        sig[j] = std::sqrt(s);
    }
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int x, int y) { return sig[x] > sig[y]; });

    CMatrix u(d), vs(d);
    const double smax = sig.empty() ? 0.0 : sig[perm[0]];
    int rank = 0;
    for (int j = 0; j < d; ++j) {
        const int src = perm[j];
        out.sigma[j] = sig[src];
        for (int i = 0; i < d; ++i) vs(i, j) = v(i, src);
        if (sig[src] > smax * 1e-18 && sig[src] > 1e-300) {
            for (int i = 0; i < d; ++i) u(i, j) = w(i, src) / sig[src];
            rank = j + 1;
        }
    }
    complete_basis(u, rank);
    out.u = u;
    out.v = vs;
    return out;
}

double spectral_norm(const CMatrix& a) {
    if (a.dim() == 0) return 0.0;
    return svd(a).sigma[0];
}

int numerical_rank(const CMatrix& a, const Tolerance& tol) {
    if (a.dim() == 0) return 0;
    const Svd s = svd(a);
    const double thr = tol.atol + tol.rtol * s.sigma[0];
    int r = 0;
    for (double sv : s.sigma)
        if (sv > thr) ++r;
    return r;
}

double cond2(const CMatrix& a) {
    if (a.dim() == 0) return 1.0;
    const Svd s = svd(a);
    const double smin = s.sigma.back();
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return s.sigma[0] / smin;
}

CMatrix inverse(const CMatrix& a) {
    const int d = a.dim();
    CMatrix w = a;
    CMatrix inv = CMatrix::identity(d);
    const double tiny = 1e-300 + 1e-14 * max_abs(a);
    for (int col = 0; col < d; ++col) {
        int piv = col;
        double best = std::abs(w(col, col));
        for (int i = col + 1; i < d; ++i) {
            const double m = std::abs(w(i, col));
            if (m > best) {
                best = m;
                piv = i;
            }
        }
        if (best <= tiny) throw Error("singular-matrix", "pivot collapse at column " + std::to_string(col));
        if (piv != col) {
            for (int j = 0; j < d; ++j) {
                std::swap(w(piv, j), w(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        }
        const cd pival = w(col, col);
        for (int j = 0; j < d; ++j) {
            w(col, j) /= pival;
            inv(col, j) /= pival;
        }
        for (int i = 0; i < d; ++i) {
            if (i == col) continue;
            const cd f = w(i, col);
            if (f == cd{}) continue;
            for (int j = 0; j < d; ++j) {
                w(i, j) -= f * w(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

} // namespace isosym
