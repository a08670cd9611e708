#include "isosym/elementary.hpp"

#include "isosym/linalg.hpp"

#include <cmath>

namespace isosym {

std::int64_t binomial_checked(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    if (n > kMaxOrder)
        throw Error("order-too-large", "binomial order " + std::to_string(n) +
                                           " exceeds " + std::to_string(kMaxOrder));
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned>(n - k + i);
        r /= static_cast<unsigned>(i);   // exact at every step
    }
    return static_cast<std::int64_t>(r);
}

std::vector<CMatrix> power_table(const CMatrix& a, int max_exp) {
    std::vector<CMatrix> p;
    p.reserve(max_exp + 1);
    p.push_back(CMatrix::identity(a.dim()));
    for (int k = 1; k <= max_exp; ++k) p.push_back(p.back() * a);
    return p;
}

namespace {

void check_order(int n) {
    if (n < 0) throw Error("order-too-large", "negative order");
    if (n > kMaxOrder)
        throw Error("order-too-large", "order " + std::to_string(n) + " exceeds " +
                                           std::to_string(kMaxOrder));
}

} // namespace

CMatrix delta_apply(const CMatrix& b, const CMatrix& a, const CMatrix& x) {
    require_same_dim("delta", b, a);
    require_same_dim("delta", b, x);
    return b * x - x * a;
}

CMatrix triangle_apply(const CMatrix& b, const CMatrix& a, const CMatrix& x) {
    require_same_dim("triangle", b, a);
    require_same_dim("triangle", b, x);
    return b * x * a - x;
}

CMatrix delta_power(const CMatrix& b, const CMatrix& a, const CMatrix& x, int n) {
    require_same_dim("delta", b, a);
    require_same_dim("delta", b, x);
    check_order(n);
    if (n == 0) return x;
    const auto bp = power_table(b, n);
    const auto ap = power_table(a, n);
    CMatrix acc(x.dim());
    for (int j = 0; j <= n; ++j) {
        const double w = (j % 2 ? -1.0 : 1.0) * static_cast<double>(binomial_checked(n, j));
        acc += w * (bp[n - j] * x * ap[j]);
    }
    return acc;
}

CMatrix triangle_power(const CMatrix& b, const CMatrix& a, const CMatrix& x, int m) {
    require_same_dim("triangle", b, a);
    require_same_dim("triangle", b, x);
    check_order(m);
    if (m == 0) return x;
    const auto bp = power_table(b, m);
    const auto ap = power_table(a, m);
    CMatrix acc(x.dim());
    for (int j = 0; j <= m; ++j) {
        const double w = (j % 2 ? -1.0 : 1.0) * static_cast<double>(binomial_checked(m, j));
        acc += w * (bp[m - j] * x * ap[m - j]);
    }
    return acc;
}

CMatrix compose_mn(const CMatrix& b1, const CMatrix& a1, const CMatrix& b2,
                   const CMatrix& a2, const CMatrix& x, int m, int n,
                   ComposeOrder order) {
    require_same_dim("compose", b1, a1);
    require_same_dim("compose", b1, b2);
    require_same_dim("compose", b1, a2);
    require_same_dim("compose", b1, x);
    check_order(m);
    check_order(n);
    switch (order) {
        case ComposeOrder::TriangleFirstOutside:
            return triangle_power(b1, a1, delta_power(b2, a2, x, n), m);
        case ComposeOrder::DeltaFirstOutside:
            return delta_power(b2, a2, triangle_power(b1, a1, x, m), n);
        case ComposeOrder::DoubleSum:
            break;
    }
    const auto b1p = power_table(b1, m);
    const auto a1p = power_table(a1, m);
    const auto b2p = power_table(b2, n);
    const auto a2p = power_table(a2, n);
    CMatrix acc(x.dim());
    for (int j = 0; j <= m; ++j) {
        for (int k = 0; k <= n; ++k) {
            const double w = ((j + k) % 2 ? -1.0 : 1.0) *
                             static_cast<double>(binomial_checked(m, j)) *
                             static_cast<double>(binomial_checked(n, k));
            acc += w * (b1p[m - j] * b2p[n - k] * x * a1p[m - j] * a2p[k]);
        }
    }
    return acc;
}

CMatrix compose_double_sum_alt(const CMatrix& b1, const CMatrix& a1,
                               const CMatrix& b2, const CMatrix& a2,
                               const CMatrix& x, int m, int n) {
    check_order(m);
    check_order(n);
    const auto b1p = power_table(b1, m);
    const auto a1p = power_table(a1, m);
    const auto b2p = power_table(b2, n);
    const auto a2p = power_table(a2, n);
    CMatrix acc(x.dim());
    for (int j = 0; j <= m; ++j) {
        for (int k = 0; k <= n; ++k) {
            const double w = ((j + k) % 2 ? -1.0 : 1.0) *
                             static_cast<double>(binomial_checked(m, j)) *
                             static_cast<double>(binomial_checked(n, k));
            acc += w * (b1p[m - j] * b2p[n - k] * x * a2p[n - k] * a1p[j]);
        }
    }
    return acc;
}

double triangle_scale(const CMatrix& b, const CMatrix& a, int m, double xnorm) {
    return xnorm * std::pow(1.0 + spectral_norm(b) * spectral_norm(a), m);
}

double delta_scale(const CMatrix& b, const CMatrix& a, int n, double xnorm) {
    return xnorm * std::pow(spectral_norm(b) + spectral_norm(a), n);
}

double compose_scale(const CMatrix& b1, const CMatrix& a1, const CMatrix& b2,
                     const CMatrix& a2, int m, int n, double xnorm) {
    return triangle_scale(b1, a1, m, 1.0) * delta_scale(b2, a2, n, xnorm);
}

CMatrix SuperOp::apply(const CMatrix& x) const {
    if (x.dim() != side_dim) throw Error("dim-mismatch", "superop apply");
    const std::vector<cd> vx = vec(x);
    const int n = mat.dim();
    std::vector<cd> vy(n, cd{});
    for (int r = 0; r < n; ++r) {
        cd s{};
        for (int c = 0; c < n; ++c) s += mat(r, c) * vx[c];
        vy[r] = s;
    }
    return unvec(vy, side_dim);
}

SuperOp as_superop_delta(const CMatrix& b, const CMatrix& a, int n) {
    require_same_dim("superop", b, a);
    check_order(n);
    const int d = b.dim();
    const CMatrix id = CMatrix::identity(d);
    const CMatrix base = kron(id, b) - kron(transpose(a), id);
    return SuperOp{d, power(base, n)};
}

SuperOp as_superop_triangle(const CMatrix& b, const CMatrix& a, int m) {
    require_same_dim("superop", b, a);
    check_order(m);
    const int d = b.dim();
    const CMatrix base = kron(transpose(a), b) - CMatrix::identity(d * d);
    return SuperOp{d, power(base, m)};
}

SuperOp as_superop_compose(const CMatrix& b1, const CMatrix& a1,
                           const CMatrix& b2, const CMatrix& a2, int m, int n,
                           ComposeOrder order) {
    const SuperOp tri = as_superop_triangle(b1, a1, m);
    const SuperOp del = as_superop_delta(b2, a2, n);
    switch (order) {
        case ComposeOrder::TriangleFirstOutside:
            return SuperOp{tri.side_dim, tri.mat * del.mat};
        case ComposeOrder::DeltaFirstOutside:
            return SuperOp{tri.side_dim, del.mat * tri.mat};
        case ComposeOrder::DoubleSum:
            break;
    }
    // Literal double-sum realization, term by term.
    const int d = b1.dim();
    const auto b1p = power_table(b1, m);
    const auto a1p = power_table(a1, m);
    const auto b2p = power_table(b2, n);
    const auto a2p = power_table(a2, n);
    CMatrix acc(d * d);
    for (int j = 0; j <= m; ++j) {
        for (int k = 0; k <= n; ++k) {
            const double w = ((j + k) % 2 ? -1.0 : 1.0) *
                             static_cast<double>(binomial_checked(m, j)) *
                             static_cast<double>(binomial_checked(n, k));
            acc += w * kron(transpose(a1p[m - j] * a2p[k]), b1p[m - j] * b2p[n - k]);
        }
    }
    return SuperOp{d, acc};
}

} // namespace isosym
