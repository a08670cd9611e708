#include "isosym/matrix.hpp"

#include <cmath>
#include <cstdlib>

namespace isosym {

DimLimits& dim_limits() {
    static DimLimits limits;
    return limits;
}

void apply_dim_env() {
    const char* env = std::getenv("ISOSYM_MAX_DIM");
    if (!env) return;
    const long v = std::strtol(env, nullptr, 10);
    if (v < 1 || v > 4096) throw Error("config-error", "ISOSYM_MAX_DIM out of range [1,4096]");
    dim_limits().max_instance = static_cast<int>(v);
    const long k = v * v;
    dim_limits().max_kron = static_cast<int>(k > 4096 ? 4096 : k);
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cd>> rows) {
    dim_ = static_cast<int>(rows.size());
    a_.assign(size_t(dim_) * dim_, cd{});
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != dim_)
            throw Error("dim-mismatch", "ragged initializer row");
        int j = 0;
        for (const cd& z : row) (*this)(i, j++) = z;
        ++i;
    }
}

CMatrix CMatrix::identity(int dim) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

bool CMatrix::is_finite() const {
    for (const cd& z : a_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

void require_same_dim(const char* op, const CMatrix& a, const CMatrix& b) {
    if (a.dim() != b.dim())
        throw Error("dim-mismatch", std::string(op) + ": " + std::to_string(a.dim()) +
                                        " vs " + std::to_string(b.dim()));
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
    require_same_dim("add", *this, rhs);
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
    require_same_dim("sub", *this, rhs);
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(cd z) {
    for (cd& v : a_) v *= z;
    return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    require_same_dim("matmul", a, b);
    const int d = a.dim();
    CMatrix c(d);
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            const cd aik = a(i, k);
            if (aik == cd{}) continue;
            for (int j = 0; j < d; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

CMatrix operator*(cd z, CMatrix a) { return a *= z; }
CMatrix operator*(double x, const CMatrix& a) { return cd(x, 0.0) * a; }
CMatrix operator-(const CMatrix& a) { return cd(-1.0, 0.0) * a; }

CMatrix adjoint(const CMatrix& a) {
    const int d = a.dim();
    CMatrix r(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) r(j, i) = std::conj(a(i, j));
    return r;
}

CMatrix transpose(const CMatrix& a) {
    const int d = a.dim();
    CMatrix r(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) r(j, i) = a(i, j);
    return r;
}

CMatrix conjugate(const CMatrix& a) {
    CMatrix r = a;
    for (cd& z : r.data()) z = std::conj(z);
    return r;
}

CMatrix power(const CMatrix& a, int k) {
    if (k < 0) throw Error("order-too-large", "negative exponent");
    CMatrix r = CMatrix::identity(a.dim());
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
    require_same_dim("commutator", a, b);
    return a * b - b * a;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const long target = static_cast<long>(a.dim()) * b.dim();
    if (target > dim_limits().max_kron)
        throw Error("dim-too-large", "kron result dim " + std::to_string(target) +
                                         " exceeds cap " + std::to_string(dim_limits().max_kron));
    const int da = a.dim(), db = b.dim();
    CMatrix c(static_cast<int>(target));
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j) {
            const cd aij = a(i, j);
            if (aij == cd{}) continue;
            for (int k = 0; k < db; ++k)
                for (int l = 0; l < db; ++l)
                    c(i * db + k, j * db + l) = aij * b(k, l);
        }
    return c;
}

double fro_norm(const CMatrix& a) {
    double s = 0.0;
    for (const cd& z : a.data()) s += std::norm(z);
    return std::sqrt(s);
}

double max_abs(const CMatrix& a) {
    double m = 0.0;
    for (const cd& z : a.data()) m = std::max(m, std::abs(z));
    return m;
}

std::vector<cd> vec(const CMatrix& x) {
    const int d = x.dim();
    std::vector<cd> v(size_t(d) * d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) v[size_t(j) * d + i] = x(i, j);
    return v;
}

CMatrix unvec(const std::vector<cd>& v, int dim) {
    if (static_cast<long>(v.size()) != static_cast<long>(dim) * dim)
        throw Error("dim-mismatch", "unvec length");
    CMatrix x(dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) x(i, j) = v[size_t(j) * dim + i];
    return x;
}

CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.dim() + b.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) c(i, j) = a(i, j);
    const int off = a.dim();
    for (int i = 0; i < b.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j) c(off + i, off + j) = b(i, j);
    return c;
}

CMatrix block(const CMatrix& a, int i0, int j0, int n) {
    if (i0 < 0 || j0 < 0 || i0 + n > a.dim() || j0 + n > a.dim())
        throw Error("dim-mismatch", "block out of range");
    CMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = a(i0 + i, j0 + j);
    return r;
}

double diff_norm(const CMatrix& a, const CMatrix& b) {
    require_same_dim("diff", a, b);
    double s = 0.0;
    for (size_t k = 0; k < a.data().size(); ++k) s += std::norm(a.data()[k] - b.data()[k]);
    return std::sqrt(s);
}

} // namespace isosym
