// Dense complex square matrices and the tolerance policy shared by the
// whole toolkit.  Everything is a value: matrices are immutable-after-build
// in practice and all operations are pure functions.
#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace isosym {

using cd = std::complex<double>;

/// Runtime error carrying a stable machine-readable code.  Codes in use:
/// "dim-mismatch", "dim-too-large", "order-too-large", "singular-matrix",
/// "ill-conditioned-splitting", "generation-failed", "bad-matrix-json",
/// "config-error".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Size caps.  `max_kron` bounds the dimension of a Kronecker product
/// (and hence of superoperator matrices, which are built from them);
/// `max_instance` bounds generated instances and CLI inputs.  The
/// ISOSYM_MAX_DIM environment variable raises `max_instance` (and
/// `max_kron` to its square, capped at 4096).
struct DimLimits {
    int max_instance = 16;
    int max_kron = 64;
};

DimLimits& dim_limits();
void apply_dim_env();   // reads ISOSYM_MAX_DIM, if set

/// Zero test policy: a residual R counts as zero iff
///   ||R||_F <= atol + rtol * scale
/// where `scale` is computed per check from the operands (see the
/// *_scale helpers in elementary.hpp).
struct Tolerance {
    double atol = 1e-12;
    double rtol = 1e-9;

    double threshold(double scale) const { return atol + rtol * scale; }
    bool is_zero(double residual, double scale) const {
        return residual <= threshold(scale);
    }
};

/// Square complex matrix, row-major storage, binary64 components.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(int dim) : dim_(check_dim(dim)), a_(size_t(dim) * dim) {}

    /// Build from nested rows; every row must have the same length as the
    /// row count.
    CMatrix(std::initializer_list<std::initializer_list<cd>> rows);

    static CMatrix identity(int dim);
    static CMatrix zero(int dim) { return CMatrix(dim); }

    int dim() const { return dim_; }

    cd& operator()(int i, int j) { return a_[size_t(i) * dim_ + j]; }
    const cd& operator()(int i, int j) const { return a_[size_t(i) * dim_ + j]; }

    const std::vector<cd>& data() const { return a_; }
    std::vector<cd>& data() { return a_; }

    bool is_finite() const;

    CMatrix& operator+=(const CMatrix& rhs);
    CMatrix& operator-=(const CMatrix& rhs);
    CMatrix& operator*=(cd z);

private:
    static int check_dim(int d) {
        if (d < 0) throw Error("dim-mismatch", "negative dimension");
        return d;
    }

    int dim_ = 0;
    std::vector<cd> a_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cd z, CMatrix a);
CMatrix operator*(double x, const CMatrix& a);
CMatrix operator-(const CMatrix& a);

CMatrix adjoint(const CMatrix& a);     // conjugate transpose
CMatrix transpose(const CMatrix& a);
CMatrix conjugate(const CMatrix& a);

/// a^k with k >= 0; power(a, 0) is the identity.
CMatrix power(const CMatrix& a, int k);

/// [a, b] = ab - ba.
CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// Kronecker product; result dimension dim(a)*dim(b) must not exceed
/// dim_limits().max_kron ("dim-too-large" otherwise).
CMatrix kron(const CMatrix& a, const CMatrix& b);

double fro_norm(const CMatrix& a);
double max_abs(const CMatrix& a);

/// Column-stacking vec: vec(x)[j*d + i] = x(i, j).
std::vector<cd> vec(const CMatrix& x);
CMatrix unvec(const std::vector<cd>& v, int dim);

CMatrix direct_sum(const CMatrix& a, const CMatrix& b);

/// Square sub-block of size n starting at (i0, j0).
CMatrix block(const CMatrix& a, int i0, int j0, int n);

/// ||a - b||_F, with a dim check.
double diff_norm(const CMatrix& a, const CMatrix& b);

void require_same_dim(const char* op, const CMatrix& a, const CMatrix& b);

} // namespace isosym
