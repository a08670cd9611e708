// Deterministic, seeded constructors of structured instances.  Every
// instance is certified (commutators, nilpotency orders, class residuals)
// before it is returned; generation retries derived seeds and throws
// "generation-failed" if certification keeps failing.
//
// The PRNG is xoshiro256++ seeded through splitmix64, so identical GenSpec
// values reproduce identical bytes (constants documented in the README).
#pragma once

#include "isosym/classify.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace isosym {

class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed);

    std::uint64_t next();
    double uniform();                 // [0, 1)
    double uniform(double lo, double hi);
    double gauss();                   // standard normal (Box-Muller)
    cd cgauss();                      // complex, E|z|^2 = 1
    int uniform_int(int lo, int hi);  // inclusive bounds

private:
    std::uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct GenSpec {
    std::uint64_t seed = 0;
    int dim = 4;
    std::string family;                 // "commuting", "unitary", "selfadjoint",
                                        // "mr", "isonil", "prop1", "thm1",
                                        // "thm2", "thm3", ...
    std::map<std::string, int> params;  // family-specific integers

    int param(const std::string& key, int fallback) const;
};

/// lambda * I + upper shift, dimension k.
CMatrix jordan_block(cd lambda, int k);

CMatrix random_unitary(const GenSpec& spec);
CMatrix random_selfadjoint(const GenSpec& spec);

/// Pairwise commuting matrices: polynomials p_i(J) in one seeded
/// upper-triangular J.  params: "nilpotent" (J strictly upper and the
/// polynomials have zero constant term).
std::vector<CMatrix> commuting_family(const GenSpec& spec, int count);

struct OperatorInstance {
    CMatrix op;
    int expected_order = 1;
};

/// Selfadjoint + commuting nilpotent of exact order n (params: "n");
/// expected minimal symmetry order 2n-1.
OperatorInstance mr_symmetric_instance(const GenSpec& spec);

/// Blockwise-scalar unitary + commuting nilpotent of exact order n;
/// expected minimal isometry order 2n-1.
OperatorInstance isometry_plus_nilpotent_instance(const GenSpec& spec);

// ---------------------------------------------------------------------------
// Structured multi-operator instances.  All are built inside a commutative
// algebra   {blockwise-scalar diagonal} x {polynomials in one block
// nilpotent}, which makes the commutation hypotheses exact by construction;
// the claimed orders are certified numerically before release.
// ---------------------------------------------------------------------------

struct Theorem1Instance {
    CMatrix a1, b1, a2, b2, s1, t1, s2, t2, x;
    // hypothesis orders: (m1,n1) for ((B1,A1),(B2,A2)), (r1,n2) for
    // ((S1,T1),(B2,A2)), (m2,s1o) for ((B1,A1),(S2,T2)), (r2,s2o) for
    // ((S1,T1),(S2,T2)).
    int m1 = 1, n1 = 1, r1 = 1, n2 = 1, m2 = 1, s1o = 1, r2 = 1, s2o = 1;
    std::map<std::string, double> certificates;  // commutators + residuals

    int m() const { return m1 > m2 ? m1 : m2; }
    int n() const { return n1 > n2 ? n1 : n2; }
    int r() const { return r1 > r2 ? r1 : r2; }
    int s() const { return s1o > s2o ? s1o : s2o; }
};

Theorem1Instance theorem1_instance(const GenSpec& spec);

struct Theorem2Instance {
    CMatrix a1, b1, a2, b2, m1op, m2op, n1op, n2op, x;
    int m = 1, n = 1;            // base pair orders
    int m1 = 2, n1 = 2;          // nilpotency orders of M1, N1
    int m2 = 2, n2 = 2;          // nilpotency orders of M2, N2
    bool partial_commutation = false;  // cross-pair commutators dropped
    std::map<std::string, double> certificates;

    int conclusion_m() const { return m + m1 + n1 - 2; }
    int conclusion_n() const { return n + m2 + n2 - 2; }
};

Theorem2Instance theorem2_instance(const GenSpec& spec);

/// Variant with the cross-pair commutation hypotheses deliberately violated
/// ([A1,A2] != 0 etc.); the delta-outside composition order is still
/// expected to vanish, the triangle-outside order is only recorded.
Theorem2Instance theorem2_partial_instance(const GenSpec& spec);

struct Theorem3Instance {
    CMatrix a;          // T1 (+) T2, block diagonal
    CMatrix x;          // block diagonal w.r.t. the same splitting
    int m = 1, n = 1;
    int p = 1;          // Drazin index (nilpotency order of T2)
    int core_dim = 0;   // d1
    bool strict_core = false;
    std::map<std::string, double> certificates;
};

/// params: "p" (index, default 2), "m", "n", "strict" (nontrivial
/// invertible core found by search), "x22" (0 forces the trailing block
/// of X to zero; default alternates by seed).
Theorem3Instance theorem3_instance(const GenSpec& spec);

struct Prop1Instance {
    CMatrix a1, b1, a2, b2, s, t, x;
    int m = 1, n = 1, tord = 1;
    std::map<std::string, double> certificates;
};

Prop1Instance prop1_instance(const GenSpec& spec);

/// Roots used by the lemma suite: a certified pair plus single triangle
/// and delta roots, all invertible.
struct LemmaBundle {
    PairInstance pair;        // left-(X,(m,n))-symmetric, certified
    CMatrix tri_b, tri_a, tri_x;
    int tri_m = 1;
    CMatrix del_b, del_a, del_x;
    int del_n = 1;
};

LemmaBundle lemma_bundle(const GenSpec& spec);

// Corollary bundles ---------------------------------------------------------

struct Cor01Instance {
    CMatrix a, b;             // [A,B] = [A,B*] = 0
    int m = 1, n = 1;         // A is (m,n)-isosymmetric (X = I)
    int r = 1, s = 1;         // B left-r-invertible by B*, s-symmetric
    std::map<std::string, double> certificates;
};
Cor01Instance cor01_instance(const GenSpec& spec);

struct Cor02Instance {
    CMatrix a1, b1, a2, b2, s1, t1, s2, t2, x;
    int m = 1, n = 1, r = 1, s = 1;
    std::map<std::string, double> certificates;
};
Cor02Instance cor02_instance(const GenSpec& spec);

struct Cor03Instance {
    CMatrix e1, f1, e2, f2, p1, q1, p2, q2, x;
    int m = 1, n = 1, r = 1, s = 1;   // maxed orders
    std::map<std::string, double> certificates;
};
Cor03Instance cor03_instance(const GenSpec& spec);

struct Cor04Instance {
    CMatrix s, t;
    int n = 1;
    std::map<std::string, double> certificates;
};
Cor04Instance cor04_instance(const GenSpec& spec);

struct Cor05Instance {
    CMatrix a, nil, x;
    int m = 1, n = 1;
    int n1 = 2;               // nilpotency order of nil
    std::map<std::string, double> certificates;
};
Cor05Instance cor05_instance(const GenSpec& spec);

} // namespace isosym
