#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "isosym/drazin.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace isosym;
using namespace isosym::testutil;

TEST_CASE("drazin index") {
    const CMatrix inv = {{2.0, 1.0}, {0.0, 3.0}};
    CHECK(drazin_index(inv) == 1);
    CHECK(drazin_index(jordan_block(0.0, 3)) == 3);
    // rank sequence 2, 1, 1
    const CMatrix mixed = direct_sum(CMatrix{{0.0, 1.0}, {0.0, 0.0}}, CMatrix{{1.0}});
    CHECK(drazin_index(mixed) == 2);
    CHECK(drazin_index(CMatrix(3)) == 1);   // zero matrix
}

TEST_CASE("core-nilpotent decomposition on canonical cases") {
    {
        const CMatrix t = {{2.0, 0.0}, {0.0, 0.0}};
        const DrazinDecomposition d = core_nilpotent(t);
        CHECK(d.index == 1);
        CHECK(d.core.dim() == 1);
        CHECK(std::abs(d.core(0, 0)) == doctest::Approx(2.0));
        CHECK(near(d.drazin, CMatrix{{0.5, 0.0}, {0.0, 0.0}}, 1e-13));
    }
    {
        // Fully nilpotent input: empty core, zero inverse.
        const CMatrix t = jordan_block(0.0, 4);
        const DrazinDecomposition d = core_nilpotent(t);
        CHECK(d.core.dim() == 0);
        CHECK(d.index == 4);
        CHECK(fro_norm(d.drazin) == 0.0);
    }
    {
        // Idempotent: T^2 = T forces the Drazin inverse to equal T.
        const CMatrix t = {{1.0, 1.0}, {0.0, 0.0}};
        const DrazinDecomposition d = core_nilpotent(t);
        CHECK(d.index == 1);
        CHECK(near(d.drazin, t, 1e-12));
    }
}

TEST_CASE("drazin inverse agrees with the plain inverse on invertible input") {
    for (std::uint64_t s = 1; s <= 10; ++s) {
        const int dim = 2 + static_cast<int>(s % 4);
        CMatrix t = random_dense(s * 3 + 1, dim);
        for (int i = 0; i < dim; ++i) t(i, i) += 2.5;
        CHECK(near(drazin_inverse(t), inverse(t), 1e-9 * cond2(t)));
    }
    CHECK(fro_norm(drazin_inverse(CMatrix(3))) == 0.0);
    const CMatrix sig = direct_sum(CMatrix{{1.0, 0.0}, {0.0, -1.0}}, CMatrix{{0.0}});
    CHECK(near(drazin_inverse(sig), sig, 1e-13));
}

namespace {

// Random T with controlled rank deficiency: a similarity applied to an
// (invertible (+) nilpotent) seed.
CMatrix random_rank_deficient(std::uint64_t seed, int dim) {
    Xoshiro256pp rng(seed);
    const int d2 = static_cast<int>(rng.next() % std::min(4, dim));
    const int d1 = dim - d2;
    CMatrix core(d1);
    for (int i = 0; i < d1; ++i) {
        for (int j2 = 0; j2 < d1; ++j2) core(i, j2) = 0.4 * rng.cgauss();
        core(i, i) += cd(1.2, 0.3 * rng.gauss());
    }
    CMatrix nil(d2);
    for (int i = 0; i + 1 < d2; ++i) nil(i, i + 1) = rng.uniform(0.6, 1.4);
    GenSpec us{seed ^ 0xBADC0FFEull, dim, "unitary", {}};
    const CMatrix u = random_unitary(us);
    return u * direct_sum(core, nil) * adjoint(u);
}

} // namespace

TEST_CASE("drazin axioms on random rank-deficient matrices") {
    const Tolerance tol;
    for (std::uint64_t s = 1; s <= 300; ++s) {
        const int dim = 2 + static_cast<int>(s % 7);   // up to 8
        const CMatrix t = random_rank_deficient(s, dim);
        const DrazinDecomposition d = core_nilpotent(t, tol);
        const double scale = d.diagnostics.at("axiom-scale");
        CHECK(d.diagnostics.at("axiom-commute") <= tol.threshold(scale));
        CHECK(d.diagnostics.at("axiom-td2t") <= tol.threshold(scale));
        CHECK(d.diagnostics.at("axiom-tp1td") <= tol.threshold(scale));
        CHECK(d.diagnostics.at("similarity-residual") <=
              tol.threshold(10.0 * (1.0 + fro_norm(t))));
        // Derived axiom Td T Td = Td and index consistency.
        CHECK(diff_norm(d.drazin * t * d.drazin, d.drazin) <= tol.threshold(scale));
        CHECK(drazin_index(t, tol) == d.index);
        // T2 is nilpotent of order exactly p (or the core is everything).
        if (d.nilpotent.dim() > 0) {
            CHECK(d.diagnostics.at("nilpotent-power") <= tol.threshold(1.0 + fro_norm(t)));
            if (d.index > 1) CHECK(d.diagnostics.at("nilpotent-power-prev") > 1e-6);
        }
    }
}

TEST_CASE("ill-conditioned splittings are rejected") {
    // range(T) and null(T) nearly coincide.
    const CMatrix t = {{1e-9, 1.0}, {0.0, 0.0}};
    CHECK_THROWS_WITH_AS(void(core_nilpotent(t)), doctest::Contains("ill-conditioned-splitting"),
                         Error);
}

TEST_CASE("decomposition similarity reproduces the operator") {
    for (std::uint64_t s = 1; s <= 25; ++s) {
        const CMatrix t = random_rank_deficient(s * 7 + 2, 6);
        const DrazinDecomposition d = core_nilpotent(t);
        const CMatrix rebuilt = d.similarity * direct_sum(d.core, d.nilpotent) *
                                inverse(d.similarity);
        CHECK(diff_norm(rebuilt, t) <= 1e-9 * (1.0 + fro_norm(t)));
        if (d.core.dim() > 0) CHECK(d.diagnostics.at("core-sigma-min") > 1e-8);
    }
}
