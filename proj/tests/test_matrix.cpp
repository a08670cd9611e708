#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "isosym/json_io.hpp"
#include "isosym/linalg.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace isosym;
using namespace isosym::testutil;

TEST_CASE("ring operations match the textbook formulas") {
    const CMatrix a = {{0.0, -1.0}, {1.0, 0.0}};
    CHECK(near(adjoint(a), CMatrix{{0.0, 1.0}, {-1.0, 0.0}}, 0.0));

    const CMatrix j = {{1.0, 1.0}, {0.0, 1.0}};
    CHECK(near(power(j, 2), CMatrix{{1.0, 2.0}, {0.0, 1.0}}, 0.0));
    CHECK(near(power(j, 0), CMatrix::identity(2), 0.0));

    const CMatrix x = random_dense(11, 3);
    CHECK(near(CMatrix::identity(3) * x, x, 0.0));
    CHECK_THROWS_WITH_AS(void(x * CMatrix::identity(2)), doctest::Contains("dim-mismatch"),
                         Error);
}

TEST_CASE("adjoint is an exact involution") {
    for (std::uint64_t s = 1; s <= 20; ++s) {
        const CMatrix a = random_dense(s, 5);
        CHECK(diff_norm(adjoint(adjoint(a)), a) == 0.0);
    }
}

TEST_CASE("commutator") {
    const CMatrix a = random_dense(3, 4);
    CHECK(fro_norm(commutator(a, a)) == 0.0);
    CHECK(fro_norm(commutator(CMatrix::identity(4), a)) == 0.0);
    // Direct 2x2 multiplication: [diag(1,2), e12] = -e12.
    const CMatrix d = {{1.0, 0.0}, {0.0, 2.0}};
    const CMatrix e12 = {{0.0, 1.0}, {0.0, 0.0}};
    CHECK(near(commutator(d, e12), CMatrix{{0.0, -1.0}, {0.0, 0.0}}, 0.0));
}

TEST_CASE("kron structure and the mixed-product identity") {
    const CMatrix e12 = {{0.0, 1.0}, {0.0, 0.0}};
    const CMatrix id2 = CMatrix::identity(2);
    const CMatrix shift = kron(e12, id2);
    CHECK(shift.dim() == 4);
    CHECK(shift(0, 2) == cd(1.0, 0.0));
    CHECK(shift(1, 3) == cd(1.0, 0.0));
    CHECK(fro_norm(shift) == doctest::Approx(std::sqrt(2.0)));

    for (std::uint64_t s = 1; s <= 25; ++s) {
        const CMatrix a = random_dense(4 * s, 3), b = random_dense(4 * s + 1, 2);
        const CMatrix c = random_dense(4 * s + 2, 3), d = random_dense(4 * s + 3, 2);
        // entry law
        CHECK(kron(a, b)(1 * 2 + 1, 2 * 2 + 0) == a(1, 2) * b(1, 0));
        // (A (x) B)(C (x) D) = AC (x) BD
        const double scale = fro_norm(a) * fro_norm(b) * fro_norm(c) * fro_norm(d);
        CHECK(diff_norm(kron(a, b) * kron(c, d), kron(a * c, b * d)) <= 1e-12 * scale);
        // kron(I,B) kron(A,I) = kron(A,B)
        const CMatrix id3 = CMatrix::identity(3);
        CHECK(diff_norm(kron(id3, b) * kron(a, CMatrix::identity(2)), kron(a, b)) <=
              1e-12 * scale);
    }

    CHECK_THROWS_WITH_AS(void(kron(random_dense(1, 9), random_dense(2, 9))),
                         doctest::Contains("dim-too-large"), Error);
}

TEST_CASE("Frobenius norm and submultiplicativity") {
    CHECK(fro_norm(CMatrix(3)) == 0.0);
    for (std::uint64_t s = 1; s <= 50; ++s) {
        const CMatrix a = random_dense(2 * s, 4), b = random_dense(2 * s + 1, 4);
        CHECK(fro_norm(a * b) <= fro_norm(a) * fro_norm(b) * (1 + 1e-12));
    }
}

TEST_CASE("numerical rank") {
    CHECK(numerical_rank(CMatrix{{1.0, 1.0}, {0.0, 0.0}}) == 1);
    // The square of a 3x3 nilpotent Jordan block keeps a single
    // superdiagonal entry.
    const CMatrix j3 = jordan_block(0.0, 3);
    CHECK(numerical_rank(power(j3, 2)) == 1);
    CHECK(numerical_rank(CMatrix::identity(5)) == 5);
    CHECK(numerical_rank(CMatrix(4)) == 0);
}

TEST_CASE("rank is adjoint-invariant for random rank-deficient matrices") {
    Xoshiro256pp rng(99);
    for (int rep = 0; rep < 1000; ++rep) {
        const int d = 2 + static_cast<int>(rng.next() % 7);   // d <= 8
        const int r = static_cast<int>(rng.next() % (d + 1));
        CMatrix a(d);
        for (int k = 0; k < r; ++k) {
            CMatrix u(d), v(d);
            std::vector<cd> cu(d), cv(d);
            for (int i = 0; i < d; ++i) {
                cu[i] = rng.cgauss();
                cv[i] = rng.cgauss();
            }
            for (int i = 0; i < d; ++i)
                for (int j2 = 0; j2 < d; ++j2) a(i, j2) += cu[i] * std::conj(cv[j2]);
        }
        CHECK(numerical_rank(a) == numerical_rank(adjoint(a)));
        CHECK(numerical_rank(a) <= r);
    }
}

TEST_CASE("svd reconstructs and orders singular values") {
    for (std::uint64_t s = 1; s <= 30; ++s) {
        const int d = 1 + static_cast<int>(s % 6);
        const CMatrix a = random_dense(s * 7 + 1, d);
        const Svd f = svd(a);
        CMatrix sig(d);
        for (int i = 0; i < d; ++i) sig(i, i) = f.sigma[i];
        CHECK(diff_norm(f.u * sig * adjoint(f.v), a) <= 1e-12 * (1 + fro_norm(a)));
        CHECK(diff_norm(adjoint(f.u) * f.u, CMatrix::identity(d)) <= 1e-12 * d);
        CHECK(diff_norm(adjoint(f.v) * f.v, CMatrix::identity(d)) <= 1e-12 * d);
        for (int i = 0; i + 1 < d; ++i) CHECK(f.sigma[i] >= f.sigma[i + 1]);
    }
    // Known spectrum: the 2x2 unipotent Jordan block has singular values
    // phi and 1/phi (golden ratio).
    const Svd f = svd(CMatrix{{1.0, 1.0}, {0.0, 1.0}});
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    CHECK(f.sigma[0] == doctest::Approx(phi));
    CHECK(f.sigma[1] == doctest::Approx(1.0 / phi));
}

TEST_CASE("inverse by elimination") {
    for (std::uint64_t s = 1; s <= 20; ++s) {
        const int d = 2 + static_cast<int>(s % 5);
        CMatrix a = random_dense(s * 13 + 5, d);
        for (int i = 0; i < d; ++i) a(i, i) += 2.0;   // keep well conditioned
        CHECK(diff_norm(a * inverse(a), CMatrix::identity(d)) <= 1e-11 * d);
    }
    CHECK_THROWS_WITH_AS(void(inverse(CMatrix{{1.0, 1.0}, {1.0, 1.0}})),
                         doctest::Contains("singular-matrix"), Error);
}

TEST_CASE("matrix JSON round trip and validation") {
    for (std::uint64_t s = 1; s <= 10; ++s) {
        const CMatrix a = random_dense(s, 1 + static_cast<int>(s % 5));
        const CMatrix b = matrix_from_json(matrix_to_json(a));
        CHECK(diff_norm(a, b) == 0.0);
    }
    CHECK_THROWS_WITH_AS(void(matrix_from_json(nlohmann::json{{"dim", 2}, {"data", {1, 2}}})),
                         doctest::Contains("bad-matrix-json"), Error);
    nlohmann::json wrong = matrix_to_json(CMatrix::identity(2));
    wrong["data"].erase(3);
    CHECK_THROWS_WITH_AS(void(matrix_from_json(wrong)), doctest::Contains("dim*dim"), Error);
    nlohmann::json named = matrix_to_json(CMatrix::identity(2));
    named["data"][2] = {1.0, "x"};
    CHECK_THROWS_WITH_AS(void(matrix_from_json(named)), doctest::Contains("data[2]"), Error);
}

TEST_CASE("tolerance policy") {
    const Tolerance tol;
    CHECK(tol.is_zero(5e-13, 0.0));
    CHECK(!tol.is_zero(5e-9, 1.0));
    CHECK(tol.is_zero(5e-9, 10.0));
    CHECK(tol.threshold(100.0) == doctest::Approx(1e-12 + 1e-7));
}

TEST_CASE("vec and unvec column stacking") {
    const CMatrix a = {{1.0, 2.0}, {3.0, 4.0}};
    const auto v = vec(a);
    CHECK(v[0] == cd(1.0, 0.0));   // (0,0)
    CHECK(v[1] == cd(3.0, 0.0));   // (1,0)
    CHECK(v[2] == cd(2.0, 0.0));   // (0,1)
    CHECK(diff_norm(unvec(v, 2), a) == 0.0);
}
