#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "isosym/drazin.hpp"
#include "isosym/generators.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace isosym;
using namespace isosym::testutil;

TEST_CASE("prng and generators are deterministic in the seed") {
    Xoshiro256pp a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    Xoshiro256pp c(124);
    bool differs = false;
    for (int i = 0; i < 10; ++i) differs = differs || (a.next() != c.next());
    CHECK(differs);

    GenSpec spec{77, 5, "unitary", {}};
    CHECK(diff_norm(random_unitary(spec), random_unitary(spec)) == 0.0);
    GenSpec t1{9, 4, "thm1", {}};
    const Theorem1Instance i1 = theorem1_instance(t1);
    const Theorem1Instance i2 = theorem1_instance(t1);
    CHECK(diff_norm(i1.x, i2.x) == 0.0);
    CHECK(diff_norm(i1.a1, i2.a1) == 0.0);
    CHECK(i1.m1 == i2.m1);
}

TEST_CASE("jordan blocks") {
    CHECK(near(jordan_block(0.0, 2), CMatrix{{0.0, 1.0}, {0.0, 0.0}}, 0.0));
    CHECK(near(jordan_block(1.0, 2), CMatrix{{1.0, 1.0}, {0.0, 1.0}}, 0.0));
    CHECK(fro_norm(power(jordan_block(0.0, 3), 3)) == 0.0);
}

TEST_CASE("random unitary and selfadjoint") {
    for (std::uint64_t s = 1; s <= 10; ++s) {
        GenSpec us{s, 6, "unitary", {}};
        const CMatrix u = random_unitary(us);
        CHECK(diff_norm(adjoint(u) * u, CMatrix::identity(6)) <= 1e-12);
        GenSpec hs{s, 6, "selfadjoint", {}};
        const CMatrix h = random_selfadjoint(hs);
        CHECK(diff_norm(h, adjoint(h)) == 0.0);
    }
    GenSpec big{1, 17, "unitary", {}};
    CHECK_THROWS_WITH_AS(void(random_unitary(big)), doctest::Contains("dim-too-large"), Error);
}

TEST_CASE("commuting families") {
    GenSpec spec{21, 5, "commuting", {}};
    const auto fam = commuting_family(spec, 4);
    for (size_t i = 0; i < fam.size(); ++i)
        for (size_t j = i + 1; j < fam.size(); ++j) {
            const double scale = 1.0 + fro_norm(fam[i]) * fro_norm(fam[j]);
            CHECK(fro_norm(commutator(fam[i], fam[j])) <= 1e-10 * scale);
        }
    // nilpotent variant: zero constant terms in a strictly upper J
    GenSpec nil{22, 5, "commuting", {{"nilpotent", 1}}};
    const auto nf = commuting_family(nil, 3);
    for (const auto& n : nf) CHECK(fro_norm(power(n, 5)) == 0.0);
    CHECK_THROWS_WITH_AS(void(commuting_family(spec, 7)), doctest::Contains("config-error"),
                         Error);
}

TEST_CASE("selfadjoint plus nilpotent instances") {
    // n = 2 on the 2x2 canonical block
    GenSpec s2{1, 2, "mr", {{"n", 2}}};
    const OperatorInstance inst2 = mr_symmetric_instance(s2);
    CHECK(inst2.expected_order == 3);
    const auto r2 = minimal_order(OrderKind::Delta, adjoint(inst2.op), inst2.op,
                                  CMatrix::identity(2), 8);
    CHECK(r2.order == 3);

    // n = 3 with padding: expected order 5, confirmed by sweep
    GenSpec s3{2, 5, "mr", {{"n", 3}}};
    const OperatorInstance inst3 = mr_symmetric_instance(s3);
    CHECK(inst3.expected_order == 5);
    const auto r3 = minimal_order(OrderKind::Delta, adjoint(inst3.op), inst3.op,
                                  CMatrix::identity(5), 10);
    CHECK(r3.order == 5);
}

TEST_CASE("unitary plus nilpotent instances") {
    GenSpec s2{3, 4, "isonil", {{"n", 2}}};
    const OperatorInstance inst = isometry_plus_nilpotent_instance(s2);
    CHECK(inst.expected_order == 3);
    const auto r = minimal_order(OrderKind::Triangle, adjoint(inst.op), inst.op,
                                 CMatrix::identity(4), 8);
    CHECK(r.order == 3);

    GenSpec s3{4, 3, "isonil", {{"n", 3}}};
    const OperatorInstance inst3 = isometry_plus_nilpotent_instance(s3);
    CHECK(inst3.expected_order == 5);
    const auto r3 = minimal_order(OrderKind::Triangle, adjoint(inst3.op), inst3.op,
                                  CMatrix::identity(3), 10);
    CHECK(r3.order == 5);
}

TEST_CASE("theorem1 instances are hypothesis-certified") {
    for (std::uint64_t s = 1; s <= 8; ++s) {
        GenSpec spec{s, 4 + static_cast<int>(s % 3), "thm1", {}};
        const Theorem1Instance inst = theorem1_instance(spec);
        CHECK(inst.certificates.count("hyp-ii") == 1);
        PairInstance p{inst.b1, inst.a1, inst.b2, inst.a2, inst.x, inst.m1, inst.n1, {}};
        CHECK(residual_pair_symmetric(p).verdict);
        PairInstance q{inst.s1, inst.t1, inst.s2, inst.t2, inst.x, inst.r2, inst.s2o, {}};
        CHECK(residual_pair_symmetric(q).verdict);
        CHECK(fro_norm(commutator(inst.a1, inst.t1)) <= 1e-10 * 10);
    }
}

TEST_CASE("theorem2 instances") {
    GenSpec spec{5, 5, "thm2", {{"m1", 2}, {"n1", 2}, {"m2", 2}, {"n2", 2}}};
    const Theorem2Instance inst = theorem2_instance(spec);
    CHECK(fro_norm(power(inst.m1op, inst.m1)) == 0.0);
    CHECK(fro_norm(power(inst.n1op, inst.n1)) == 0.0);
    if (inst.m1 > 1) CHECK(fro_norm(power(inst.m1op, inst.m1 - 1)) > 0.0);
    PairInstance p{inst.b1, inst.a1, inst.b2, inst.a2, inst.x, inst.m, inst.n, {}};
    CHECK(residual_pair_symmetric(p).verdict);

    // Degenerate perturbations collapse to the base pair.
    GenSpec triv{6, 4, "thm2", {{"m1", 1}, {"n1", 1}, {"m2", 1}, {"n2", 1}}};
    const Theorem2Instance t = theorem2_instance(triv);
    CHECK(fro_norm(t.m1op) == 0.0);
    CHECK(t.conclusion_m() == t.m);
    CHECK(t.conclusion_n() == t.n);
}

TEST_CASE("theorem2 partial instances violate only the cross commutators") {
    GenSpec spec{7, 4, "thm2", {}};
    const Theorem2Instance inst = theorem2_partial_instance(spec);
    CHECK(inst.partial_commutation);
    CHECK(fro_norm(commutator(inst.a1, inst.a2)) > 1e-2);
    CHECK(fro_norm(commutator(inst.a1, inst.m1op)) <= 1e-10 * 10);
    CHECK(fro_norm(commutator(inst.a2, inst.m2op)) <= 1e-10 * 10);
}

TEST_CASE("theorem3 instances") {
    for (int p = 1; p <= 3; ++p) {
        GenSpec spec{static_cast<std::uint64_t>(10 + p), 6, "thm3", {{"p", p}}};
        const Theorem3Instance inst = theorem3_instance(spec);
        CHECK(inst.p == p);
        CHECK(drazin_index(inst.a) == p);
        CHECK(inst.core_dim == 6 - p);
        // block-diagonal X with a certified trailing block
        CHECK(inst.certificates.at("hyp-isosymmetry") <= 1e-8);
    }
    // strict core mode
    GenSpec strict{31, 5, "thm3", {{"p", 2}, {"strict", 1}}};
    const Theorem3Instance si = theorem3_instance(strict);
    CHECK(si.strict_core);
    CHECK(drazin_index(si.a) == 2);
}

TEST_CASE("prop1 instances satisfy all five hypotheses") {
    GenSpec spec{8, 4, "prop1", {}};
    const Prop1Instance inst = prop1_instance(spec);
    const double xn = fro_norm(inst.x);
    CHECK(Tolerance{}.is_zero(fro_norm(triangle_power(inst.b1, inst.a1, inst.x, inst.m)),
                              triangle_scale(inst.b1, inst.a1, inst.m, xn)));
    CHECK(Tolerance{}.is_zero(fro_norm(delta_power(inst.b2, inst.a2, inst.x, inst.n)),
                              delta_scale(inst.b2, inst.a2, inst.n, xn)));
    CHECK(Tolerance{}.is_zero(fro_norm(triangle_power(inst.s, inst.t, inst.x, inst.tord)),
                              triangle_scale(inst.s, inst.t, inst.tord, xn)));
    CHECK(Tolerance{}.is_zero(fro_norm(delta_power(inst.s, inst.t, inst.x, inst.tord)),
                              delta_scale(inst.s, inst.t, inst.tord, xn)));
}

TEST_CASE("corollary bundles certify their hypotheses") {
    GenSpec spec{15, 4, "", {}};
    const Cor01Instance c1 = cor01_instance(spec);
    CHECK(fro_norm(commutator(c1.a, adjoint(c1.b))) <= 1e-9);
    const Cor02Instance c2 = cor02_instance(spec);
    CHECK(c2.certificates.count("hyp-i") == 1);
    const Cor03Instance c3 = cor03_instance(spec);
    CHECK(c3.x.dim() <= 4);
    const Cor04Instance c4 = cor04_instance(spec);
    CHECK(c4.certificates.at("s-isometry") <= 1e-8);
    const Cor05Instance c5 = cor05_instance(spec);
    CHECK(fro_norm(power(c5.nil, c5.n1)) == 0.0);
}
