#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "isosym/harness.hpp"
#include "isosym/json_io.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace isosym;
using namespace isosym::testutil;

namespace {

bool all_pass(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports)
        if (r.verdict != Verdict::Pass) return false;
    return true;
}

const Check* find_check(const std::vector<Check>& checks, const std::string& label) {
    for (const auto& c : checks)
        if (c.label.find(label) != std::string::npos) return &c;
    return nullptr;
}

} // namespace

TEST_CASE("lemma suite passes on certified bundles") {
    for (std::uint64_t s = 1; s <= 5; ++s) {
        GenSpec spec{s, 4, "", {}};
        const auto reports = verify_lemmas(lemma_bundle(spec), s);
        CHECK(reports.size() == 5);
        CHECK(all_pass(reports));
    }
}

TEST_CASE("prop1 verifies every combination on a shared instance") {
    GenSpec spec{3, 4, "prop1", {}};
    const Prop1Instance inst = prop1_instance(spec);
    for (Prop1Combo combo : {Prop1Combo::B, Prop1Combo::AandE, Prop1Combo::CandE,
                             Prop1Combo::C, Prop1Combo::AandD, Prop1Combo::BandD}) {
        const VerificationReport r = verify_prop1(inst, combo, 3);
        CAPTURE(to_string(combo));
        CHECK(r.verdict == Verdict::Pass);
    }
    // Degenerate factor pair (S = T = I, t = 1) adds nothing to the order.
    Prop1Instance triv = inst;
    triv.s = CMatrix::identity(4);
    triv.t = CMatrix::identity(4);
    triv.tord = 1;
    const VerificationReport r = verify_prop1(triv, Prop1Combo::C, 3);
    CHECK(r.verdict == Verdict::Pass);
    REQUIRE(!r.conclusions.empty());
    CHECK(r.conclusions[0].label.find("(" + std::to_string(inst.m + 0)) != std::string::npos);
}

TEST_CASE("corollary suite") {
    for (std::uint64_t s = 1; s <= 4; ++s) {
        GenSpec spec{s, 4, "", {}};
        const auto reports = verify_corollaries(spec);
        CHECK(reports.size() == 5);
        for (const auto& r : reports) {
            CAPTURE(r.id);
            CHECK(r.verdict == Verdict::Pass);
        }
    }
}

TEST_CASE("cor04 canonical tensor witness at order five") {
    // S = T = the 2x2 unipotent Jordan block, a strict 3-isometry; the
    // composed transform of S (x) T at order (5,5) vanishes on the 4x4
    // tensor space.
    const CMatrix j = {{1.0, 1.0}, {0.0, 1.0}};
    const CMatrix js = adjoint(j);
    const CMatrix id2 = CMatrix::identity(2);
    const Tolerance tol;
    // hypotheses at n = 3
    CHECK(tol.is_zero(fro_norm(triangle_power(js, j, id2, 3)),
                      triangle_scale(js, j, 3, std::sqrt(2.0))));
    for (const auto& [b1, b2] : {std::pair{js, js}}) {
        CHECK(tol.is_zero(
            fro_norm(compose_mn(b1, j, b2, j, id2, 3, 3, ComposeOrder::TriangleFirstOutside)),
            compose_scale(b1, j, b2, j, 3, 3, std::sqrt(2.0))));
    }
    const CMatrix st = kron(j, j);
    const CMatrix sts = adjoint(st);
    const CMatrix id4 = CMatrix::identity(4);
    CHECK(tol.is_zero(
        fro_norm(compose_mn(sts, st, sts, st, id4, 5, 5, ComposeOrder::TriangleFirstOutside)),
        compose_scale(sts, st, sts, st, 5, 5, 2.0)));
}

TEST_CASE("cor05 canonical witness: perturbed Jordan block") {
    // The unipotent 2x2 Jordan block J is (I,(1,1))-isosymmetric and
    // commutes with the 2-nilpotent N = c e12; J + N is another unipotent
    // block and lands in the (I,(3,3)) class predicted by the order
    // arithmetic (1 + 2*2 - 2 on both sides).
    const CMatrix j = {{1.0, 1.0}, {0.0, 1.0}};
    CMatrix nil(2);
    nil(0, 1) = cd(0.7, 0.4);
    REQUIRE(fro_norm(commutator(j, nil)) == 0.0);
    const CMatrix pert = j + nil;
    const CMatrix ps = adjoint(pert);
    const CMatrix id = CMatrix::identity(2);
    const Tolerance tol;
    CHECK(tol.is_zero(
        fro_norm(compose_mn(ps, pert, ps, pert, id, 3, 3, ComposeOrder::TriangleFirstOutside)),
        compose_scale(ps, pert, ps, pert, 3, 3, std::sqrt(2.0))));
    // (1,1) no longer suffices for a generic X: the perturbed block is a
    // genuinely higher-order root in the delta direction.
    CHECK(fro_norm(delta_power(ps, pert, id, 2)) > 1e-3);
}

TEST_CASE("theorem1 verification with term-level expansion") {
    for (std::uint64_t s = 1; s <= 5; ++s) {
        GenSpec spec{s, 4, "thm1", {}};
        const Theorem1Instance inst = theorem1_instance(spec);
        const VerificationReport r = verify_theorem1(inst, s, /*term_level=*/true);
        CHECK(r.verdict == Verdict::Pass);
        CHECK(find_check(r.conclusions, "expansion-identity") != nullptr);
        CHECK(find_check(r.conclusions, "term-0-0") != nullptr);
    }
}

TEST_CASE("theorem1 becomes vacuous on a corrupted instance") {
    GenSpec spec{2, 4, "thm1", {}};
    Theorem1Instance inst = theorem1_instance(spec);
    inst.a1 = inst.a1 + random_dense(999, 4, 0.5);   // breaks commutation
    const VerificationReport r = verify_theorem1(inst, 2, false);
    CHECK(r.verdict == Verdict::Vacuous);
}

TEST_CASE("theorem2 full and partial variants") {
    for (std::uint64_t s = 1; s <= 5; ++s) {
        GenSpec spec{s, 4, "thm2", {}};
        const VerificationReport full = verify_theorem2(theorem2_instance(spec), s);
        CHECK(full.verdict == Verdict::Pass);

        const VerificationReport part = verify_theorem2(theorem2_partial_instance(spec), s);
        CHECK(part.verdict == Verdict::Pass);
        CHECK(part.id == "thm2-partial");
        // The triangle-outside order is recorded informationally and, for a
        // genuinely noncommuting instance, generally fails.
        CHECK(find_check(part.informational, "triangle-outside") != nullptr);
    }
}

TEST_CASE("theorem2 expansion identities as standalone checks") {
    for (std::uint64_t s = 1; s <= 10; ++s) {
        GenSpec spec{s, 4, "", {}};
        const VerificationReport r = verify_perturbation_expansions(spec);
        CHECK(r.verdict == Verdict::Pass);
    }
}

TEST_CASE("theorem2 sharpness at the reduced order") {
    // Identity base pair, order-2 perturbations M1 = e12 + e34 and
    // M2 = e13 + e24 (commuting, with M2 M1 = e14 nonzero), N_i = M_i*.
    // The conclusion bound is (3,3).  Reducing a single side still
    // vanishes (each perturbed transform is hereditarily nilpotent at its
    // own order), but at (2,2) the composite collapses to
    // -4 (M2 M1)* X (M2 M1), which has norm 4 |X_11|.
    const CMatrix id = CMatrix::identity(4);
    CMatrix m1(4), m2(4);
    m1(0, 1) = 1.0;
    m1(2, 3) = 1.0;
    m2(0, 2) = 1.0;
    m2(1, 3) = 1.0;
    REQUIRE(fro_norm(commutator(m1, m2)) == 0.0);
    REQUIRE(fro_norm(power(m1, 2)) == 0.0);
    REQUIRE(fro_norm(power(m2, 2)) == 0.0);
    REQUIRE(fro_norm(m2 * m1) > 0.0);
    const CMatrix pb1 = id + adjoint(m1), pa1 = id + m1;
    const CMatrix pb2 = id + adjoint(m2), pa2 = id + m2;
    const Tolerance tol;
    CHECK(tol.is_zero(fro_norm(compose_mn(pb1, pa1, pb2, pa2, id, 3, 3,
                                          ComposeOrder::TriangleFirstOutside)),
                      compose_scale(pb1, pa1, pb2, pa2, 3, 3, 2.0)));
    CHECK(tol.is_zero(fro_norm(compose_mn(pb1, pa1, pb2, pa2, id, 2, 3,
                                          ComposeOrder::TriangleFirstOutside)),
                      compose_scale(pb1, pa1, pb2, pa2, 2, 3, 2.0)));
    CHECK(tol.is_zero(fro_norm(compose_mn(pb1, pa1, pb2, pa2, id, 3, 2,
                                          ComposeOrder::TriangleFirstOutside)),
                      compose_scale(pb1, pa1, pb2, pa2, 3, 2, 2.0)));
    const CMatrix reduced =
        compose_mn(pb1, pa1, pb2, pa2, id, 2, 2, ComposeOrder::TriangleFirstOutside);
    CHECK(fro_norm(reduced) == doctest::Approx(4.0));
    CHECK(fro_norm(reduced) >
          1e3 * tol.threshold(compose_scale(pb1, pa1, pb2, pa2, 2, 2, 2.0)));
}

TEST_CASE("theorem3 on the canonical signature instance") {
    // A = diag(1,-1,0) with X = I: the Drazin inverse equals A, the
    // restricted proof-form conclusions vanish, and the full-space
    // statement-form triangle residual equals 1 (the trailing block of X
    // survives).
    GenSpec spec{2, 3, "thm3", {{"p", 1}, {"m", 1}, {"n", 1}}};
    Theorem3Instance inst = theorem3_instance(spec);
    inst.a = direct_sum(CMatrix{{1.0, 0.0}, {0.0, -1.0}}, CMatrix{{0.0}});
    inst.x = CMatrix::identity(3);
    inst.m = inst.n = 1;
    inst.p = 1;
    inst.core_dim = 2;

    const VerificationReport r = verify_theorem3(inst, 2);
    CHECK(r.verdict == Verdict::Pass);
    const Check* stmt = find_check(r.informational, "stmt-i-ii-triangle");
    REQUIRE(stmt != nullptr);
    CHECK(stmt->residual == doctest::Approx(1.0));
    CHECK(!stmt->pass);
    const Check* sdel = find_check(r.informational, "stmt-i-delta");
    REQUIRE(sdel != nullptr);
    CHECK(sdel->residual <= 1e-12);
    const Check* probe = find_check(r.conclusions, "forcing-probe");
    REQUIRE(probe != nullptr);
    CHECK(probe->pass);
    // Hand value: perturbing X by the (1,3) corner makes the hypothesis
    // residual exactly 1 under this A at (m,n) = (1,1) and scaling 1.
    const CMatrix astar = adjoint(inst.a);
    CMatrix xp = CMatrix::identity(3);
    xp(0, 2) = 1.0;
    CHECK(fro_norm(compose_mn(astar, inst.a, astar, inst.a, xp, 1, 1,
                              ComposeOrder::TriangleFirstOutside)) == doctest::Approx(1.0));
}

TEST_CASE("theorem3 over generated instances") {
    for (std::uint64_t s = 1; s <= 8; ++s) {
        GenSpec spec{s, 4 + static_cast<int>(s % 4), "thm3",
                     {{"p", 1 + static_cast<int>(s % 3)}}};
        const VerificationReport r = verify_theorem3(theorem3_instance(spec), s);
        CAPTURE(s);
        CHECK(r.verdict == Verdict::Pass);
    }
    // Strict invertible core.
    GenSpec strict{4, 5, "thm3", {{"p", 2}, {"strict", 1}}};
    const VerificationReport r = verify_theorem3(theorem3_instance(strict), 4);
    CHECK(r.verdict == Verdict::Pass);
}

TEST_CASE("theorem3 degenerate nilpotent input") {
    // Fully nilpotent A: empty core, Drazin inverse zero; the restricted
    // conclusions hold as 0 = 0 and the kernel X keeps the hypothesis alive.
    Theorem3Instance inst;
    inst.a = jordan_block(0.0, 3);
    CMatrix x(3);
    x(2, 2) = 1.0;   // annihilated from the right, delta-kernel element
    inst.x = x;
    inst.m = inst.n = 1;
    inst.p = 3;
    inst.core_dim = 0;
    const VerificationReport r = verify_theorem3(inst, 0);
    CHECK(r.verdict == Verdict::Pass);
    bool noted = false;
    for (const auto& note : r.notes) noted = noted || note.find("empty core") != std::string::npos;
    CHECK(noted);
}

TEST_CASE("double-sum variant probe") {
    for (std::uint64_t s = 1; s <= 5; ++s) {
        GenSpec spec{s, 4, "", {}};
        const VerificationReport r = verify_double_sum_variants(spec);
        CHECK(r.verdict == Verdict::Pass);
    }
}

TEST_CASE("exact integer oracle matches floating evaluation") {
    for (std::uint64_t s = 1; s <= 5; ++s) {
        GenSpec spec{s, 4, "", {}};
        const VerificationReport r = verify_exact_oracle(spec);
        CHECK(r.verdict == Verdict::Pass);
        // floating binomial sums on small integer matrices are exact
        for (const auto& c : r.conclusions) CHECK(c.residual == 0.0);
    }
}

TEST_CASE("suite run aggregates deterministically") {
    SuiteConfig config;
    config.seeds = {1, 2};
    config.dims = {4};
    config.suites = {"lemmas", "thm3"};
    const SuiteReport a = run_suite(config);
    const SuiteReport b = run_suite(config);
    CHECK(a.ok());
    CHECK(a.fail == 0);
    CHECK(a.cells.size() == b.cells.size());
    for (size_t i = 0; i < a.cells.size(); ++i) {
        CHECK(a.cells[i].id == b.cells[i].id);
        CHECK(a.cells[i].verdict == b.cells[i].verdict);
        for (size_t k = 0; k < a.cells[i].conclusions.size(); ++k)
            CHECK(a.cells[i].conclusions[k].residual == b.cells[i].conclusions[k].residual);
    }
    const auto j = to_json(a);
    CHECK(j["summary"]["fail"] == 0);
}

TEST_CASE("suite config validation") {
    SuiteConfig config;
    config.max_order = 63;
    CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("config-error"), Error);
    SuiteConfig dims;
    dims.dims = {1};
    CHECK_THROWS_WITH_AS(dims.validate(), doctest::Contains("config-error"), Error);
    SuiteConfig bad;
    bad.suites = {"nonsense"};
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("config-error"), Error);
}

TEST_CASE("blockwise residual consistency for block-diagonal operators") {
    // For A = A1 (+) A2 and X = X1 (+) X2, the composed-transform residual
    // matrix is the direct sum of the blockwise residual matrices.
    const CMatrix a1 = random_dense(41, 3), a2 = random_dense(42, 2);
    const CMatrix x1 = random_dense(43, 3), x2 = random_dense(44, 2);
    const CMatrix a = direct_sum(a1, a2), x = direct_sum(x1, x2);
    const CMatrix as = adjoint(a);
    const CMatrix full = compose_mn(as, a, as, a, x, 2, 2, ComposeOrder::TriangleFirstOutside);
    const CMatrix b1 = compose_mn(adjoint(a1), a1, adjoint(a1), a1, x1, 2, 2,
                                  ComposeOrder::TriangleFirstOutside);
    const CMatrix b2 = compose_mn(adjoint(a2), a2, adjoint(a2), a2, x2, 2, 2,
                                  ComposeOrder::TriangleFirstOutside);
    CHECK(diff_norm(full, direct_sum(b1, b2)) <=
          1e-11 * compose_scale(as, a, as, a, 2, 2, fro_norm(x)));
}

TEST_CASE("vacuous cells never fail a suite") {
    SuiteReport report;
    VerificationReport cell;
    cell.hypotheses.push_back({"broken", 1.0, 0.0, false});
    cell.finalize();
    CHECK(cell.verdict == Verdict::Vacuous);
    report.cells.push_back(cell);
    report.tally();
    CHECK(report.vacuous == 1);
    CHECK(report.fail == 0);
    CHECK(report.ok());
}

TEST_CASE("genspec and suite config round-trip through json") {
    GenSpec spec{42, 5, "thm2", {{"m1", 3}, {"n2", 2}}};
    const GenSpec back = genspec_from_json(to_json(spec));
    CHECK(back.seed == spec.seed);
    CHECK(back.dim == spec.dim);
    CHECK(back.family == spec.family);
    CHECK(back.params == spec.params);

    SuiteConfig config;
    config.seeds = {3, 9};
    config.dims = {4, 6};
    config.max_order = 2;
    config.suites = {"thm1", "thm3"};
    config.tol.atol = 1e-11;
    const SuiteConfig cback = suite_config_from_json(to_json(config));
    CHECK(cback.seeds == config.seeds);
    CHECK(cback.dims == config.dims);
    CHECK(cback.max_order == config.max_order);
    CHECK(cback.suites == config.suites);
    CHECK(cback.tol.atol == config.tol.atol);
}

TEST_CASE("report json shape") {
    GenSpec spec{1, 4, "", {}};
    const VerificationReport r = verify_exact_oracle(spec);
    const auto j = to_json(r);
    CHECK(j["id"] == "exact-oracle");
    CHECK(j.contains("hypotheses"));
    CHECK(j.contains("conclusions"));
    CHECK(j.contains("verdict"));
    CHECK(j.contains("runtime_ms"));
}
