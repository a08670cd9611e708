// Executable verification of the result catalogue: hypothesis checks,
// conclusion residuals, sharpness probes and discrepancy logging.
//
// A report's verdict is Pass only when all hypothesis AND conclusion checks
// pass; a failed hypothesis yields Vacuous, never Fail.  Residuals that are
// documented-but-not-required (alternative statement forms, deliberately
// broken composition orders) go into `informational` and never affect the
// verdict.
#pragma once

#include "isosym/drazin.hpp"
#include "isosym/generators.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace isosym {

enum class Verdict { Pass, Fail, Vacuous };

std::string to_string(Verdict v);

struct Check {
    std::string label;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = true;
};

struct VerificationReport {
    std::string id;          // "lem0", "lem4", "cor04", "thm3", ...
    std::uint64_t seed = 0;
    int dim = 0;
    std::vector<Check> hypotheses;
    std::vector<Check> conclusions;
    std::vector<Check> informational;
    std::vector<std::string> notes;   // sharpness / discrepancy findings
    Verdict verdict = Verdict::Pass;
    double runtime_ms = 0.0;

    void finalize();   // computes verdict from the check lists
};

std::vector<VerificationReport> verify_lemmas(const LemmaBundle& bundle,
                                              std::uint64_t seed,
                                              const Tolerance& tol = {});

enum class Prop1Combo { B, AandE, CandE, C, AandD, BandD };

std::string to_string(Prop1Combo c);

VerificationReport verify_prop1(const Prop1Instance& inst, Prop1Combo combo,
                                std::uint64_t seed, const Tolerance& tol = {});

std::vector<VerificationReport> verify_corollaries(const GenSpec& spec,
                                                   const Tolerance& tol = {});

VerificationReport verify_theorem1(const Theorem1Instance& inst,
                                   std::uint64_t seed,
                                   bool term_level = false,
                                   const Tolerance& tol = {});

VerificationReport verify_theorem2(const Theorem2Instance& inst,
                                   std::uint64_t seed,
                                   const Tolerance& tol = {});

/// Binomial expansion of a nilpotent-perturbed transform as a standalone
/// identity on seeded commuting (A, N) with arbitrary B:
///   (L_B R_{A+N} - I)^K (X) = sum_j C(K,j) B^j [(L_B R_A - I)^{K-j} X] N^j
///   (L_B - R_{A+N})^K (X)   = sum_j (-1)^j C(K,j) [(L_B - R_A)^{K-j} X] N^j
VerificationReport verify_perturbation_expansions(const GenSpec& spec,
                                                  const Tolerance& tol = {});

VerificationReport verify_theorem3(const Theorem3Instance& inst,
                                   std::uint64_t seed,
                                   const Tolerance& tol = {});

/// Compares both written-out double-sum variants against the composed
/// transform on commuting inputs and records which one matches.
VerificationReport verify_double_sum_variants(const GenSpec& spec,
                                              const Tolerance& tol = {});

/// Exact evaluation over Gaussian integers vs. the floating route for
/// integer-entry instances (dim <= 4, orders <= 3).  No division ever
/// occurs in the binomial sums, so exact integer arithmetic suffices.
VerificationReport verify_exact_oracle(const GenSpec& spec,
                                       const Tolerance& tol = {});

struct SuiteConfig {
    std::vector<std::uint64_t> seeds = {1};
    std::vector<int> dims = {2, 4, 6};
    int max_order = 3;
    std::vector<std::string> suites = {"all"};
    Tolerance tol;

    void validate() const;   // throws "config-error"
};

struct SuiteReport {
    SuiteConfig config;
    std::vector<VerificationReport> cells;
    int pass = 0;
    int fail = 0;
    int vacuous = 0;

    void tally();
    bool ok() const { return fail == 0; }
};

/// Runs the selected suites over the seed x dim grid; deterministic given
/// the config (cells sorted by suite/seed/dim key).
SuiteReport run_suite(const SuiteConfig& config);

} // namespace isosym
