#pragma once

#include "loopalg/deviations.hpp"
#include "loopalg/loop_term.hpp"
#include "loopalg/series.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace loopalg {

enum class Verdict { Pass, Fail, Inconclusive };
std::string_view verdict_str(Verdict v);

// One verification case. Every pass/fail is an exact statement about
// rational coefficients; a fail always carries the first offending
// monomial or tensor term as a witness.
struct VerificationReport {
    std::string case_id;
    std::vector<std::pair<std::string, std::string>> params;
    Verdict verdict = Verdict::Pass;
    std::optional<std::string> witness;
    int truncation = 0;
    double millis = 0.0;
};

// Every monomial of magnus(t) - 1 contains each variable of s at least once.
bool term_is_balanced(const LoopTerm& t, const VarSet& s, int trunc);

// (phi(x)*phi(y)) \ phi(x*y): the failure of phi to be multiplicative in x.
// Requires y not to occur in phi.
LoopTerm homomorphism_deviation(const LoopTerm& phi, VarId x, VarId y);

// Checks that the multilinear parts over s_hat + {y} of phi(w, y) and
// phi(w*y) agree, where phi is balanced over s, x in s is the extension
// slot, w is a word over s_hat and y is fresh.
VerificationReport verify_multilinear_substitution(const LoopTerm& phi, VarId x,
                                                   const VarSet& s, const VarSet& s_hat,
                                                   const LoopTerm& w, VarId y, int trunc,
                                                   const VarTable& table,
                                                   std::string case_id);

// Cross-checks the two routes to the primitive operation of bidegree (m, n):
// the deviation expanded through the division solver must vanish below
// degree m+n+1 and match the subsequence recurrence there exactly.
VerificationReport verify_grancosa(int m, int n, bool prune = true);

// The lowest homogeneous part of magnus(t) - 1 is primitive; inconclusive
// when the truncated expansion is exactly 1.
VerificationReport verify_primitive_lowest(const LoopTerm& t, int trunc,
                                           const VarTable& table, std::string case_id);

// Random unit-constant series over the given variables: a handful of terms
// per degree with small rational coefficients.
Series random_unit_series(std::span<const VarId> vars, int trunc, std::mt19937_64& rng);

// Suites. Cases are independent and may be fanned out over `jobs` worker
// threads; reports always come back ordered by case index, and case RNGs
// are seeded per index so results do not depend on scheduling.
std::vector<VerificationReport> run_axioms_suite(int trunc, int cases,
                                                 std::uint64_t seed, int jobs = 1);
std::vector<VerificationReport> run_grancosa_suite(int max_total, bool prune,
                                                   int jobs = 1);
std::vector<VerificationReport> run_balance_suite(int cases, int subst_cases,
                                                  std::uint64_t seed, int jobs = 1);
std::vector<VerificationReport> run_grading_suite(int samples, int trunc,
                                                  std::uint64_t seed, int jobs = 1);
std::vector<VerificationReport> run_primitive_suite(int cases, int trunc,
                                                    std::uint64_t seed, int jobs = 1);

} // namespace loopalg
