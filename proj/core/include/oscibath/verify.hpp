#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oscibath/report.hpp"
#include "oscibath/run_config.hpp"

namespace oscibath::verify {

enum class Suite { spectrum, wn, kernels, pde, all };

Suite parse_suite(const std::string& name);  // InvalidInput on unknown
const char* to_string(Suite suite);

struct VerifyOptions {
    std::uint64_t seed = 20260814ULL;
    int wn_steps = 2000;           // finest white-noise grid
    RunConfig config;              // tolerance overrides, hbar
};

/// One acceptance criterion: a named group of reports that must all pass
/// within the stated runtime budget.
struct CriterionResult {
    int index = 0;  // 1-based position in the published list
    std::string name;
    Suite suite = Suite::all;
    bool pass = false;
    double runtime_s = 0.0;
    double budget_s = 0.0;
    std::vector<VerificationReport> details;
};

/// Runs the ten acceptance criteria (or the subset belonging to a suite).
std::vector<CriterionResult> run_acceptance(Suite suite, const VerifyOptions& opts);

/// Flattens criterion results into one report list (suite runners and the
/// CLI (`verify`) consume this).
std::vector<VerificationReport> run_suite(Suite suite, const VerifyOptions& opts);

bool all_pass(const std::vector<CriterionResult>& results);

/// One "PASS|FAIL [k] name (runtime)" line per criterion.
std::string criteria_summary(const std::vector<CriterionResult>& results);

/// Convergence study rows for the CSV interface
/// (columns steps, value, target, abs_error).
struct ConvergenceRow {
    int steps = 0;
    double value = 0.0;
    double target = 0.0;
    double abs_error = 0.0;
};

enum class ConvergenceStudy { det, qform };

std::vector<ConvergenceRow> wn_convergence(ConvergenceStudy study, double omega,
                                           double time, double hbar,
                                           const std::vector<int>& steps);

std::string convergence_to_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace oscibath::verify
