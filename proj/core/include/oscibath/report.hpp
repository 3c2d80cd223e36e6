#pragma once

#include <string>
#include <vector>

#include "oscibath/common.hpp"

namespace oscibath::verify {

/// One named check: expected vs computed (complex-or-real), both error
/// measures, pass flag and runtime.
struct VerificationReport {
    std::string check_name;
    Complex expected{0.0, 0.0};
    Complex computed{0.0, 0.0};
    double abs_error = 0.0;
    double rel_error = 0.0;
    double tolerance = 0.0;  // the bound rel_error (or abs_error) was held to
    bool pass = false;
    long runtime_ms = 0;
};

/// Builds a report comparing computed against expected with a relative
/// tolerance; falls back to absolute when |expected| < floor.
VerificationReport make_report(const std::string& name, Complex expected,
                               Complex computed, double rel_tol,
                               double abs_floor = 1e-12);

/// Report whose pass flag was decided by the caller (monotonicity checks,
/// deliberate-mismatch checks and the like). abs/rel errors are still
/// derived from the two values.
VerificationReport make_flag_report(const std::string& name, Complex expected,
                                    Complex computed, double tolerance, bool pass);

bool all_pass(const std::vector<VerificationReport>& reports);

/// JSON array of report objects; expected/computed are emitted as a plain
/// number when purely real, else as {"re": ..., "im": ...}.
/// zero_runtimes supports the byte-identical output contract.
std::string reports_to_json(const std::vector<VerificationReport>& reports,
                            int indent = 2, bool zero_runtimes = false);

/// CSV with columns check_name, expected_re, expected_im, computed_re,
/// computed_im, abs_error, rel_error, tolerance, pass, runtime_ms.
std::string reports_to_csv(const std::vector<VerificationReport>& reports,
                           bool zero_runtimes = false);

/// Fixed-width human-readable table, one "PASS|FAIL name ..." line per check.
std::string reports_to_human(const std::vector<VerificationReport>& reports);

}  // namespace oscibath::verify
