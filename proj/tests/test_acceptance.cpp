#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "oscibath/verify.hpp"

using namespace oscibath;

// The release gate: every published criterion must pass inside its runtime
// budget. One line per criterion so a failing run names the culprit.
TEST_CASE("acceptance criteria") {
    verify::VerifyOptions opts;
    const auto results = verify::run_acceptance(verify::Suite::all, opts);
    REQUIRE(results.size() == 10);

    for (const auto& criterion : results) {
        std::printf("[%2d] %s  %-42s  %6.2fs (budget %.0fs)\n", criterion.index,
                    criterion.pass ? "PASS" : "FAIL", criterion.name.c_str(),
                    criterion.runtime_s, criterion.budget_s);
        for (const auto& detail : criterion.details) {
            if (!detail.pass)
                std::printf("      FAIL %s: rel_err=%.3e tol=%.3e\n",
                            detail.check_name.c_str(), detail.rel_error,
                            detail.tolerance);
        }
        CAPTURE(criterion.name);
        CHECK(criterion.pass);
        CHECK(criterion.runtime_s <= criterion.budget_s);
    }
    CHECK(verify::all_pass(results));
}
