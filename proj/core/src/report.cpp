#include "oscibath/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace oscibath::verify {

VerificationReport make_report(const std::string& name, Complex expected,
                               Complex computed, double rel_tol, double abs_floor) {
    VerificationReport r;
    r.check_name = name;
    r.expected = expected;
    r.computed = computed;
    r.abs_error = std::abs(computed - expected);
    const double scale = std::abs(expected);
    r.rel_error = scale > abs_floor ? r.abs_error / scale : r.abs_error;
    r.tolerance = rel_tol;
    r.pass = r.rel_error <= rel_tol;
    return r;
}

VerificationReport make_flag_report(const std::string& name, Complex expected,
                                    Complex computed, double tolerance, bool pass) {
    VerificationReport r;
    r.check_name = name;
    r.expected = expected;
    r.computed = computed;
    r.abs_error = std::abs(computed - expected);
    const double scale = std::abs(expected);
    r.rel_error = scale > 1e-12 ? r.abs_error / scale : r.abs_error;
    r.tolerance = tolerance;
    r.pass = pass;
    return r;
}

bool all_pass(const std::vector<VerificationReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const VerificationReport& r) { return r.pass; });
}

namespace {

nlohmann::json value_to_json(Complex z) {
    if (z.imag() == 0.0) return z.real();
    return nlohmann::json{{"re", z.real()}, {"im", z.imag()}};
}

}  // namespace

std::string reports_to_json(const std::vector<VerificationReport>& reports, int indent,
                            bool zero_runtimes) {
    auto arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json entry;
        entry["check_name"] = r.check_name;
        entry["expected"] = value_to_json(r.expected);
        entry["computed"] = value_to_json(r.computed);
        entry["abs_error"] = r.abs_error;
        entry["rel_error"] = r.rel_error;
        entry["tolerance"] = r.tolerance;
        entry["pass"] = r.pass;
        entry["runtime_ms"] = zero_runtimes ? 0 : r.runtime_ms;
        arr.push_back(std::move(entry));
    }
    return arr.dump(indent);
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports,
                           bool zero_runtimes) {
    std::ostringstream out;
    out.precision(17);
    out << "check_name,expected_re,expected_im,computed_re,computed_im,"
           "abs_error,rel_error,tolerance,pass,runtime_ms\n";
    for (const auto& r : reports) {
        out << r.check_name << ',' << r.expected.real() << ',' << r.expected.imag() << ','
            << r.computed.real() << ',' << r.computed.imag() << ',' << r.abs_error << ','
            << r.rel_error << ',' << r.tolerance << ',' << (r.pass ? "true" : "false")
            << ',' << (zero_runtimes ? 0 : r.runtime_ms) << '\n';
    }
    return out.str();
}

std::string reports_to_human(const std::vector<VerificationReport>& reports) {
    std::ostringstream out;
    for (const auto& r : reports) {
        out << (r.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(48)
            << r.check_name << std::right << "  rel_err=" << std::scientific
            << std::setprecision(3) << r.rel_error << "  tol=" << r.tolerance << '\n';
    }
    return out.str();
}

}  // namespace oscibath::verify
