#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "schema_validator.hpp"

namespace {

std::string g_binary;

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr interleaved
};

/// Runs the CLI under a scrubbed OSCIBATH_CONFIG unless the caller sets one.
RunResult run_cli(const std::string& args, const std::string& env = "") {
    const std::string prefix = env.empty() ? "env -u OSCIBATH_CONFIG " : "env " + env + " ";
    const std::string command = prefix + g_binary + " " + args + " 2>&1";
    FILE* pipe = ::popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buffer[4096];
    while (std::size_t got = std::fread(buffer, 1, sizeof buffer, pipe))
        result.output.append(buffer, got);
    const int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::size_t count_lines(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    return lines;
}

}  // namespace

TEST_CASE("mode spectrum output") {
    const auto run = run_cli("modes --n 4 --coupling 1");
    REQUIRE(run.exit_code == 0);
    const auto doc = nlohmann::json::parse(run.output);
    CHECK(doc["nondegenerate"][0].get<double>() == doctest::Approx(3.302775637731995));
    const auto errors = schemacheck::validate_file(
        std::string(OSCIBATH_SCHEMA_DIR) + "/spectrum.schema.json", doc);
    for (const auto& e : errors) MESSAGE(e);
    CHECK(errors.empty());

    const auto csv = run_cli("modes --n 4 --coupling 1 --format csv");
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.output.rfind("index,eigenvalue\n", 0) == 0);
    CHECK(count_lines(csv.output) == 5);
}

TEST_CASE("surd table against brute force") {
    const auto run = run_cli("table1 --format json");
    REQUIRE(run.exit_code == 0);
    const auto doc = nlohmann::json::parse(run.output);
    CHECK(doc["pass"] == true);
    REQUIRE(doc["rows"].size() == 9);
    CHECK(doc["rows"][0]["n"] == 2);
    for (const auto& row : doc["rows"])
        CHECK(row["max_abs_diff"].get<double>() <= 1e-10);

    // coupling scales every row linearly and keeps the brute-force agreement
    const auto scaled = run_cli("table1 --coupling 3.7 --format json");
    REQUIRE(scaled.exit_code == 0);
    const auto sdoc = nlohmann::json::parse(scaled.output);
    CHECK(sdoc["pass"] == true);
    CHECK(sdoc["rows"][0]["closed_plus"].get<double>() ==
          doctest::Approx(3.7 * doc["rows"][0]["closed_plus"].get<double>())
              .epsilon(1e-12));

    // the hidden hook drives the failure path and the nonzero exit code
    const auto broken = run_cli("table1 --inject-perturbation 1e-6 --format json");
    CHECK(broken.exit_code == 1);
    CHECK(nlohmann::json::parse(broken.output)["pass"] == false);
}

TEST_CASE("kernel evaluation and sweeps") {
    const auto run = run_cli("kernel sho --t 1 --x 1");
    REQUIRE(run.exit_code == 0);
    const auto doc = nlohmann::json::parse(run.output);
    CHECK(doc["re"].get<double>() == doctest::Approx(0.38885028963483875).epsilon(1e-12));
    CHECK(doc["im"].get<double>() == doctest::Approx(-0.19476757348620916).epsilon(1e-12));
    const auto errors = schemacheck::validate_file(
        std::string(OSCIBATH_SCHEMA_DIR) + "/kernel.schema.json", doc);
    for (const auto& e : errors) MESSAGE(e);
    CHECK(errors.empty());

    const auto sweep = run_cli("sweep sho --range 0.5:1.5:5");
    REQUIRE(sweep.exit_code == 0);
    CHECK(sweep.output.rfind("t,re,im,magnitude,phase\n", 0) == 0);
    CHECK(count_lines(sweep.output) == 6);

    const auto full = run_cli("kernel full --n 4 --coupling 0.3 --coords 0,0,0,0");
    CHECK(full.exit_code == 0);
}

TEST_CASE("exit codes map the failure taxonomy") {
    SUBCASE("invalid input exits 2") {
        CHECK(run_cli("modes --n 1 --coupling 1").exit_code == 2);
        CHECK(run_cli("modes --coupling 1").exit_code == 2);   // missing required
        CHECK(run_cli("verify nonsense").exit_code == 2);      // bad suite choice
        CHECK(run_cli("kernel sho --form paper_literal --x0 0.5").exit_code == 2);
    }
    SUBCASE("caustics and singular operators exit 3") {
        const auto caustic = run_cli("kernel sho --t 3.141592653589793");
        CHECK(caustic.exit_code == 3);
        CHECK(caustic.output.find("caustic") != std::string::npos);
    }
    SUBCASE("inverted modes exit 4 and report the critical coupling") {
        const auto inverted = run_cli("kernel pair --n 4 --coupling 0.8");
        CHECK(inverted.exit_code == 4);
        CHECK(inverted.output.find("C*") != std::string::npos);
    }
}

TEST_CASE("verification subcommand") {
    SUBCASE("spectrum suite emits schema-valid reports") {
        const auto run = run_cli("verify spectrum --format json");
        REQUIRE(run.exit_code == 0);
        const auto doc = nlohmann::json::parse(run.output);
        REQUIRE(doc.is_array());
        CHECK(doc.size() >= 2);
        const auto errors = schemacheck::validate_file(
            std::string(OSCIBATH_SCHEMA_DIR) + "/report.schema.json", doc);
        for (const auto& e : errors) MESSAGE(e);
        CHECK(errors.empty());
        for (const auto& entry : doc) CHECK(entry["pass"] == true);
    }
    SUBCASE("convergence study shrinks with the step count") {
        const auto run = run_cli("verify wn --convergence det");
        REQUIRE(run.exit_code == 0);
        CHECK(run.output.rfind("steps,value,target,abs_error\n", 0) == 0);
        std::vector<double> errors;
        std::istringstream in(run.output);
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            const auto last = line.rfind(',');
            errors.push_back(std::stod(line.substr(last + 1)));
        }
        REQUIRE(errors.size() == 4);
        for (std::size_t i = 1; i < errors.size(); ++i) CHECK(errors[i] < errors[i - 1]);
    }
    SUBCASE("fixed seed plus --no-timing reruns byte-identically") {
        const auto a = run_cli("verify spectrum --seed 7 --no-timing --format json");
        const auto b = run_cli("verify spectrum --seed 7 --no-timing --format json");
        REQUIRE(a.exit_code == 0);
        REQUIRE(b.exit_code == 0);
        CHECK(a.output == b.output);
    }
}

TEST_CASE("environment configuration") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto good = dir / "oscibath_cli_config.json";
    {
        std::ofstream out(good);
        out << R"({"format": "csv"})";
    }
    const auto run =
        run_cli("modes --n 4 --coupling 1", "OSCIBATH_CONFIG=" + good.string());
    CHECK(run.exit_code == 0);
    CHECK(run.output.rfind("index,eigenvalue\n", 0) == 0);

    const auto bad = dir / "oscibath_cli_config_bad.json";
    {
        std::ofstream out(bad);
        out << R"({"formt": "csv"})";
    }
    const auto rejected =
        run_cli("modes --n 4 --coupling 1", "OSCIBATH_CONFIG=" + bad.string());
    CHECK(rejected.exit_code == 2);
    CHECK(rejected.output.find("unknown key") != std::string::npos);

    std::filesystem::remove(good);
    std::filesystem::remove(bad);
}

int main(int argc, char** argv) {
    doctest::Context context;
    std::vector<char*> passthrough;
    for (int i = 0; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg.rfind("--binary=", 0) == 0)
            g_binary = arg.substr(9);
        else
            passthrough.push_back(argv[i]);
    }
    if (g_binary.empty()) {
        std::fprintf(stderr, "usage: test_cli --binary=<path to oscibath>\n");
        return 1;
    }
    context.applyCommandLine(int(passthrough.size()), passthrough.data());
    return context.run();
}
