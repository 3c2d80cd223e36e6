#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "oscibath/report.hpp"
#include "oscibath/run_config.hpp"
#include "schema_validator.hpp"

using namespace oscibath;
using verify::make_flag_report;
using verify::make_report;

TEST_CASE("output format parsing") {
    CHECK(parse_format("json") == OutputFormat::json);
    CHECK(parse_format("csv") == OutputFormat::csv);
    CHECK(parse_format("human") == OutputFormat::human);
    CHECK_THROWS_AS(parse_format("yaml"), InvalidInput);
    CHECK(std::string(to_string(OutputFormat::csv)) == "csv");
}

TEST_CASE("run configuration") {
    SUBCASE("defaults") {
        const auto cfg = RunConfig::from_json_text("{}");
        CHECK(cfg.hbar == 1.0);
        CHECK(cfg.seed == 20260814ULL);
        CHECK(cfg.format == OutputFormat::json);
        CHECK(cfg.tolerances.empty());
    }
    SUBCASE("full document") {
        const auto cfg = RunConfig::from_json_text(
            R"({"hbar": 0.5, "seed": 7, "format": "csv",
                "tolerances": {"det-cosine": 1e-5}})");
        CHECK(cfg.hbar == 0.5);
        CHECK(cfg.seed == 7);
        CHECK(cfg.format == OutputFormat::csv);
        CHECK(cfg.tolerance_or("det-cosine", 1.0) == 1e-5);
        CHECK(cfg.tolerance_or("absent", 0.25) == 0.25);
    }
    SUBCASE("strictness") {
        CHECK_THROWS_AS(RunConfig::from_json_text(R"({"hbarr": 1})"), InvalidInput);
        CHECK_THROWS_AS(RunConfig::from_json_text(R"({"hbar": 0})"), InvalidInput);
        CHECK_THROWS_AS(RunConfig::from_json_text(R"({"hbar": "one"})"), InvalidInput);
        CHECK_THROWS_AS(RunConfig::from_json_text(R"({"seed": -2})"), InvalidInput);
        CHECK_THROWS_AS(RunConfig::from_json_text(R"({"seed": 1.5})"), InvalidInput);
        CHECK_THROWS_AS(RunConfig::from_json_text(R"({"format": "yaml"})"), InvalidInput);
        CHECK_THROWS_AS(RunConfig::from_json_text(R"({"tolerances": 3})"), InvalidInput);
        CHECK_THROWS_AS(RunConfig::from_json_text(R"({"tolerances": {"x": 0}})"),
                        InvalidInput);
        CHECK_THROWS_AS(RunConfig::from_json_text("[1, 2]"), InvalidInput);
        CHECK_THROWS_AS(RunConfig::from_json_text("{not json"), InvalidInput);
    }
    SUBCASE("file and environment loading") {
        const auto path =
            std::filesystem::temp_directory_path() / "oscibath_test_config.json";
        {
            std::ofstream out(path);
            out << R"({"seed": 99, "format": "human"})";
        }
        const auto cfg = RunConfig::from_file(path.string());
        CHECK(cfg.seed == 99);
        CHECK(cfg.format == OutputFormat::human);
        CHECK_THROWS_AS(RunConfig::from_file("/nonexistent/oscibath.json"), InvalidInput);

        ::setenv("OSCIBATH_CONFIG", path.string().c_str(), 1);
        const auto from_env = RunConfig::from_environment();
        REQUIRE(from_env.has_value());
        CHECK(from_env->seed == 99);
        ::setenv("OSCIBATH_CONFIG", "", 1);
        CHECK(!RunConfig::from_environment().has_value());
        ::unsetenv("OSCIBATH_CONFIG");
        CHECK(!RunConfig::from_environment().has_value());
        std::filesystem::remove(path);
    }
}

TEST_CASE("verification reports") {
    SUBCASE("relative comparison with absolute fallback") {
        const auto ok = make_report("near", {2.0, 0.0}, {2.0 + 1e-7, 0.0}, 1e-6);
        CHECK(ok.pass);
        CHECK(ok.rel_error == doctest::Approx(5e-8).epsilon(1e-6));

        const auto bad = make_report("far", {2.0, 0.0}, {2.1, 0.0}, 1e-6);
        CHECK(!bad.pass);

        // a vanishing expectation switches to the absolute error
        const auto zero = make_report("null", {0.0, 0.0}, {1e-13, 0.0}, 1e-12);
        CHECK(zero.pass);
        CHECK(zero.rel_error == zero.abs_error);
    }
    SUBCASE("flagged reports keep the caller's verdict") {
        const auto r = make_flag_report("monotone", {1.0, 0.0}, {5.0, 0.0}, 0.0, true);
        CHECK(r.pass);
        CHECK(r.abs_error == 4.0);
    }
    SUBCASE("all_pass") {
        std::vector<verify::VerificationReport> reports{
            make_report("a", {1.0, 0.0}, {1.0, 0.0}, 1e-12),
            make_report("b", {1.0, 0.0}, {2.0, 0.0}, 1e-12)};
        CHECK(!verify::all_pass(reports));
        reports.pop_back();
        CHECK(verify::all_pass(reports));
    }
    SUBCASE("json rendering validates against the schema") {
        std::vector<verify::VerificationReport> reports{
            make_report("real-valued", {1.5, 0.0}, {1.5, 0.0}, 1e-9),
            make_report("complex-valued", {0.0, -0.5}, {1e-13, -0.5}, 1e-9)};
        reports[0].runtime_ms = 12;
        const auto doc = nlohmann::json::parse(verify::reports_to_json(reports));
        REQUIRE(doc.is_array());
        REQUIRE(doc.size() == 2);
        CHECK(doc[0]["expected"].is_number());
        CHECK(doc[1]["expected"].is_object());
        CHECK(doc[1]["expected"]["im"] == -0.5);
        CHECK(doc[0]["runtime_ms"] == 12);

        const auto errors = schemacheck::validate_file(
            std::string(OSCIBATH_SCHEMA_DIR) + "/report.schema.json", doc);
        for (const auto& e : errors) MESSAGE(e);
        CHECK(errors.empty());

        const auto zeroed =
            nlohmann::json::parse(verify::reports_to_json(reports, 2, true));
        CHECK(zeroed[0]["runtime_ms"] == 0);
    }
    SUBCASE("csv and human rendering") {
        std::vector<verify::VerificationReport> reports{
            make_report("only", {1.0, 0.0}, {1.0, 0.0}, 1e-9)};
        const auto csv = verify::reports_to_csv(reports);
        CHECK(csv.rfind("check_name,expected_re,expected_im,computed_re,computed_im,"
                        "abs_error,rel_error,tolerance,pass,runtime_ms\n",
                        0) == 0);
        CHECK(csv.find("only,") != std::string::npos);
        const auto human = verify::reports_to_human(reports);
        CHECK(human.rfind("PASS", 0) == 0);
        CHECK(human.find("only") != std::string::npos);
    }
}

TEST_CASE("schema validator self-checks") {
    using nlohmann::json;
    const json schema = json::parse(R"({
        "type": "object",
        "required": ["name", "value"],
        "additionalProperties": false,
        "properties": {
            "name": {"type": "string"},
            "value": {"oneOf": [{"type": "number"},
                                {"type": "object",
                                 "required": ["re", "im"],
                                 "properties": {"re": {"type": "number"},
                                                "im": {"type": "number"}}}]},
            "items": {"type": "array", "minItems": 1, "items": {"type": "integer"}}
        }
    })");

    CHECK(schemacheck::validate(schema, json::parse(R"({"name": "a", "value": 1})")).empty());
    CHECK(schemacheck::validate(
              schema, json::parse(R"({"name": "a", "value": {"re": 1.0, "im": 2.0}})"))
              .empty());
    CHECK(!schemacheck::validate(schema, json::parse(R"({"name": "a"})")).empty());
    CHECK(!schemacheck::validate(schema, json::parse(R"({"name": 3, "value": 1})")).empty());
    CHECK(!schemacheck::validate(schema,
                                 json::parse(R"({"name": "a", "value": 1, "extra": 0})"))
               .empty());
    CHECK(!schemacheck::validate(schema,
                                 json::parse(R"({"name": "a", "value": {"re": 1.0}})"))
               .empty());
    CHECK(!schemacheck::validate(
               schema, json::parse(R"({"name": "a", "value": 1, "items": []})"))
               .empty());
}
