#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "helpers.hpp"

using namespace perturbed;
namespace fs = std::filesystem;

namespace {

struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& name, const std::string& contents)
        : path(fs::temp_directory_path() / name) {
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::error_code ec; fs::remove(path, ec); }
};

std::string export_gallery(const std::string& name) {
    return gallery_instance(name).problem.dump(2);
}

cli::RunConfig base_config(const std::string& command, const std::string& path) {
    cli::RunConfig config;
    config.command = command;
    config.problem_path = path;
    config.json = true;
    return config;
}

}  // namespace

TEST_CASE("problem files round-trip through gallery export") {
    const TempFile file("fpcert_test_quarter.json", export_gallery("quarter_map"));
    const Problem problem = load_problem_file(file.path.string());
    CHECK(problem.space.mode == Mode::Quotient);
    CHECK(problem.space.c == 2.0);
    CHECK_FALSE(problem.space.c_estimated);
    CHECK(problem.space.domain.dimension() == 1);
    CHECK(exact_distance(problem.space, {{1.0}, std::nullopt}, {{3.0}, std::nullopt}) ==
          doctest::Approx(2.0));
}

TEST_CASE("a missing floor is estimated and marked untrusted") {
    Json doc = gallery_instance("quarter_map").problem;
    doc.erase("c");
    const TempFile file("fpcert_test_noc.json", doc.dump());
    const Problem problem = load_problem_file(file.path.string());
    CHECK(problem.space.c_estimated);
    CHECK(problem.space.c > 0.0);
    CHECK(problem.space.c <= 2.0);

    // and certify refuses to emit bounds from it
    const auto result = cli::run(base_config("certify", file.path.string()));
    CHECK(result.exit_code == 2);
}

TEST_CASE("malformed problem files are reported, never a crash") {
    const TempFile garbage("fpcert_test_garbage.json", "{not json at all");
    CHECK(cli::run(base_config("axioms", garbage.path.string())).exit_code == 1);

    const TempFile missing("fpcert_test_missing.json", R"json({"domain": {"box": {"lo": [0], "hi": [1]}}})json");
    CHECK(cli::run(base_config("axioms", missing.path.string())).exit_code == 1);

    const TempFile bad_expr("fpcert_test_badexpr.json",
                            R"json({"domain": {"box": {"lo": [0], "hi": [1]}},
                                "D": "abs(x - ", "P": "1", "mode": "quotient", "c": 1, "T": "x"})json");
    const auto result = cli::run(base_config("axioms", bad_expr.path.string()));
    CHECK(result.exit_code == 1);
    CHECK(result.error.find("SyntaxError") != std::string::npos);

    CHECK(cli::run(base_config("axioms", "/nonexistent/file.json")).exit_code == 1);
}

TEST_CASE("axioms command verdicts and exit codes") {
    const TempFile good("fpcert_test_ax_good.json", export_gallery("quarter_map"));
    const auto pass = cli::run(base_config("axioms", good.path.string()));
    CHECK(pass.exit_code == 0);
    CHECK(pass.output.find("\"verdict\": \"pass\"") != std::string::npos);

    const TempFile bad("fpcert_test_ax_bad.json", export_gallery("triangle_violator"));
    const auto fail = cli::run(base_config("axioms", bad.path.string()));
    CHECK(fail.exit_code == 2);
    CHECK(fail.output.find("triangle") != std::string::npos);
}

TEST_CASE("subtractive spaces get axiom checking only") {
    const TempFile file("fpcert_test_sub.json", export_gallery("subtractive_demo"));
    CHECK(cli::run(base_config("axioms", file.path.string())).exit_code == 0);
    CHECK(cli::run(base_config("certify", file.path.string())).exit_code == 1);
    CHECK(cli::run(base_config("solve", file.path.string())).exit_code == 2);
}

TEST_CASE("classify reports both certificates") {
    const TempFile file("fpcert_test_classify.json", export_gallery("half_map"));
    const auto result = cli::run(base_config("classify", file.path.string()));
    CHECK(result.exit_code == 0);  // Banach validates
    CHECK(result.output.find("\"banach\"") != std::string::npos);
    CHECK(result.output.find("\"kannan\"") != std::string::npos);
}

TEST_CASE("solve command") {
    const TempFile file("fpcert_test_solve.json", export_gallery("quarter_map"));

    SUBCASE("default start converges") {
        const auto result = cli::run(base_config("solve", file.path.string()));
        CHECK(result.exit_code == 0);
        CHECK(result.output.find("\"stop_reason\": \"converged\"") != std::string::npos);
    }
    SUBCASE("x0 outside the domain box is a usage error") {
        auto config = base_config("solve", file.path.string());
        config.x0 = std::vector<double>{5.0};
        const auto result = cli::run(config);
        CHECK(result.exit_code == 1);
        CHECK(result.error.find("LeftDomain") != std::string::npos);
    }
    SUBCASE("trace file holds one JSON object per step plus a summary") {
        auto config = base_config("solve", file.path.string());
        config.trace_path = (fs::temp_directory_path() / "fpcert_test_trace.jsonl").string();
        const auto result = cli::run(config);
        CHECK(result.exit_code == 0);
        std::ifstream in(config.trace_path);
        REQUIRE(in.good());
        std::size_t lines = 0;
        bool summary_seen = false;
        std::string line;
        while (std::getline(in, line)) {
            const Json j = Json::parse(line);  // every line is valid JSON
            summary_seen = summary_seen || j.contains("summary");
            ++lines;
        }
        CHECK(lines >= 2);
        CHECK(summary_seen);
        fs::remove(config.trace_path);
    }
}

TEST_CASE("certify pipeline on an oracle-verified instance") {
    const TempFile file("fpcert_test_certify.json", export_gallery("quarter_map"));
    const auto result = cli::run(base_config("certify", file.path.string()));
    CHECK(result.exit_code == 0);
    const Json report = Json::parse(result.output);
    CHECK(report.at("verdict") == "pass");
    CHECK(report.at("certificate").at("alpha_bound").get<double>() < 0.5);
    CHECK(report.at("uniqueness").at("representatives").size() == 1);
    CHECK(report.at("starts").size() == 5);
}

TEST_CASE("identical runs produce byte-identical reports") {
    const TempFile file("fpcert_test_repro.json", export_gallery("quarter_map"));
    const auto a = cli::run(base_config("certify", file.path.string()));
    const auto b = cli::run(base_config("certify", file.path.string()));
    CHECK(a.output == b.output);
    CHECK(a.exit_code == b.exit_code);
}

TEST_CASE("gallery command lists and exports") {
    cli::RunConfig list;
    list.command = "gallery";
    list.json = true;
    const auto names = cli::run(list);
    CHECK(names.exit_code == 0);
    CHECK(names.output.find("quarter_map") != std::string::npos);
    CHECK(names.output.find("triangle_violator") != std::string::npos);

    cli::RunConfig exp;
    exp.command = "gallery";
    exp.gallery_name = "discont_kannan";
    const auto exported = cli::run(exp);
    CHECK(exported.exit_code == 0);
    const Json doc = Json::parse(exported.output);
    CHECK(doc.at("mode") == "quotient");

    cli::RunConfig unknown;
    unknown.command = "gallery";
    unknown.gallery_name = "no_such_instance";
    CHECK(cli::run(unknown).exit_code == 1);
}

TEST_CASE("certify flags a fabricated multi-fixed-point instance") {
    // identity on a two-element space: every point is fixed. The Kannan
    // estimate is +inf (invalid), so certification must fail.
    const TempFile file("fpcert_test_identity.json", R"json({
        "domain": {"finite": {"size": 2, "embedding": [[0], [1]]}},
        "D": "abs(x - y)", "P": "1", "mode": "quotient", "c": 1, "T": "x"})json");
    const auto result = cli::run(base_config("certify", file.path.string()));
    CHECK(result.exit_code == 2);
}
