// fpcert: axiom checking, contraction classification, certified Picard
// solving, and gallery export for perturbed metric space problems.

#include <cstdio>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "perturbed/cli.hpp"

namespace {

std::vector<double> parse_coords(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--x0", "expected comma-separated numbers");
        }
    }
    if (out.empty()) throw CLI::ValidationError("--x0", "expected comma-separated numbers");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixed-point certification toolkit for perturbed metric spaces"};
    app.require_subcommand(1);

    perturbed::cli::RunConfig config;
    std::string x0_text;

    auto add_common = [&](CLI::App* cmd, bool needs_problem) {
        if (needs_problem) {
            cmd->add_option("problem", config.problem_path, "problem file (JSON)")->required();
        }
        cmd->add_option("--seed", config.seed, "PRNG seed")->capture_default_str();
        cmd->add_option("--budget", config.budget, "sampling budget")->capture_default_str();
        cmd->add_flag("--json", config.json, "machine-readable JSON output");
    };

    CLI::App* axioms = app.add_subcommand("axioms", "audit the metric axioms and the floor on P");
    add_common(axioms, true);

    CLI::App* classify =
        app.add_subcommand("classify", "estimate Banach and Kannan contraction certificates");
    add_common(classify, true);

    CLI::App* solve = app.add_subcommand("solve", "run the certified Picard iteration");
    add_common(solve, true);
    solve->add_option("--tol", config.tol, "stopping tolerance in exact-metric units")
        ->capture_default_str();
    solve->add_option("--max-iter", config.max_iter, "iteration budget")->capture_default_str();
    solve->add_option("--x0", x0_text, "starting point, comma-separated coordinates");
    solve->add_option("--trace", config.trace_path, "write the full trace as JSON lines");

    CLI::App* certify =
        app.add_subcommand("certify", "floor + axioms + certificate + multi-start solve");
    add_common(certify, true);
    certify->add_option("--tol", config.tol, "stopping tolerance in exact-metric units")
        ->capture_default_str();
    certify->add_option("--max-iter", config.max_iter, "iteration budget")->capture_default_str();

    CLI::App* gallery = app.add_subcommand("gallery", "list or export built-in instances");
    gallery->add_option("name", config.gallery_name, "instance to export as a problem file");
    gallery->add_flag("--json", config.json, "machine-readable JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    config.command = app.get_subcommands().front()->get_name();
    if (!x0_text.empty()) {
        try {
            config.x0 = parse_coords(x0_text);
        } catch (const CLI::Error& e) {
            std::fprintf(stderr, "%s\n", e.what());
            return 1;
        }
    }

    const perturbed::cli::RunResult result = perturbed::cli::run(config);
    if (!result.output.empty()) std::fputs(result.output.c_str(), stdout);
    if (!result.error.empty()) std::fprintf(stderr, "%s\n", result.error.c_str());
    return result.exit_code;
}
