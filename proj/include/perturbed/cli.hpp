#pragma once

// Command implementations behind the fpcert tool. Kept header-level and
// process-free so tests can drive them in-process and compare reports
// byte for byte.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "perturbed/axioms.hpp"
#include "perturbed/contraction.hpp"
#include "perturbed/gallery.hpp"
#include "perturbed/oracle.hpp"
#include "perturbed/problem_io.hpp"
#include "perturbed/reports.hpp"
#include "perturbed/solver.hpp"

namespace perturbed::cli {

struct RunConfig {
    std::string command;  // axioms | classify | solve | certify | gallery
    std::string problem_path;
    std::string gallery_name;  // gallery command: instance to export ("" lists)
    std::uint64_t seed = 42;
    std::uint64_t budget = 10'000;
    double tol = 1e-9;
    std::uint64_t max_iter = 1'000'000;
    std::optional<std::vector<double>> x0;
    std::string trace_path;
    bool json = false;
};

struct RunResult {
    int exit_code = 0;  // 0 pass, 1 usage/config error, 2 verdict failure
    std::string output;
    std::string error;
};

namespace detail {

inline Json config_json(const RunConfig& config) {
    Json j;
    j["command"] = config.command;
    if (!config.problem_path.empty()) j["problem"] = config.problem_path;
    j["seed"] = config.seed;
    j["budget"] = config.budget;
    j["tol"] = config.tol;
    j["max_iter"] = config.max_iter;
    if (config.x0) j["x0"] = *config.x0;
    if (!config.trace_path.empty()) j["trace"] = config.trace_path;
    return j;
}

inline SpaceElement resolve_x0(const PerturbedSpace& space, const RunConfig& config) {
    if (!config.x0) return space.domain.center();
    if (space.domain.is_finite()) {
        if (config.x0->size() != 1) {
            throw ProblemFileError("--x0 for a finite domain is a single element index");
        }
        return space.domain.element_at(static_cast<std::size_t>((*config.x0)[0]));
    }
    if (!space.domain.contains(*config.x0)) {
        throw LeftDomain("starting point is outside the domain box");
    }
    return SpaceElement{*config.x0, std::nullopt};
}

// Five deterministic starting points: center, both box corners, and the
// quarter points of the diagonal.
inline std::vector<SpaceElement> multi_starts(const Domain& domain) {
    std::vector<SpaceElement> starts;
    if (domain.is_finite()) {
        const std::size_t m = domain.cardinality();
        for (std::size_t idx : {m / 2, std::size_t{0}, m - 1, m / 4, (3 * m) / 4}) {
            SpaceElement e = domain.element_at(std::min(idx, m - 1));
            bool seen = false;
            for (const auto& s : starts) seen = seen || s == e;
            if (!seen) starts.push_back(std::move(e));
        }
        return starts;
    }
    const Box& b = domain.box();
    for (double t : {0.5, 0.0, 1.0, 0.25, 0.75}) {
        std::vector<double> coords(b.lo.size());
        for (std::size_t i = 0; i < coords.size(); ++i) {
            coords[i] = b.lo[i] + t * (b.hi[i] - b.lo[i]);
        }
        starts.push_back(SpaceElement{std::move(coords), std::nullopt});
    }
    return starts;
}

inline void write_trace_file(const RunConfig& config, const IterationTrace& trace) {
    if (config.trace_path.empty()) return;
    std::ofstream out(config.trace_path);
    if (!out) throw ProblemFileError("cannot write trace file: " + config.trace_path);
    out << trace_jsonl(trace);
}

inline std::string render_human(const Json& report, int indent = 0) {
    std::ostringstream out;
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    for (const auto& [key, value] : report.items()) {
        if (value.is_object()) {
            out << pad << key << ":\n" << render_human(value, indent + 1);
        } else {
            out << pad << key << ": " << value.dump() << "\n";
        }
    }
    return out.str();
}

inline std::string render(const RunConfig& config, const Json& report) {
    if (config.json) return report.dump(2) + "\n";
    return render_human(report);
}

inline RunResult run_axioms(const RunConfig& config, const Problem& problem) {
    Json report;
    report["config"] = config_json(config);
    bool pass = true;
    if (problem.space.mode == Mode::Quotient) {
        const AxiomReport floor = check_floor(problem.space, config.budget, config.seed);
        report["floor"] = to_json(floor);
        pass = pass && floor.pass();
    }
    const AxiomReport axioms = check_metric_axioms(problem.space, config.budget, config.seed);
    report["axioms"] = to_json(axioms);
    pass = pass && axioms.pass();
    report["verdict"] = pass ? "pass" : "fail";
    return {pass ? 0 : 2, render(config, report), ""};
}

inline RunResult run_classify(const RunConfig& config, const Problem& problem) {
    Json report;
    report["config"] = config_json(config);
    bool any_valid = false;
    for (CertKind kind : {CertKind::Banach, CertKind::Kannan}) {
        try {
            const ContractionCertificate cert =
                estimate_coefficient(problem.space, problem.map, kind, config.budget, config.seed);
            report[to_string(kind)] = to_json(cert);
            any_valid = any_valid || cert.valid;
        } catch (const NoInformativePairs& e) {
            report[to_string(kind)] = Json{{"error", e.code()}, {"message", e.what()}};
        }
    }
    report["verdict"] = any_valid ? "pass" : "fail";
    return {any_valid ? 0 : 2, render(config, report), ""};
}

inline ContractionCertificate pick_certificate(const RunConfig& config, const Problem& problem) {
    const ContractionCertificate kannan = estimate_coefficient(
        problem.space, problem.map, CertKind::Kannan, config.budget, config.seed);
    if (kannan.valid) return kannan;
    const ContractionCertificate banach = estimate_coefficient(
        problem.space, problem.map, CertKind::Banach, config.budget, config.seed);
    if (banach.valid) return banach;
    throw InvalidCertificate("neither the Kannan nor the Banach condition certifies");
}

inline RunResult run_solve(const RunConfig& config, const Problem& problem) {
    Json report;
    report["config"] = config_json(config);
    const SpaceElement x0 = resolve_x0(problem.space, config);
    const ContractionCertificate cert = pick_certificate(config, problem);
    report["certificate"] = to_json(cert);
    const IterationTrace trace =
        solve(problem.space, problem.map, cert, x0, config.tol, config.max_iter);
    write_trace_file(config, trace);
    report["trace"] = trace_summary(trace);
    const bool converged = trace.stop_reason == StopReason::Converged;
    report["verdict"] = converged ? "pass" : "fail";
    return {converged ? 0 : 2, render(config, report), ""};
}

inline RunResult run_certify(const RunConfig& config, const Problem& problem) {
    Json report;
    report["config"] = config_json(config);
    bool pass = true;

    if (problem.space.mode != Mode::Quotient) {
        throw NotQuotientMode("certify requires a quotient-mode space");
    }
    if (problem.space.c_estimated) {
        report["floor_note"] =
            "floor c was sample-estimated; refusing bound-emitting certification";
        report["verdict"] = "fail";
        return {2, render(config, report), ""};
    }

    const AxiomReport floor = check_floor(problem.space, config.budget, config.seed);
    report["floor"] = to_json(floor);
    pass = pass && floor.pass();

    const AxiomReport axioms = check_metric_axioms(problem.space, config.budget, config.seed);
    report["axioms"] = to_json(axioms);
    pass = pass && axioms.pass();

    Json starts = Json::array();
    if (pass) {
        const ContractionCertificate cert = estimate_coefficient(
            problem.space, problem.map, CertKind::Kannan, config.budget, config.seed);
        report["certificate"] = to_json(cert);
        if (!cert.valid) {
            pass = false;
        } else {
            std::vector<SpaceElement> fixed_points;
            for (const SpaceElement& x0 : detail::multi_starts(problem.space.domain)) {
                const IterationTrace trace =
                    solve(problem.space, problem.map, cert, x0, config.tol, config.max_iter);
                Json s;
                s["x0"] = x0.coords;
                s["trace"] = trace_summary(trace);
                starts.push_back(std::move(s));
                if (trace.stop_reason == StopReason::Converged) {
                    fixed_points.push_back(*trace.fixed_point);
                } else {
                    pass = false;
                }
            }
            report["starts"] = std::move(starts);
            if (!fixed_points.empty()) {
                const UniquenessResult unique =
                    verify_uniqueness(problem.space, cert, std::move(fixed_points));
                Json u;
                Json reps = Json::array();
                for (const auto& r : unique.representatives) reps.push_back(r.coords);
                u["representatives"] = std::move(reps);
                u["violation"] = unique.violation;
                if (unique.violation) u["error"] = "UniquenessViolation";
                report["uniqueness"] = std::move(u);
                pass = pass && !unique.violation;
            }
        }
    }
    report["verdict"] = pass ? "pass" : "fail";
    return {pass ? 0 : 2, render(config, report), ""};
}

inline RunResult run_gallery(const RunConfig& config) {
    if (config.gallery_name.empty()) {
        Json report = Json::array();
        for (const auto& g : gallery()) {
            report.push_back(Json{{"name", g.name}, {"summary", g.summary}});
        }
        return {0, config.json ? report.dump(2) + "\n" : render_human(Json{{"gallery", report}}),
                ""};
    }
    const GalleryInstance& g = gallery_instance(config.gallery_name);
    return {0, g.problem.dump(2) + "\n", ""};
}

}  // namespace detail

inline RunResult run(const RunConfig& config) {
    try {
        if (config.command == "gallery") return detail::run_gallery(config);
        if (config.problem_path.empty()) {
            return {1, "", "a problem file is required for '" + config.command + "'"};
        }
        const Problem problem = load_problem_file(config.problem_path, config.seed);
        if (config.command == "axioms") return detail::run_axioms(config, problem);
        if (config.command == "classify") return detail::run_classify(config, problem);
        if (config.command == "solve") return detail::run_solve(config, problem);
        if (config.command == "certify") return detail::run_certify(config, problem);
        return {1, "", "unknown command: " + config.command};
    } catch (const InvalidCertificate& e) {
        return {2, "", std::string(e.code()) + ": " + e.what()};
    } catch (const NoInformativePairs& e) {
        return {2, "", std::string(e.code()) + ": " + e.what()};
    } catch (const Error& e) {
        return {1, "", std::string(e.code()) + ": " + e.what()};
    } catch (const std::exception& e) {
        return {1, "", std::string("error: ") + e.what()};
    }
}

}  // namespace perturbed::cli
