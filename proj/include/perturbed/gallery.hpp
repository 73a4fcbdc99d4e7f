#pragma once

// Built-in instance gallery. Reference alpha and fixed-point values are
// derived from the grid oracles (never hand-asserted); the test suite
// recomputes them at the recorded grid step.

#include <optional>
#include <string>
#include <vector>

#include "perturbed/contraction.hpp"
#include "perturbed/problem_io.hpp"

namespace perturbed {

struct GalleryExpectation {
    std::optional<CertKind> kind;              // certificate expected to validate
    std::optional<double> alpha;               // oracle sup ratio for that kind
    std::optional<std::vector<double>> fixed_point;
    double oracle_grid_step = 1e-3;            // step the references were derived at
    std::string provenance;
};

struct GalleryInstance {
    std::string name;
    std::string summary;
    Json problem;  // exportable problem-file document
    GalleryExpectation expected;

    Problem load() const { return load_problem(problem); }
};

inline std::vector<GalleryInstance> gallery() {
    std::vector<GalleryInstance> out;

    {
        GalleryInstance g;
        g.name = "quarter_map";
        g.summary = "T = x/4 with D = 2|x-y|, P = 2; Kannan-valid, fixed point 0";
        g.problem = Json{
            {"domain", Json{{"box", Json{{"lo", {-1.0}}, {"hi", {1.0}}}}}},
            {"D", "2 * abs(x - y)"},
            {"P", "2"},
            {"mode", "quotient"},
            {"c", 2.0},
            {"T", "x / 4"},
            {"eq_tol", 1e-9},
        };
        g.expected = {CertKind::Kannan, 1.0 / 3.0, std::vector<double>{0.0}, 1e-3,
                      "sup-ratio and fixed-point grid oracles at step 1e-3"};
        out.push_back(std::move(g));
    }
    {
        GalleryInstance g;
        g.name = "half_map";
        g.summary = "T = x/2 on the same space; Banach-valid, Kannan-invalid";
        g.problem = Json{
            {"domain", Json{{"box", Json{{"lo", {-1.0}}, {"hi", {1.0}}}}}},
            {"D", "2 * abs(x - y)"},
            {"P", "2"},
            {"mode", "quotient"},
            {"c", 2.0},
            {"T", "x / 2"},
            {"eq_tol", 1e-9},
        };
        g.expected = {CertKind::Banach, 0.5, std::vector<double>{0.0}, 1e-3,
                      "sup-ratio oracle; Kannan sup is 1 at y = -x"};
        out.push_back(std::move(g));
    }
    {
        GalleryInstance g;
        g.name = "classical_kannan";
        g.summary = "P = c = 1: the classical Kannan setting as a special case";
        g.problem = Json{
            {"domain", Json{{"box", Json{{"lo", {-1.0}}, {"hi", {1.0}}}}}},
            {"D", "abs(x - y)"},
            {"P", "1"},
            {"mode", "quotient"},
            {"c", 1.0},
            {"T", "x / 4"},
            {"eq_tol", 1e-9},
        };
        g.expected = {CertKind::Kannan, 1.0 / 3.0, std::vector<double>{0.0}, 1e-3,
                      "sup-ratio and fixed-point grid oracles at step 1e-3"};
        out.push_back(std::move(g));
    }
    {
        GalleryInstance g;
        g.name = "discont_kannan";
        g.summary = "piecewise map with a jump at 1/2; Kannan-valid despite the discontinuity";
        g.problem = Json{
            {"domain", Json{{"box", Json{{"lo", {0.0}}, {"hi", {1.0}}}}}},
            {"D", "2 * abs(x - y)"},
            {"P", "2"},
            {"mode", "quotient"},
            {"c", 2.0},
            {"T", "if_lt(x, 0.5, x / 4, x / 5)"},
            {"eq_tol", 1e-9},
        };
        g.expected = {CertKind::Kannan, 1.0 / 3.0, std::vector<double>{0.0}, 1e-3,
                      "sup-ratio oracle at step 1e-3; fixed point by residual scan at 1e-6"};
        out.push_back(std::move(g));
    }
    {
        GalleryInstance g;
        g.name = "subtractive_demo";
        g.summary = "subtractive space with d = D - P = |x-y|; axiom checking only";
        g.problem = Json{
            {"domain", Json{{"box", Json{{"lo", {0.0}}, {"hi", {2.0}}}}}},
            {"D", "abs(x - y) + 1"},
            {"P", "1"},
            {"mode", "subtractive"},
            {"T", "x"},
            {"eq_tol", 1e-9},
        };
        g.expected = {};
        out.push_back(std::move(g));
    }
    {
        GalleryInstance g;
        g.name = "triangle_violator";
        g.summary = "d = |x-y|^2 is not a metric; exercises the axiom failure path";
        g.problem = Json{
            {"domain", Json{{"box", Json{{"lo", {0.0}}, {"hi", {2.0}}}}}},
            {"D", "pow(x - y, 2)"},
            {"P", "1"},
            {"mode", "quotient"},
            {"c", 1.0},
            {"T", "x / 2"},
            {"eq_tol", 1e-9},
        };
        g.expected.provenance = "triangle violation at (0, 1, 2) confirmed by grid oracle";
        out.push_back(std::move(g));
    }
    return out;
}

inline const GalleryInstance& gallery_instance(const std::string& name) {
    static const std::vector<GalleryInstance> instances = gallery();
    for (const auto& g : instances) {
        if (g.name == name) return g;
    }
    throw ProblemFileError("no gallery instance named '" + name + "'");
}

}  // namespace perturbed
