#pragma once

// Problem-file JSON: domain descriptor, DSL strings for D, P, T, mode,
// optional floor c and equality tolerance. Loading parses the
// expressions; a missing c in quotient mode is estimated from samples
// and marked untrusted.

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "perturbed/axioms.hpp"
#include "perturbed/errors.hpp"
#include "perturbed/selfmap.hpp"
#include "perturbed/space.hpp"

namespace perturbed {

using Json = nlohmann::ordered_json;

struct Problem {
    PerturbedSpace space;
    SelfMap map;
    Json source;  // the document the problem was loaded from
};

namespace detail {

inline constexpr std::uint64_t kFloorEstimateBudget = 4096;

inline std::vector<double> json_vector(const Json& j, const char* what) {
    if (!j.is_array()) throw ProblemFileError(std::string(what) + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw ProblemFileError(std::string(what) + " must contain numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace detail

inline Problem load_problem(const Json& doc, std::uint64_t seed = 42) {
    if (!doc.is_object()) throw ProblemFileError("problem document must be a JSON object");
    for (const char* key : {"domain", "D", "P", "mode", "T"}) {
        if (!doc.contains(key)) {
            throw ProblemFileError(std::string("problem file is missing field '") + key + "'");
        }
    }

    Problem problem;
    problem.source = doc;

    const Json& dom = doc.at("domain");
    if (dom.contains("box")) {
        Box box;
        box.lo = detail::json_vector(dom.at("box").at("lo"), "domain.box.lo");
        box.hi = detail::json_vector(dom.at("box").at("hi"), "domain.box.hi");
        if (box.lo.empty() || box.lo.size() != box.hi.size()) {
            throw ProblemFileError("domain.box lo/hi must be non-empty and of equal length");
        }
        for (std::size_t i = 0; i < box.lo.size(); ++i) {
            if (box.lo[i] > box.hi[i]) throw ProblemFileError("domain.box has lo > hi");
        }
        problem.space.domain = Domain(std::move(box));
    } else if (dom.contains("finite")) {
        FiniteSet finite;
        const Json& fin = dom.at("finite");
        for (const auto& row : fin.at("embedding")) {
            finite.embedding.push_back(detail::json_vector(row, "domain.finite.embedding row"));
        }
        if (finite.embedding.empty()) throw ProblemFileError("finite domain has no elements");
        const std::size_t dim = finite.embedding.front().size();
        for (const auto& row : finite.embedding) {
            if (row.size() != dim || dim == 0) {
                throw ProblemFileError("finite embedding rows must share a positive dimension");
            }
        }
        if (fin.contains("size") &&
            fin.at("size").get<std::size_t>() != finite.embedding.size()) {
            throw ProblemFileError("domain.finite.size disagrees with the embedding");
        }
        problem.space.domain = Domain(std::move(finite));
    } else {
        throw ProblemFileError("domain must contain 'box' or 'finite'");
    }

    const int dim = static_cast<int>(problem.space.domain.dimension());
    auto parse_bivariate = [&](const char* key, dsl::Context ctx) {
        const Json& j = doc.at(key);
        if (!j.is_string()) throw ProblemFileError(std::string(key) + " must be a DSL string");
        const std::string src = j.get<std::string>();
        return Bivariate(dsl::parse(src, ctx, dim), src);
    };
    problem.space.D = parse_bivariate("D", dsl::Context::D);
    problem.space.P = parse_bivariate("P", dsl::Context::P);

    const std::string mode = doc.at("mode").get<std::string>();
    if (mode == "quotient") {
        problem.space.mode = Mode::Quotient;
    } else if (mode == "subtractive") {
        problem.space.mode = Mode::Subtractive;
    } else {
        throw ProblemFileError("mode must be 'quotient' or 'subtractive'");
    }

    if (doc.contains("eq_tol")) {
        problem.space.eq_tol = doc.at("eq_tol").get<double>();
        if (problem.space.eq_tol < 0.0) throw ProblemFileError("eq_tol must be non-negative");
    }

    const Json& t = doc.at("T");
    std::vector<std::string> sources;
    if (t.is_string()) {
        sources.push_back(t.get<std::string>());
    } else if (t.is_array()) {
        for (const auto& s : t) sources.push_back(s.get<std::string>());
    } else {
        throw ProblemFileError("T must be a DSL string or a list of per-coordinate strings");
    }
    problem.map = SelfMap::parse(sources, static_cast<std::size_t>(dim));

    if (problem.space.mode == Mode::Quotient) {
        if (doc.contains("c")) {
            problem.space.c = doc.at("c").get<double>();
            if (problem.space.c <= 0.0) throw ProblemFileError("floor c must be positive");
        } else {
            problem.space.c =
                estimate_floor(problem.space, detail::kFloorEstimateBudget, seed);
            problem.space.c_estimated = true;
            if (problem.space.c <= 0.0) {
                throw ProblemFileError("sampled P admits no positive floor estimate");
            }
        }
    }
    return problem;
}

inline Problem load_problem_file(const std::string& path, std::uint64_t seed = 42) {
    std::ifstream in(path);
    if (!in) throw ProblemFileError("cannot open problem file: " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ProblemFileError("problem file is not valid JSON: " + std::string(e.what()));
    }
    try {
        return load_problem(doc, seed);
    } catch (const nlohmann::json::exception& e) {
        throw ProblemFileError("problem file is malformed: " + std::string(e.what()));
    }
}

}  // namespace perturbed
