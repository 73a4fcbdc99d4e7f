#pragma once

// JSON renderings of reports. Key order is fixed (ordered_json) and
// doubles serialize shortest-round-trip, so identical inputs produce
// byte-identical documents.

#include <string>

#include "json.hpp"

#include "perturbed/axioms.hpp"
#include "perturbed/contraction.hpp"
#include "perturbed/problem_io.hpp"
#include "perturbed/solver.hpp"

namespace perturbed {

inline Json to_json(const SpaceElement& e) {
    Json j;
    j["coords"] = e.coords;
    if (e.index) j["index"] = *e.index;
    return j;
}

inline Json to_json(const AxiomViolation& v) {
    Json j;
    j["axiom"] = v.axiom;
    Json witness = Json::array();
    for (const auto& w : v.witness) witness.push_back(to_json(w));
    j["witness"] = std::move(witness);
    j["lhs"] = v.lhs;
    j["rhs"] = v.rhs;
    return j;
}

inline Json to_json(const AxiomReport& r) {
    Json j;
    j["checked"] = Json::object();
    for (const auto& [axiom, count] : r.checked) j["checked"][axiom] = count;
    Json violations = Json::array();
    for (const auto& v : r.violations) violations.push_back(to_json(v));
    j["violations"] = std::move(violations);
    j["violations_found"] = r.violations_found;
    j["seed"] = r.seed;
    j["verdict"] = r.verdict();
    return j;
}

inline Json to_json(const ContractionCertificate& c) {
    Json j;
    j["kind"] = to_string(c.kind);
    j["alpha_hat"] = c.alpha_hat;
    j["alpha_bound"] = c.alpha_bound;
    if (c.kind == CertKind::Kannan) j["beta"] = c.beta;
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["witness_pair"] = Json::array({c.witness_pair.first.coords, c.witness_pair.second.coords});
    j["valid"] = c.valid;
    j["note"] = "sampled evidence with safety margin, not a proof";
    return j;
}

inline Json to_json(const TraceStep& s) {
    Json j;
    j["n"] = s.n;
    j["x"] = s.x.coords;
    j["D_n"] = s.raw_gap;
    j["d_n"] = s.exact_gap;
    j["apriori"] = s.apriori;
    j["aposteriori"] = s.aposteriori;
    return j;
}

inline Json trace_summary(const IterationTrace& t) {
    Json j;
    j["x0"] = t.x0.coords;
    j["steps"] = t.steps.size();
    j["stop_reason"] = to_string(t.stop_reason);
    if (t.fixed_point) {
        j["fixed_point"] = t.fixed_point->coords;
        j["residual"] = t.residual;
    }
    if (!t.steps.empty()) {
        const TraceStep& last = t.steps.back();
        j["final_raw_gap"] = last.raw_gap;
        j["final_apriori"] = last.apriori;
        j["final_aposteriori"] = last.aposteriori;
    }
    return j;
}

// One JSON object per line, followed by the summary object.
inline std::string trace_jsonl(const IterationTrace& t) {
    std::string out;
    for (const auto& s : t.steps) {
        out += to_json(s).dump();
        out += '\n';
    }
    Json summary;
    summary["summary"] = trace_summary(t);
    out += summary.dump();
    out += '\n';
    return out;
}

}  // namespace perturbed
