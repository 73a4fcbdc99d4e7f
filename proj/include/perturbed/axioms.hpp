#pragma once

// Sampled audits of the metric axioms and the floor condition on P.
// Finite domains are checked exhaustively whenever the tuple count fits
// the budget; box domains use the stratified sampler. Reports are
// deterministic given (seed, budget).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "perturbed/sampling.hpp"
#include "perturbed/space.hpp"

namespace perturbed {

struct AxiomViolation {
    std::string axiom;  // non_negativity | identity | symmetry | triangle | floor
    std::vector<SpaceElement> witness;
    double lhs = 0.0;
    double rhs = 0.0;

    friend bool operator<(const AxiomViolation& a, const AxiomViolation& b) {
        if (a.axiom != b.axiom) return a.axiom < b.axiom;
        return a.witness < b.witness;
    }
};

struct AxiomReport {
    std::map<std::string, std::uint64_t> checked;  // samples per axiom
    std::vector<AxiomViolation> violations;        // sorted, capped
    std::uint64_t violations_found = 0;            // total, before capping
    std::uint64_t seed = 0;
    bool pass() const { return violations_found == 0; }
    std::string verdict() const { return pass() ? "pass" : "fail"; }
};

namespace detail {

inline constexpr std::size_t kMaxStoredViolations = 64;

inline void finalize_report(AxiomReport& report) {
    std::sort(report.violations.begin(), report.violations.end());
    report.violations_found = report.violations.size();
    if (report.violations.size() > kMaxStoredViolations) {
        report.violations.resize(kMaxStoredViolations);
    }
}

}  // namespace detail

// Audits P >= c on sampled pairs (quotient mode only).
inline AxiomReport check_floor(const PerturbedSpace& space, std::uint64_t budget,
                               std::uint64_t seed) {
    if (space.mode != Mode::Quotient) {
        throw NotQuotientMode("floor check applies to quotient-mode spaces only");
    }
    if (budget < 1) throw DomainError("budget must be at least 1");
    if (space.domain.empty()) throw EmptyDomain("domain admits no elements");

    AxiomReport report;
    report.seed = seed;
    auto check_pair = [&](const SpaceElement& a, const SpaceElement& b) {
        ++report.checked["floor"];
        const double pv = space.P(a, b);
        if (pv < space.c - kTauNum) {
            report.violations.push_back({"floor", {a, b}, pv, space.c});
        }
    };

    if (space.domain.is_finite() &&
        space.domain.cardinality() * space.domain.cardinality() <= budget) {
        const auto elems = all_elements(space.domain);
        for (const auto& a : elems)
            for (const auto& b : elems) check_pair(a, b);
    } else {
        for (std::uint64_t i = 0; i < budget; ++i) {
            check_pair(sample_element(space.domain, seed, i, 0),
                       sample_element(space.domain, seed, i, 1));
        }
    }
    detail::finalize_report(report);
    return report;
}

// Audits non-negativity, identity, symmetry on sampled pairs and the
// triangle inequality on sampled triples of the exact metric d.
inline AxiomReport check_metric_axioms(const PerturbedSpace& space, std::uint64_t budget,
                                       std::uint64_t seed) {
    if (budget < 1) throw DomainError("budget must be at least 1");
    if (space.domain.empty()) throw EmptyDomain("domain admits no elements");

    AxiomReport report;
    report.seed = seed;

    auto check_pair = [&](const SpaceElement& a, const SpaceElement& b) {
        const double dab = detail::exact_distance_raw(space, a, b);
        const double dba = detail::exact_distance_raw(space, b, a);
        ++report.checked["non_negativity"];
        if (dab < -kTauNum) {
            report.violations.push_back({"non_negativity", {a, b}, dab, 0.0});
        }
        ++report.checked["identity"];
        const double daa = detail::exact_distance_raw(space, a, a);
        if (std::abs(daa) > kTauNum) {
            report.violations.push_back({"identity", {a}, daa, 0.0});
        }
        ++report.checked["symmetry"];
        if (std::abs(dab - dba) > kTauNum) {
            report.violations.push_back({"symmetry", {a, b}, dab, dba});
        }
    };
    auto check_triple = [&](const SpaceElement& a, const SpaceElement& b, const SpaceElement& c) {
        ++report.checked["triangle"];
        const double lhs = detail::exact_distance_raw(space, a, c);
        const double rhs =
            detail::exact_distance_raw(space, a, b) + detail::exact_distance_raw(space, b, c);
        if (lhs > rhs + kTauTri) {
            report.violations.push_back({"triangle", {a, b, c}, lhs, rhs});
        }
    };

    const bool finite = space.domain.is_finite();
    const std::uint64_t m = finite ? space.domain.cardinality() : 0;

    if (finite && m * m <= budget) {
        const auto elems = all_elements(space.domain);
        for (const auto& a : elems)
            for (const auto& b : elems) check_pair(a, b);
    } else {
        for (std::uint64_t i = 0; i < budget; ++i) {
            check_pair(sample_element(space.domain, seed, i, 0),
                       sample_element(space.domain, seed, i, 1));
        }
    }

    if (finite && m * m * m <= budget) {
        const auto elems = all_elements(space.domain);
        for (const auto& a : elems)
            for (const auto& b : elems)
                for (const auto& c : elems) check_triple(a, b, c);
    } else {
        for (std::uint64_t i = 0; i < budget; ++i) {
            check_triple(sample_element(space.domain, seed, i, 0),
                         sample_element(space.domain, seed, i, 1),
                         sample_element(space.domain, seed, i, 2));
        }
    }

    detail::finalize_report(report);
    return report;
}

// Floor discovery for problem files that omit c: a slightly deflated
// sampled minimum of P. The resulting floor is marked estimated and is
// not accepted for bound-emitting certificates.
inline double estimate_floor(const PerturbedSpace& space, std::uint64_t budget,
                             std::uint64_t seed) {
    if (space.domain.empty()) throw EmptyDomain("domain admits no elements");
    double min_p = std::numeric_limits<double>::infinity();
    if (space.domain.is_finite() &&
        space.domain.cardinality() * space.domain.cardinality() <= budget) {
        const auto elems = all_elements(space.domain);
        for (const auto& a : elems)
            for (const auto& b : elems) min_p = std::min(min_p, space.P(a, b));
    } else {
        for (std::uint64_t i = 0; i < budget; ++i) {
            min_p = std::min(min_p, space.P(sample_element(space.domain, seed, i, 0),
                                            sample_element(space.domain, seed, i, 1)));
        }
    }
    return min_p * (1.0 - 1e-6);
}

}  // namespace perturbed
