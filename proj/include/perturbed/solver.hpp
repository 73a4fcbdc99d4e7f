#pragma once

// Picard iteration x_{n+1} = T x_n under a contraction certificate, with
// per-step a-priori and a-posteriori error bounds in exact-metric units.
// For a Kannan certificate with coefficient alpha the step gaps obey
// D_{n+1} <= beta * D_n with beta = alpha/(1-alpha); dividing by the
// floor c and summing the geometric tail gives
//   d(x_n, x*) <= beta^n * D0 / ((1-beta) * c)        (a priori)
//   d(x_{n+1}, x*) <= beta * D_n / ((1-beta) * c)     (a posteriori)
// Banach certificates use the same telescoping with beta replaced by
// alpha.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "perturbed/contraction.hpp"
#include "perturbed/errors.hpp"
#include "perturbed/selfmap.hpp"
#include "perturbed/space.hpp"

namespace perturbed {

inline double beta(double alpha) {
    if (alpha < 0.0 || alpha >= 0.5) {
        throw AlphaOutOfRange("beta(alpha) requires 0 <= alpha < 1/2, got " +
                              std::to_string(alpha));
    }
    return alpha / (1.0 - alpha);
}

inline double apriori_bound(std::uint64_t n, double beta_rate, double d0, double c) {
    if (beta_rate < 0.0 || beta_rate >= 1.0) {
        throw BetaOutOfRange("bound requires 0 <= beta < 1, got " + std::to_string(beta_rate));
    }
    if (c <= 0.0) throw NonPositiveFloor("bound requires a positive floor c");
    if (d0 < 0.0) throw DomainError("D0 must be non-negative");
    return std::pow(beta_rate, static_cast<double>(n)) * d0 / ((1.0 - beta_rate) * c);
}

inline double aposteriori_bound(double d_n, double beta_rate, double c) {
    if (beta_rate < 0.0 || beta_rate >= 1.0) {
        throw BetaOutOfRange("bound requires 0 <= beta < 1, got " + std::to_string(beta_rate));
    }
    if (c <= 0.0) throw NonPositiveFloor("bound requires a positive floor c");
    if (d_n < 0.0) throw DomainError("D_n must be non-negative");
    return beta_rate * d_n / ((1.0 - beta_rate) * c);
}

enum class StopReason { Converged, MaxIter, LeftDomain, BoundBlowup };

inline const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::Converged: return "converged";
        case StopReason::MaxIter: return "max_iter";
        case StopReason::LeftDomain: return "left_domain";
        case StopReason::BoundBlowup: return "bound_blowup";
    }
    return "?";
}

struct TraceStep {
    std::uint64_t n = 0;
    SpaceElement x;        // x_n
    double raw_gap = 0.0;  // D_n = D(x_n, x_{n+1})
    double exact_gap = 0.0;  // d_n = d(x_n, x_{n+1})
    double apriori = 0.0;
    double aposteriori = 0.0;
};

struct IterationTrace {
    SpaceElement x0;
    std::vector<TraceStep> steps;
    StopReason stop_reason = StopReason::MaxIter;
    std::optional<SpaceElement> fixed_point;
    double residual = std::numeric_limits<double>::quiet_NaN();  // d(x*, Tx*)
};

inline IterationTrace solve(const PerturbedSpace& space, const SelfMap& map,
                            const ContractionCertificate& cert, const SpaceElement& x0,
                            double tol, std::uint64_t max_iter) {
    if (!cert.valid) throw InvalidCertificate("certificate is not valid");
    if (space.mode != Mode::Quotient) {
        throw InvalidCertificate("error bounds require a quotient-mode space");
    }
    if (space.c_estimated) {
        throw InvalidCertificate("floor c is sample-estimated, not trusted for bound emission");
    }
    if (space.c <= 0.0) throw NonPositiveFloor("quotient floor c must be positive");
    if (tol <= 0.0) throw DomainError("tolerance must be positive");
    if (max_iter < 1) throw DomainError("max_iter must be at least 1");
    if (space.domain.is_box() && !space.domain.contains(x0.coords)) {
        throw LeftDomain("starting point is outside the domain box");
    }

    const double rate = cert.rate();
    if (!(rate >= 0.0) || rate >= 1.0) {
        throw InvalidCertificate("certificate implies no contraction rate below 1");
    }

    IterationTrace trace;
    trace.x0 = x0;

    SpaceElement x = space.domain.is_box() ? space.domain.clamped(x0.coords) : x0;
    double d0 = -1.0;
    double prev_gap = -1.0;
    int blowup_streak = 0;

    for (std::uint64_t n = 0; n < max_iter; ++n) {
        SpaceElement next;
        try {
            next = map.apply(space, x);
        } catch (const LeftDomain&) {
            trace.stop_reason = StopReason::LeftDomain;
            return trace;
        }
        const double raw_gap = space.D(x, next);
        const double exact_gap = exact_distance(space, x, next);
        if (d0 < 0.0) d0 = raw_gap;

        TraceStep step;
        step.n = n;
        step.x = x;
        step.raw_gap = raw_gap;
        step.exact_gap = exact_gap;
        step.apriori = apriori_bound(n, rate, d0, space.c);
        step.aposteriori = aposteriori_bound(raw_gap, rate, space.c);
        trace.steps.push_back(step);

        // Three consecutive steps beating the certified rate is evidence
        // that alpha is wrong; surface it instead of iterating on.
        if (prev_gap >= 0.0 && raw_gap > rate * prev_gap + 10.0 * kTauNum) {
            if (++blowup_streak >= 3) {
                trace.stop_reason = StopReason::BoundBlowup;
                return trace;
            }
        } else {
            blowup_streak = 0;
        }
        prev_gap = raw_gap;

        if (n == 0 && raw_gap <= kTauNum) {  // already fixed
            trace.stop_reason = StopReason::Converged;
            trace.fixed_point = x;
            trace.residual = exact_gap;
            return trace;
        }
        if (step.aposteriori <= tol) {
            trace.stop_reason = StopReason::Converged;
            trace.fixed_point = next;
            trace.residual = exact_distance(space, next, map.apply(space, next));
            return trace;
        }
        x = std::move(next);
    }
    trace.stop_reason = StopReason::MaxIter;
    return trace;
}

struct UniquenessResult {
    std::vector<SpaceElement> representatives;
    bool violation = false;  // valid certificate but > 1 representative
};

// Merges fixed-point candidates whose pairwise exact distance is within
// eq_tol. Under a valid certificate the merged list must be a singleton;
// anything else is evidence against the certificate.
inline UniquenessResult verify_uniqueness(const PerturbedSpace& space,
                                          const ContractionCertificate& cert,
                                          std::vector<SpaceElement> candidates) {
    std::sort(candidates.begin(), candidates.end());
    UniquenessResult result;
    for (const auto& candidate : candidates) {
        bool merged = false;
        for (const auto& rep : result.representatives) {
            if (exact_distance(space, candidate, rep) <= space.eq_tol) {
                merged = true;
                break;
            }
        }
        if (!merged) result.representatives.push_back(candidate);
    }
    result.violation = cert.valid && result.representatives.size() > 1;
    return result;
}

}  // namespace perturbed
