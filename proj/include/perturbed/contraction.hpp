#pragma once

// Pointwise Banach and Kannan contraction ratios and sampled coefficient
// certificates. A certificate is evidence, not proof: the sampled
// supremum is inflated by the safety margin kSigma before the validity
// threshold is applied (alpha < 1 for Banach, alpha < 1/2 for Kannan).

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "perturbed/sampling.hpp"
#include "perturbed/selfmap.hpp"
#include "perturbed/space.hpp"
#include "perturbed/tolerances.hpp"

namespace perturbed {

enum class CertKind { Banach, Kannan };

inline const char* to_string(CertKind kind) {
    return kind == CertKind::Banach ? "banach" : "kannan";
}

struct ContractionCertificate {
    CertKind kind = CertKind::Kannan;
    double alpha_hat = 0.0;    // sampled supremum of the ratio
    double alpha_bound = 0.0;  // alpha_hat * (1 + kSigma)
    double beta = 0.0;         // alpha_bound/(1-alpha_bound), Kannan only
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::pair<SpaceElement, SpaceElement> witness_pair;
    bool valid = false;

    // Contraction rate of the step-gap recursion D_{n+1} <= rate * D_n.
    double rate() const { return kind == CertKind::Kannan ? beta : alpha_bound; }
};

// D(Tx,Ty) / (D(x,Tx) + D(y,Ty)). nullopt = 0/0 (vacuous at a fixed
// point); +inf = nonzero numerator over a zero denominator, the Kannan
// condition is unsatisfiable at that pair.
inline std::optional<double> kannan_ratio(const PerturbedSpace& space, const SelfMap& map,
                                          const SpaceElement& x, const SpaceElement& y) {
    const SpaceElement tx = map.apply(space, x);
    const SpaceElement ty = map.apply(space, y);
    const double numerator = space.D(tx, ty);
    const double denominator = space.D(x, tx) + space.D(y, ty);
    if (denominator <= kTauNum) {
        if (numerator <= kTauNum) return std::nullopt;
        return std::numeric_limits<double>::infinity();
    }
    return numerator / denominator;
}

// D(Tx,Ty) / D(x,y); nullopt on the diagonal.
inline std::optional<double> banach_ratio(const PerturbedSpace& space, const SelfMap& map,
                                          const SpaceElement& x, const SpaceElement& y) {
    const double dxy = space.D(x, y);
    if (dxy <= kTauNum) return std::nullopt;
    const SpaceElement tx = map.apply(space, x);
    const SpaceElement ty = map.apply(space, y);
    return space.D(tx, ty) / dxy;
}

namespace detail {

// Deterministic pair stream for coefficient estimation: the stratified
// pair stream interleaved with reflection pairs (y mirrored through the
// box center), where Kannan suprema often sit.
inline std::pair<SpaceElement, SpaceElement> certificate_pair(const Domain& domain,
                                                              std::uint64_t seed,
                                                              std::uint64_t i) {
    if (domain.is_box() && i % 2 == 1) {
        SpaceElement x = sample_element(domain, seed, i, 0);
        SpaceElement y = reflect_through_center(domain.box(), x);
        return {std::move(x), std::move(y)};
    }
    return {sample_element(domain, seed, i, 0), sample_element(domain, seed, i, 1)};
}

}  // namespace detail

inline ContractionCertificate estimate_coefficient(const PerturbedSpace& space, const SelfMap& map,
                                                   CertKind kind, std::uint64_t budget,
                                                   std::uint64_t seed) {
    if (budget < 1) throw DomainError("budget must be at least 1");
    if (space.domain.empty()) throw EmptyDomain("domain admits no elements");

    ContractionCertificate cert;
    cert.kind = kind;
    cert.seed = seed;
    cert.alpha_hat = -1.0;

    auto consider = [&](const SpaceElement& x, const SpaceElement& y) {
        ++cert.samples;
        const std::optional<double> ratio = kind == CertKind::Kannan
                                                ? kannan_ratio(space, map, x, y)
                                                : banach_ratio(space, map, x, y);
        if (!ratio) return;
        if (*ratio > cert.alpha_hat ||
            (*ratio == cert.alpha_hat && std::make_pair(x, y) < cert.witness_pair)) {
            cert.alpha_hat = *ratio;
            cert.witness_pair = {x, y};
        }
    };

    if (space.domain.is_finite() &&
        space.domain.cardinality() * space.domain.cardinality() <= budget) {
        const auto elems = all_elements(space.domain);
        for (const auto& x : elems)
            for (const auto& y : elems) consider(x, y);
    } else {
        for (std::uint64_t i = 0; i < budget; ++i) {
            const auto [x, y] = detail::certificate_pair(space.domain, seed, i);
            consider(x, y);
        }
    }

    if (cert.alpha_hat < 0.0) {
        throw NoInformativePairs("every sampled pair was a 0/0 skip");
    }
    cert.alpha_bound = cert.alpha_hat * (1.0 + kSigma);
    if (kind == CertKind::Kannan) {
        cert.valid = cert.alpha_bound < 0.5;
        cert.beta = cert.alpha_bound < 1.0 ? cert.alpha_bound / (1.0 - cert.alpha_bound)
                                           : std::numeric_limits<double>::infinity();
    } else {
        cert.valid = cert.alpha_bound < 1.0;
        cert.beta = 0.0;
    }
    return cert;
}

}  // namespace perturbed
