#pragma once

// Exhaustive grid oracles. These are the ground truth the sampled
// estimators and the solver are tested against: fixed-point location by
// residual scan and the true supremum of a contraction ratio over a pair
// grid.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "perturbed/contraction.hpp"
#include "perturbed/selfmap.hpp"
#include "perturbed/space.hpp"

namespace perturbed {

namespace detail {

inline constexpr std::uint64_t kMaxGridCells = 10'000'000;
inline constexpr std::uint64_t kMaxGridPairs = 100'000'000;

inline std::vector<SpaceElement> grid_points(const Domain& domain, double grid_step,
                                             std::uint64_t cell_limit) {
    if (domain.is_finite()) return all_elements(domain);
    if (grid_step <= 0.0) throw DomainError("grid step must be positive");
    const Box& b = domain.box();
    std::vector<std::uint64_t> counts(b.lo.size());
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < b.lo.size(); ++i) {
        counts[i] = static_cast<std::uint64_t>(std::floor((b.hi[i] - b.lo[i]) / grid_step)) + 1;
        if (total > cell_limit / counts[i]) {
            throw GridTooLarge("grid exceeds the cell limit");
        }
        total *= counts[i];
    }
    if (total > cell_limit) throw GridTooLarge("grid exceeds the cell limit");

    std::vector<SpaceElement> points;
    points.reserve(total);
    std::vector<std::uint64_t> idx(b.lo.size(), 0);
    for (std::uint64_t k = 0; k < total; ++k) {
        std::vector<double> coords(b.lo.size());
        for (std::size_t i = 0; i < coords.size(); ++i) {
            coords[i] = std::min(b.lo[i] + static_cast<double>(idx[i]) * grid_step, b.hi[i]);
        }
        points.push_back(SpaceElement{std::move(coords), std::nullopt});
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (++idx[i] < counts[i]) break;
            idx[i] = 0;
        }
    }
    return points;
}

}  // namespace detail

// All grid points (or finite elements) minimizing the residual d(x, Tx),
// kept up to one grid step of slack above the minimum. Points whose
// image leaves the domain are excluded.
inline std::vector<SpaceElement> brute_force_fixed_points(const PerturbedSpace& space,
                                                          const SelfMap& map, double grid_step) {
    const auto points = detail::grid_points(space.domain, grid_step, detail::kMaxGridCells);
    std::vector<double> residuals(points.size(), std::numeric_limits<double>::infinity());
    double min_residual = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        try {
            residuals[i] = exact_distance(space, points[i], map.apply(space, points[i]));
        } catch (const LeftDomain&) {
            continue;
        }
        min_residual = std::min(min_residual, residuals[i]);
    }
    if (!std::isfinite(min_residual)) {
        throw LeftDomain("every grid point's image left the domain");
    }
    const double slack = space.domain.is_finite() ? space.eq_tol : grid_step;
    std::vector<SpaceElement> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (residuals[i] <= min_residual + slack) out.push_back(points[i]);
    }
    return out;
}

// Exhaustive supremum of the Banach or Kannan ratio over the pair grid.
// 0/0 skips are excluded; a pair with nonzero numerator over a zero
// denominator drives the supremum to +inf.
inline double brute_force_sup_ratio(const PerturbedSpace& space, const SelfMap& map, CertKind kind,
                                    double grid_step) {
    const auto points = detail::grid_points(space.domain, grid_step, detail::kMaxGridCells);
    const std::uint64_t pairs =
        static_cast<std::uint64_t>(points.size()) * static_cast<std::uint64_t>(points.size());
    if (points.size() != 0 && pairs / points.size() != points.size()) {
        throw GridTooLarge("pair grid overflows");
    }
    if (pairs > detail::kMaxGridPairs) throw GridTooLarge("pair grid exceeds the budget");

    // Images are reused across the inner loop.
    std::vector<SpaceElement> images(points.size());
    std::vector<double> self_gaps(points.size());  // D(x, Tx)
    for (std::size_t i = 0; i < points.size(); ++i) {
        images[i] = map.apply(space, points[i]);
        self_gaps[i] = space.D(points[i], images[i]);
    }

    double sup = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < points.size(); ++j) {
            double ratio;
            if (kind == CertKind::Kannan) {
                const double numerator = space.D(images[i], images[j]);
                const double denominator = self_gaps[i] + self_gaps[j];
                if (denominator <= kTauNum) {
                    if (numerator <= kTauNum) continue;
                    return std::numeric_limits<double>::infinity();
                }
                ratio = numerator / denominator;
            } else {
                const double dxy = space.D(points[i], points[j]);
                if (dxy <= kTauNum) continue;
                ratio = space.D(images[i], images[j]) / dxy;
            }
            sup = std::max(sup, ratio);
        }
    }
    if (sup < 0.0) throw NoInformativePairs("every grid pair was a 0/0 skip");
    return sup;
}

}  // namespace perturbed
