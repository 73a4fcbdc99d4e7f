#pragma once

// The operator T: X -> X, given as one expression per coordinate (or a
// single vector-valued expression) in the variable x.

#include <string>
#include <vector>

#include "perturbed/dsl.hpp"
#include "perturbed/errors.hpp"
#include "perturbed/space.hpp"

namespace perturbed {

class SelfMap {
public:
    SelfMap() = default;

    // `sources` holds either one expression producing the full image or
    // one scalar expression per coordinate.
    static SelfMap parse(const std::vector<std::string>& sources, std::size_t dimension) {
        if (sources.empty()) throw ProblemFileError("self map needs at least one expression");
        if (sources.size() != 1 && sources.size() != dimension) {
            throw ProblemFileError("self map must have 1 or dimension expressions, got " +
                                   std::to_string(sources.size()));
        }
        SelfMap map;
        map.sources_ = sources;
        for (const auto& src : sources) {
            map.exprs_.push_back(dsl::parse(src, dsl::Context::T, static_cast<int>(dimension)));
        }
        return map;
    }

    // Applies T. Box domains: images escaping the box by more than
    // kTauNum raise LeftDomain, within-slack drift is clamped. Finite
    // domains: the image must match an embedding row within eq_tol.
    SpaceElement apply(const PerturbedSpace& space, const SpaceElement& x) const {
        const std::size_t dim = space.domain.dimension();
        std::vector<double> image;
        if (exprs_.size() == 1) {
            dsl::Value v = dsl::eval(exprs_[0], x.coords);
            if (v.size() != dim) {
                throw DomainError("self map image has size " + std::to_string(v.size()) +
                                  ", expected " + std::to_string(dim));
            }
            image = std::move(v);
        } else {
            image.resize(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                const dsl::Value v = dsl::eval(exprs_[i], x.coords);
                if (v.size() != 1) {
                    throw DomainError("per-coordinate self map expression must be scalar");
                }
                image[i] = v[0];
            }
        }
        for (double v : image) {
            if (!std::isfinite(v)) throw NonFinite("self map image is not finite");
        }
        if (space.domain.is_box()) {
            if (!space.domain.contains(image)) {
                throw LeftDomain("self map image left the domain box");
            }
            return space.domain.clamped(std::move(image));
        }
        const double tol = std::max(space.eq_tol, kTauNum);
        const auto& rows = space.domain.finite().embedding;
        for (std::size_t idx = 0; idx < rows.size(); ++idx) {
            bool match = true;
            for (std::size_t i = 0; i < dim; ++i) {
                if (std::abs(rows[idx][i] - image[i]) > tol) {
                    match = false;
                    break;
                }
            }
            if (match) return SpaceElement{rows[idx], idx};
        }
        throw LeftDomain("self map image matches no element of the finite domain");
    }

    const std::vector<std::string>& sources() const { return sources_; }

private:
    std::vector<dsl::ExprPtr> exprs_;
    std::vector<std::string> sources_;
};

}  // namespace perturbed
